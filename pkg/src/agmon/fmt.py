"""Text emission with 17 significant digits."""

import json
import math

import numpy as np


def format_number(x):
    """``%.17g`` for floats, ``inf``/``-inf``/``nan`` spelled out."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def _emit(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        s = format_number(obj)
        # JSON has no literal for non-finite numbers
        return json.dumps(s) if s in ("inf", "-inf", "nan") else s
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot emit {type(obj).__name__}")


def dumps(obj, indent=2):
    """JSON text with floats at 17 significant digits; ``inf`` as a string."""
    return _emit(obj, indent, 0) + "\n"


def distance_csv(matrix):
    """CSV with header ``u\\v,0,1,...`` and one row per source vertex."""
    m = np.asarray(matrix)
    n = m.shape[0]
    lines = ["u\\v," + ",".join(str(j) for j in range(n))]
    for i in range(n):
        lines.append(str(i) + "," + ",".join(format_number(x) for x in m[i]))
    return "\n".join(lines) + "\n"
