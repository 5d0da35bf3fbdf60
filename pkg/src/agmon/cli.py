"""Command-line interface: ``agmon gen|spectrum|dist|verify|sweep``.

Exit codes: 0 success, 1 bound or max-principle violation, 2 usage error,
3 input or validation error, 4 eigensolver convergence failure.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import fmt
from .corpus import label
from .graph import (
    GenerationFailed,
    InvalidSpec,
    Problem,
    ProblemFileError,
    constant_potential,
    gen_family,
    parse_problem,
    serialize_problem,
    uniform_potential,
)
from .metric import MODES, agmon_field, rho, rho_matrix
from .rng import derive_seed
from .spectral import ConvergenceFailure, solve, spectrum_document
from .verify import quantile_summary, report_document, verify_problem

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INPUT, EXIT_CONVERGENCE = 0, 1, 2, 3, 4

FAMILIES = ("path", "cycle", "complete", "grid", "er")


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _write(text, args):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note(args, msg):
    if not args.quiet:
        print(msg, file=sys.stderr)


def _load_problem(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc}") from None
    try:
        return parse_problem(data)
    except ProblemFileError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {type(exc).__name__}: {exc}") from None


def _family_spec(args):
    fam = args.family
    if fam == "grid":
        if args.rows is None or args.cols is None:
            raise CliError(EXIT_USAGE, "grid needs --rows and --cols")
        return {"family": "grid", "rows": args.rows, "cols": args.cols}
    if args.n is None:
        raise CliError(EXIT_USAGE, f"{fam} needs --n")
    if fam == "er":
        if args.p is None:
            raise CliError(EXIT_USAGE, "er needs --p")
        return {
            "family": "erdos_renyi",
            "n": args.n,
            "p": args.p,
            "seed": args.seed,
            "max_retries": args.max_retries,
        }
    return {"family": fam, "n": args.n}


def cmd_gen(args):
    spec = _family_spec(args)
    try:
        g = gen_family(spec)
    except InvalidSpec as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    except GenerationFailed as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    if args.w_uniform is not None:
        lo, hi = args.w_uniform
        if lo > hi:
            raise CliError(EXIT_USAGE, "--w-uniform needs lo <= hi")
        pot = uniform_potential(g.n, lo, hi, args.w_seed)
    else:
        pot = constant_potential(g.n, args.w_const)
    _write(serialize_problem(Problem(g, pot, args.name)), args)
    return EXIT_OK


def cmd_spectrum(args):
    p = _load_problem(args.input)
    pairs = solve(p, tol=args.tol)
    _write(fmt.dumps(spectrum_document(pairs)), args)
    return EXIT_OK


def cmd_dist(args):
    p = _load_problem(args.input)
    f = agmon_field(p, args.energy)
    if args.pair is None:
        _write(fmt.distance_csv(rho_matrix(f, args.mode)), args)
        return EXIT_OK
    u, v = args.pair
    if not (0 <= u < p.n and 0 <= v < p.n):
        raise CliError(EXIT_USAGE, f"--pair vertices must lie in 0..{p.n - 1}")
    d = rho(f, u, v, args.mode)
    lines = [fmt.format_number(d.value)]
    if args.witness:
        lines.append(json.dumps(list(d.witness)))
    _write("\n".join(lines) + "\n", args)
    return EXIT_OK


def cmd_verify(args):
    p = _load_problem(args.input)
    report = verify_problem(p, tol=args.tol, mode=args.mode)
    text = fmt.dumps(report_document(report))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        _write(text, args)
    n_mp = sum(not s.max_principle_holds for s in report.eigenpairs)
    _note(args, f"{p.name or args.input}: {len(report.violations)} violations, "
                f"{n_mp} max-principle failures ({args.mode})")
    return EXIT_OK if report.ok else EXIT_VIOLATION


# -- sweep -----------------------------------------------------------------

_SWEEP_KEYS = {"families", "potential", "seed", "trials", "mode", "tol", "max_principle_tol"}


def _sweep_config(path):
    try:
        with open(path, "rb") as fh:
            cfg = json.loads(fh.read().decode("utf-8"))
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc}") from None
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_INPUT, f"{path}: invalid config: {exc}") from None

    def bad(msg):
        return CliError(EXIT_USAGE, f"{path}: {msg}")

    if not isinstance(cfg, dict):
        raise bad("config must be an object")
    unknown = sorted(set(cfg) - _SWEEP_KEYS)
    if unknown:
        raise bad(f"unknown keys {unknown}")
    fams = cfg.get("families")
    if not isinstance(fams, list) or not fams or not all(isinstance(f, dict) for f in fams):
        raise bad("'families' must be a non-empty list of descriptors")
    trials = cfg.get("trials", 1)
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise bad("'trials' must be an integer >= 1")
    seed = cfg.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise bad("'seed' must be an integer")
    mode = cfg.get("mode", "literal")
    if mode not in MODES:
        raise bad(f"'mode' must be one of {MODES}")
    pot = cfg.get("potential", {"model": "constant", "c": 0.0})
    model = pot.get("model") if isinstance(pot, dict) else None
    if model == "constant":
        pot = {"model": "constant", "c": float(pot.get("c", 0.0))}
    elif model == "uniform":
        lo, hi = float(pot.get("lo", 0.0)), float(pot.get("hi", 1.0))
        if lo > hi:
            raise bad("uniform potential needs lo <= hi")
        pot = {"model": "uniform", "lo": lo, "hi": hi}
    elif model == "file":
        fpath = pot.get("path")
        if not isinstance(fpath, str):
            raise bad("file potential needs 'path'")
        fpath = os.path.join(os.path.dirname(os.path.abspath(path)), fpath)
        try:
            with open(fpath, encoding="utf-8") as fh:
                values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(EXIT_INPUT, f"potential file {fpath}: {exc}") from None
        pot = {"model": "file", "values": [float(x) for x in values]}
    else:
        raise bad("'potential.model' must be constant, uniform or file")
    specs = []
    for f in fams:
        f = dict(f)
        if f.get("family") == "er":
            f["family"] = "erdos_renyi"
        specs.append(f)
    return {
        "families": specs,
        "potential": pot,
        "seed": seed,
        "trials": trials,
        "mode": mode,
        "tol": float(cfg.get("tol", 1e-10)),
        "max_principle_tol": float(cfg.get("max_principle_tol", 1e-9)),
    }


def _family_label(spec):
    return label({k: v for k, v in spec.items() if k != "seed"})


def _run_trial(job):
    """Worker: one (family, trial) verification. Returns a plain dict."""
    cfg, fi, trial = job
    spec = dict(cfg["families"][fi])
    if spec.get("family") == "erdos_renyi":
        spec.setdefault("max_retries", 1000)
        spec["seed"] = derive_seed(cfg["seed"], fi, trial)
    out = {"index": fi, "family": _family_label(cfg["families"][fi]), "trial": trial}
    try:
        g = gen_family(spec)
    except (InvalidSpec, GenerationFailed) as exc:
        out["error"] = f"{type(exc).__name__}: {exc}"
        return out
    pot = cfg["potential"]
    if pot["model"] == "constant":
        w = constant_potential(g.n, pot["c"])
    elif pot["model"] == "uniform":
        w = uniform_potential(g.n, pot["lo"], pot["hi"], derive_seed(cfg["seed"], fi, trial, 1))
    else:
        w = pot["values"]
    try:
        p = Problem(g, w, f"{out['family']}/{trial}")
    except ValueError as exc:
        out["error"] = f"{type(exc).__name__}: {exc}"
        return out
    try:
        rep = verify_problem(p, tol=cfg["tol"], mode=cfg["mode"],
                             max_principle_tol=cfg["max_principle_tol"])
    except ConvergenceFailure as exc:
        out["convergence_failure"] = str(exc)
        return out
    out["violations"] = len(rep.violations)
    out["max_principle_failures"] = sum(not s.max_principle_holds for s in rep.eigenpairs)
    out["ratios"] = rep.decaying_ratios
    return out


def cmd_sweep(args):
    cfg = _sweep_config(args.config)
    if args.jobs < 1:
        raise CliError(EXIT_USAGE, "--jobs must be >= 1")
    jobs = [(cfg, fi, t) for fi in range(len(cfg["families"])) for t in range(cfg["trials"])]
    if args.jobs == 1:
        results = [_run_trial(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_run_trial, jobs, chunksize=4))
    results.sort(key=lambda r: (r["index"], r["trial"]))

    fam_docs, pooled = [], []
    total_viol = total_mp = 0
    setup_errors = False
    for fi, spec in enumerate(cfg["families"]):
        rs = [r for r in results if r["index"] == fi]
        ratios = [r["ratios"] for r in rs if "ratios" in r]
        viol = sum(r.get("violations", 0) for r in rs)
        mp = sum(r.get("max_principle_failures", 0) for r in rs)
        errors = [r["error"] for r in rs if "error" in r]
        setup_errors |= bool(errors)
        total_viol += viol
        total_mp += mp
        pooled.extend(ratios)
        fam_docs.append({
            "family": _family_label(spec),
            "trials": len(rs),
            "violations": viol,
            "max_principle_failures": mp,
            "convergence_failures": sum("convergence_failure" in r for r in rs),
            "errors": errors,
            "tightness": quantile_summary(np.concatenate(ratios) if ratios else []),
        })
    doc = {
        "mode": cfg["mode"],
        "seed": cfg["seed"],
        "trials_per_family": cfg["trials"],
        "total_violations": total_viol,
        "total_max_principle_failures": total_mp,
        "families": fam_docs,
        "tightness": quantile_summary(np.concatenate(pooled) if pooled else []),
    }
    _write(fmt.dumps(doc), args)
    _note(args, f"sweep: {len(results)} trials, {total_viol} violations, "
                f"{total_mp} max-principle failures ({cfg['mode']})")
    if setup_errors:
        return EXIT_INPUT
    if total_mp or (cfg["mode"] == "literal" and total_viol):
        return EXIT_VIOLATION
    return EXIT_OK


# -- argument parsing --------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    common.add_argument("--quiet", action="store_true", help="suppress diagnostics on stderr")

    parser = argparse.ArgumentParser(prog="agmon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a problem file")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--rows", type=int)
    g.add_argument("--cols", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-retries", type=int, default=1000)
    g.add_argument("--name")
    wg = g.add_mutually_exclusive_group()
    wg.add_argument("--w-const", type=float, default=0.0, metavar="C")
    wg.add_argument("--w-uniform", type=float, nargs=2, metavar=("LO", "HI"))
    g.add_argument("--w-seed", type=int, default=0)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("spectrum", parents=[common], help="eigenpairs of L + W")
    s.add_argument("--input", required=True)
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_spectrum)

    d = sub.add_parser("dist", parents=[common], help="Agmon distance matrix or single pair")
    d.add_argument("--input", required=True)
    d.add_argument("--energy", type=float, required=True)
    d.add_argument("--mode", choices=MODES, default="literal")
    d.add_argument("--pair", type=int, nargs=2, metavar=("U", "V"))
    d.add_argument("--witness", action="store_true")
    d.set_defaults(func=cmd_dist)

    v = sub.add_parser("verify", parents=[common], help="check the decay bound for one problem")
    v.add_argument("--input", required=True)
    v.add_argument("--mode", choices=MODES, default="literal")
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--report", metavar="OUT")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("sweep", parents=[common], help="verify an ensemble from a config file")
    w.add_argument("--config", required=True)
    w.add_argument("--jobs", type=int, default=1)
    w.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"agmon {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except ConvergenceFailure as exc:
        print(f"agmon {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
