"""
Command-line round trip
=======================

Generate a problem file, inspect its spectrum and distances, and verify it,
all through the ``agmon`` entry point. Exit code 1 from ``verify`` means at
least one violation or max-principle failure was found.
"""

import subprocess
import sys
import tempfile
from pathlib import Path


def agmon(*args):
    r = subprocess.run([sys.executable, "-m", "agmon", *args], capture_output=True, text=True)
    print(f"$ agmon {' '.join(args)}  -> exit {r.returncode}")
    print(r.stdout[:400] + ("..." if len(r.stdout) > 400 else ""), r.stderr, sep="")
    return r.returncode


with tempfile.TemporaryDirectory() as tmp:
    prob = str(Path(tmp) / "p.json")
    agmon("gen", "--family", "cycle", "--n", "6", "--w-uniform", "0", "5", "--w-seed", "1", "--out", prob)
    agmon("spectrum", "--input", prob)
    agmon("dist", "--input", prob, "--energy", "2", "--pair", "0", "3", "--witness")
    agmon("verify", "--input", prob, "--mode", "strict")
