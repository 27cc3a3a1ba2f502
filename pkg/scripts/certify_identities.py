#!/usr/bin/env python3
"""Run the full identity-certification suite and summarize the worst
residual per identity.  Exits non-zero if any check fails."""

import io
import json
import pathlib
import sys
from contextlib import redirect_stdout

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from lerchphi.cli import main  # noqa: E402


def run(grid: int = 25, seed: int = 0) -> int:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["check", "--suite", "all", "--grid", str(grid),
                     "--seed", str(seed)])
    worst: dict[str, float] = {}
    for line in buf.getvalue().splitlines():
        rec = json.loads(line)
        worst[rec["identity"]] = max(
            worst.get(rec["identity"], 0.0), rec["residual"]
        )
    for name in sorted(worst):
        print(f"{name:25s} worst residual {worst[name]:.3e}")
    print("all checks passed" if code == 0 else "FAILURES above")
    return code


if __name__ == "__main__":
    sys.exit(run())
