"""Run every config in scripts/configs and write CSV tables to results/.

Usage: python3 scripts/run_all.py [--out results] [--format csv|json|gnuplot]
"""
import argparse
import sys
from pathlib import Path

from szego_lab.cli import FORMATS, main

HERE = Path(__file__).resolve().parent


def run_all(out: Path, fmt: str) -> int:
    out.mkdir(parents=True, exist_ok=True)
    failures = 0
    for cfg in sorted((HERE / "configs").glob("*.json")):
        target = out / f"{cfg.stem}.{'dat' if fmt == 'gnuplot' else fmt}"
        code = main(["run", "--config", str(cfg), "--out", str(target), "--format", fmt])
        print(f"{cfg.name:32s} -> {target} (exit {code})")
        failures += code != 0
    return 1 if failures else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--format", choices=FORMATS, default="csv")
    args = ap.parse_args()
    sys.exit(run_all(args.out, args.format))
