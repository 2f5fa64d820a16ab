"""Experiment driver: ``szego-lab run --config cfg.json [--out path] [--format csv|json|gnuplot]``.

Exit codes are 0 on success, 1 when the config fails validation and 2 on
I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from . import __version__
from .domains import (
    ConformalMap,
    Disk,
    EggNuTau,
    EggOmegaP,
    EggSigma,
    Hartogs,
    ProductDxDstar,
    PuncturedDisk,
    SimplyConnectedPunctured,
    samples_on_grid,
    stabilization_threshold,
)
from .eggs import MonomialIndex, beta, membership_test, monomial_norm_report
from .errors import ConfigurationError, SzegoLabError
from .kernels import partial_fraction_closed_form, partial_fraction_oracle
from .projections import (
    MultiplierSpec,
    admissible_exponents,
    interior_points,
    project,
    reproduce,
)
from .rigidity import rigidity_scan
from .series import CircleCoefficients, TorusCoefficients, analyze, evaluate, synthesize

EXPERIMENTS = ("reproduce", "project-compare", "egg-norms", "egg-stabilize", "rigidity-scan", "oracle-suite")
DOMAINS = ("disk", "punctured_disk", "dxdstar", "hartogs", "quadratic")
MEASURES = ("omega", "sigma", "nu")
FORMATS = ("csv", "json", "gnuplot")


@dataclass
class ExperimentConfig:
    """Resolved experiment parameters; unknown keys are rejected.

    List-valued fields (``tau``, ``q``) run one row block per entry.
    """

    experiment: str
    domain: str = "hartogs"
    p: int = 2
    m: int = 1
    n: int = 1
    k: int = 1
    orders: list = field(default_factory=list)
    punctures: list = field(default_factory=list)
    tau: list = field(default_factory=lambda: [0.0])
    q: list = field(default_factory=lambda: [0.0, 0.1, 0.2, 0.3])
    measure: str = "omega"
    weight: str = "one"
    eps: float = 0.3
    N: int = 128
    M: int = 128
    j_max: int = 6
    k_max: int = 5
    m_max: int = 6
    n_max: int = 6
    samples: int = 100
    points: int = 5
    monomials: int = 10
    bandwidth: int = 16
    literal_max: bool = False
    tol: float = 1e-10
    seed: int = 0
    output_path: Optional[str] = None

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigurationError("config must be a JSON object")
        names = {f.name for f in dataclasses.fields(cls)}
        for key in raw:
            if key not in names:
                raise ConfigurationError(f"unknown config field {key!r}", key)
        if "experiment" not in raw:
            raise ConfigurationError("missing field 'experiment'", "experiment")
        data = dict(raw)
        for key in ("tau", "q"):
            if key in data and not isinstance(data[key], list):
                data[key] = [data[key]]
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def validate(self) -> None:
        def need(ok, name, msg):
            if not ok:
                raise ConfigurationError(f"{name}: {msg}", name)

        def is_int(v):
            return isinstance(v, int) and not isinstance(v, bool)

        need(self.experiment in EXPERIMENTS, "experiment", f"must be one of {', '.join(EXPERIMENTS)}")
        need(self.domain in DOMAINS, "domain", f"must be one of {', '.join(DOMAINS)}")
        need(self.measure in MEASURES, "measure", f"must be one of {', '.join(MEASURES)}")
        need(self.weight in ("one", "gradient"), "weight", "must be 'one' or 'gradient'")
        for name in ("p", "m", "n", "N", "M", "m_max", "n_max", "samples", "points", "monomials", "bandwidth"):
            v = getattr(self, name)
            need(is_int(v) and v >= 1, name, "must be a positive integer")
        for name in ("k", "j_max", "k_max", "seed"):
            v = getattr(self, name)
            need(is_int(v) and v >= 0, name, "must be a non-negative integer")
        need(math.gcd(self.m, self.n) == 1, "n", "m and n must be coprime")
        need(all(is_int(v) and v >= 0 for v in self.orders), "orders", "must be non-negative integers")
        need(len(self.orders) == len(self.punctures), "orders", "need one order per puncture")
        try:
            pts = [complex(*v) if isinstance(v, list) else complex(v) for v in self.punctures]
        except (TypeError, ValueError):
            raise ConfigurationError("punctures: entries must be numbers or [re, im] pairs", "punctures")
        need(all(abs(v) < 1 for v in pts), "punctures", "must lie inside the unit disk")
        need(all(isinstance(t, (int, float)) and 0 <= t <= 1 for t in self.tau), "tau", "entries must lie in [0, 1]")
        need(all(isinstance(v, (int, float)) and abs(v) < 1 for v in self.q), "q", "entries must satisfy |q| < 1")
        need(isinstance(self.eps, (int, float)) and abs(self.eps) < 0.5, "eps", "|eps| must be < 0.5")
        need(isinstance(self.tol, (int, float)) and self.tol > 0, "tol", "must be positive")
        need(isinstance(self.literal_max, bool), "literal_max", "must be a boolean")
        if self.experiment == "project-compare":
            need(self.domain in ("punctured_disk", "dxdstar", "hartogs", "disk"), "domain", "project-compare needs a Fourier multiplier domain")
            need(self.N >= 2 * self.bandwidth + 1, "N", "must be at least 2*bandwidth+1")

    def puncture_points(self) -> list:
        return [complex(*v) if isinstance(v, list) else complex(v) for v in self.punctures]


@dataclass
class ResultTable:
    columns: list
    rows: list
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        w = len(self.columns)
        for r in self.rows:
            if len(r) != w:
                raise ValueError(f"row {r!r} has {len(r)} cells, expected {w}")

    def to_json(self) -> str:
        return json.dumps({"metadata": self.metadata, "columns": self.columns, "rows": self.rows}, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ResultTable":
        obj = json.loads(text)
        return cls(obj["columns"], [list(r) for r in obj["rows"]], obj["metadata"])


# --------------------------------------------------------------------------
# experiments


def _cell(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else ("inf" if x > 0 else "nan")
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return x


def _domain_spec(cfg: ExperimentConfig):
    if cfg.domain == "disk":
        return Disk()
    if cfg.domain == "punctured_disk":
        pts = cfg.puncture_points() or [0j]
        orders = cfg.orders or [cfg.k]
        return PuncturedDisk(tuple(pts), tuple(orders))
    if cfg.domain == "dxdstar":
        return ProductDxDstar(cfg.k)
    if cfg.domain == "hartogs":
        return Hartogs(cfg.m, cfg.n, cfg.k)
    pts = cfg.puncture_points() or [0.1]
    orders = cfg.orders or [cfg.k]
    return SimplyConnectedPunctured(ConformalMap.quadratic(cfg.eps), tuple(pts), tuple(orders))


def _egg_measure(cfg: ExperimentConfig, tau: float):
    if cfg.measure == "omega":
        return EggOmegaP()
    if cfg.measure == "sigma":
        return EggSigma()
    return EggNuTau(tau, cfg.weight)


def _run_reproduce(cfg):
    spec = _domain_spec(cfg)
    rows = []
    if isinstance(spec, (ProductDxDstar, Hartogs)):
        for a, b in admissible_exponents(spec, cfg.monomials):
            g = samples_on_grid(spec, lambda w1, w2: w1**a * w2**b, cfg.N)
            for z in interior_points(spec, cfg.points):
                d = z[0] ** a * z[1] ** b
                v = reproduce(spec, g, z)
                rows.append([f"z1^{a} z2^{b}", z[0], z[1], abs(v - d) / abs(d)])
        return ["function", "z1", "z2", "rel_error"], rows
    # powers of (w - c) with c the image of the puncture span the admissible part
    if isinstance(spec, Disk):
        c, kk = 0j, 0
    else:
        c, kk = spec.punctures[0], spec.orders[0]
    to_image = (lambda z: z) if not isinstance(spec, SimplyConnectedPunctured) else (
        lambda z: complex(np.asarray(spec.map.forward(np.asarray(z))))
    )
    c = to_image(c)
    for j in range(-kk, cfg.monomials - kk):
        g = samples_on_grid(spec, lambda w: (w - c) ** j, cfg.N)
        for z in interior_points(Disk(), cfg.points):
            d = (to_image(z) - c) ** j
            v = reproduce(spec, g, z)
            rows.append([f"(z-c)^{j}", z, "", abs(v - d) / abs(d)])
    return ["function", "z1", "z2", "rel_error"], rows


def _random_coefficients(cfg, rng, torus):
    B = cfg.bandwidth
    shape = (2 * B + 1, 2 * B + 1) if torus else (2 * B + 1,)
    c = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return TorusCoefficients(-B, -B, c) if torus else CircleCoefficients(-B, c)


def _run_project_compare(cfg):
    spec = _domain_spec(cfg)
    ms = dataclasses.replace(MultiplierSpec.for_domain(spec), literal_max=cfg.literal_max)
    torus = isinstance(spec, (ProductDxDstar, Hartogs))
    rng = np.random.default_rng(cfg.seed)
    coeffs = _random_coefficients(cfg, rng, torus)
    samples = synthesize(coeffs, cfg.N)
    proj = project(analyze(samples), ms)
    idem = bool(project(proj, ms) == proj)
    rows = []
    for z in interior_points(spec, cfg.points):
        a = evaluate(proj, z)
        b = reproduce(spec, samples, z)
        z1, z2 = z if torus else (z, "")
        rows.append([z1, z2, abs(a - b) / max(abs(b), 1e-300), idem])
    return ["z1", "z2", "rel_error", "idempotent"], rows


def _run_egg_norms(cfg):
    rows = []
    for tau in cfg.tau:
        meas = _egg_measure(cfg, tau)
        for j in range(cfg.j_max + 1):
            for l in range(-cfg.k_max if cfg.measure != "omega" else 0, cfg.j_max + 1):
                rep = monomial_norm_report(cfg.p, meas, MonomialIndex(j, l), "quadrature")
                if rep.divergent_at:
                    rows.append([tau, j, l, "divergent(" + ",".join(rep.divergent_at) + ")", "", ""])
                    continue
                if cfg.measure == "omega":
                    ref = 4 * np.pi**2 * beta(j / cfg.p + 1, l / cfg.p + 1)
                    rows.append([tau, j, l, rep.value, ref, abs(rep.value / ref - 1)])
                else:
                    rows.append([tau, j, l, rep.value, "", ""])
    return ["tau", "j", "l", "norm_sq", "closed_form", "rel_error"], rows


def _run_egg_stabilize(cfg):
    rows = []
    for tau in cfg.tau:
        meas = _egg_measure(cfg, tau)
        thr = stabilization_threshold(cfg.p, tau if cfg.measure == "nu" else (1 if cfg.measure == "sigma" else 0))
        for k in range(cfg.k_max + 1):
            r = membership_test(cfg.p, meas, k)
            rows.append([cfg.p, tau, thr, k, r.member, r.probe_member, r.probe_ratio])
    return ["p", "tau", "threshold", "k", "member", "probe_member", "probe_ratio"], rows


def _run_rigidity(cfg):
    rows = []
    for rep, q in zip(rigidity_scan(cfg.q, cfg.k, cfg.N), cfg.q):
        rows.append([q, abs(q), cfg.k, rep.sup_defect, rep.antisymmetry_defect])
    return ["q", "abs_q", "k", "sup_defect", "antisymmetry_defect"], rows


def random_oracle_point(rng, m: int, n: int):
    """Draw ``(b, x, y)`` at least 0.05 away from every zero of ``x^m - b^n`` and ``y^m - b``."""
    while True:
        b = complex(*rng.uniform(-2, 2, 2))
        x = complex(*rng.uniform(-2, 2, 2))
        y = complex(*rng.uniform(-2, 2, 2))
        if abs(b) < 0.1:
            continue
        phase = 2 * np.pi * np.arange(m)
        yroots = abs(b) ** (1 / m) * np.exp(1j * (np.angle(b) + phase) / m)
        xroots = abs(b) ** (n / m) * np.exp(1j * (n * np.angle(b) + phase) / m)
        if np.min(np.abs(x - xroots)) > 0.05 and np.min(np.abs(y - yroots)) > 0.05:
            return b, x, y


def _run_oracle_suite(cfg):
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for m in range(1, cfg.m_max + 1):
        for n in range(1, cfg.n_max + 1):
            worst = 0.0
            for _ in range(cfg.samples):
                b, x, y = random_oracle_point(rng, m, n)
                lhs = partial_fraction_oracle(m, n, b, x, y)
                rhs = partial_fraction_closed_form(m, n, b, x, y)
                worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
            rows.append([m, n, cfg.samples, worst, worst <= cfg.tol])
    return ["m", "n", "samples", "max_rel_error", "pass"], rows


RUNNERS: dict[str, Callable] = {
    "reproduce": _run_reproduce,
    "project-compare": _run_project_compare,
    "egg-norms": _run_egg_norms,
    "egg-stabilize": _run_egg_stabilize,
    "rigidity-scan": _run_rigidity,
    "oracle-suite": _run_oracle_suite,
}


def run(config: ExperimentConfig) -> ResultTable:
    """Run one experiment; numerical failures become labelled cells, not exceptions."""
    if not isinstance(config, ExperimentConfig):
        config = ExperimentConfig.from_dict(config)
    else:
        config.validate()
    t0 = time.perf_counter()
    columns, rows = RUNNERS[config.experiment](config)
    meta = {
        "config": config.to_dict(),
        "version": __version__,
        "wall_time_s": round(time.perf_counter() - t0, 6),
    }
    return ResultTable(columns, [[_cell(c) for c in r] for r in rows], meta)


# --------------------------------------------------------------------------
# output


def render(table: ResultTable, fmt: str) -> str:
    if fmt == "json":
        return table.to_json() + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        w.writerows(table.rows)
        return buf.getvalue()
    if fmt == "gnuplot":
        lines = ["# " + " ".join(table.columns)]
        for r in table.rows:
            lines.append(" ".join(_gnuplot_cell(c) for c in r))
        return "\n".join(lines) + "\n"
    raise ConfigurationError(f"unknown format {fmt!r}", "format")


def _gnuplot_cell(c: Any) -> str:
    if isinstance(c, bool):
        return str(int(c))
    if isinstance(c, (int, float)):
        return repr(c)
    return '"' + str(c).replace('"', "'") + '"' if c != "" else "NaN"


def emit(table: ResultTable, fmt: str, out: Optional[Path] = None) -> None:
    """Write ``table`` to ``out`` (stdout when ``None``).

    CSV and gnuplot output hold only the table; the metadata, including the
    config echo, goes to a ``<out>.meta.json`` sidecar next to them.
    """
    text = render(table, fmt)
    if out is None:
        sys.stdout.write(text)
        return
    out = Path(out)
    out.write_text(text)
    if fmt != "json":
        Path(str(out) + ".meta.json").write_text(json.dumps(table.metadata, indent=2, sort_keys=True) + "\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="szego-lab", description="Szego kernel experiments")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run an experiment from a JSON config")
    r.add_argument("--config", required=True, type=Path)
    r.add_argument("--out", type=Path, default=None)
    r.add_argument("--format", choices=FORMATS, default="csv")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = json.loads(args.config.read_text())
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
        return 1
    try:
        cfg = ExperimentConfig.from_dict(raw)
    except ConfigurationError as exc:
        print(f"error: invalid config field {exc.field!r}: {exc}", file=sys.stderr)
        return 1
    except TypeError as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return 1
    out = args.out or (Path(cfg.output_path) if cfg.output_path else None)
    try:
        table = run(cfg)
    except SzegoLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        emit(table, args.format, out)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
