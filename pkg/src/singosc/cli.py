"""Command-line front end.

    singosc potential|density|eigen|phase|verify [--config FILE] [flags]

Flags override the config file, which overrides the built-in defaults
(g=2, eps=3, ka=1, kb=1/4, a=1, c=2). Every output embeds the full configuration.
Exit codes: 0 success, 2 invalid configuration, 3 verification failures.
"""

import argparse
from dataclasses import dataclass, field, replace
import io
import json
import sys

import numpy as np

from . import base_invariant as base
from . import factorization as fac
from .config import FIGURE_CONFIGS, ConfigError, RunConfig, coerce, parse_text
from .deformed_invariant import DeformedSpectrum, NormalizationError, eigenvalue_deformed, theta2
from .ermakov import ErmakovParamsError, phase_integral
from .specfun import PoleError
from .svg import Figure

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILURES = 3

VALIDATION_ERRORS = (
    ConfigError,
    ErmakovParamsError,
    fac.SeedConstraintError,
    fac.NodelessViolationError,
    NormalizationError,
    PoleError,
    ValueError,
)


@dataclass
class Output:
    """Result of one subcommand in all three serializations."""

    command: str
    config: RunConfig
    columns: list
    rows: np.ndarray
    payload: dict
    figure: Figure = None
    extra: dict = field(default_factory=dict)

    def header_lines(self):
        return [f"singosc {self.command}"] + [f"{k} = {v}" for k, v in self.config.header_items()]

    def to_csv(self):
        buf = io.StringIO()
        for line in self.header_lines():
            buf.write(f"# {line}\n")
        buf.write(",".join(self.columns) + "\n")
        # %-formatting ignores the locale, so the decimal separator is always '.'
        np.savetxt(buf, self.rows, fmt="%.17g", delimiter=",")
        return buf.getvalue()

    def to_json(self):
        doc = {"command": self.command, "config": self.config.as_dict(), **self.payload}
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"

    def to_svg(self):
        return self.figure.render()

    def render(self, fmt):
        return {"csv": self.to_csv, "json": self.to_json, "svg": self.to_svg}[fmt]()


def _meta(cfg, command):
    return json.dumps({"command": command, "config": cfg.as_dict()}, sort_keys=True)


def _seed(cfg, check=True):
    _, model, seed = cfg.check()
    return fac.SeedSolution(seed, model.g) if check else None


def _grid_rows(xs, ts, values):
    tt, xx = np.meshgrid(ts, xs, indexing="ij")
    return np.column_stack([xx.ravel(), tt.ravel(), values.ravel()])


def _lists(a):
    return [[float(v) for v in row] for row in np.atleast_2d(a)]


def cmd_potential(cfg):
    """``V2(x, t)`` on the configured grid plus fixed-t cuts and ``V1``."""
    erm, model, _ = cfg.check()
    sol = _seed(cfg)
    xs, ts = cfg.x_grid(), cfg.t_grid()
    v2 = np.array([fac.potential_v2(sol, erm, xs, t) for t in ts])
    v1 = base.potential_v1(model.g, xs)
    cuts = cfg.cut_times()
    v2_cuts = np.array([fac.potential_v2(sol, erm, xs, t) for t in cuts])
    payload = {
        "x": [float(v) for v in xs],
        "t": [float(v) for v in ts],
        "V2": _lists(v2),
        "V1": [float(v) for v in v1],
        "cuts": {"t": cuts, "V2": _lists(v2_cuts)},
        "min_V2": float(np.min(v2)),
        "min_V1": float(np.min(v1)),
    }
    fig = Figure(1100, 460, _meta(cfg, "potential"))
    lo = float(np.min(v2))
    fig.heatmap(70, 40, 420, 360, xs, ts, v2, vrange=(lo, lo + 40.0), title="V2(x, t)")
    series = [(f"V2, t={t:.4g}", xs, v) for t, v in zip(cuts, v2_cuts)] + [("V1", xs, v1)]
    fig.lines(640, 40, 420, 360, series, ylim=(lo - 1.0, lo + 40.0), ylabel="V", title="fixed-t cuts")
    return Output("potential", cfg, ["x", "t", "V2"], _grid_rows(xs, ts, v2), payload, fig)


def _states(cfg):
    erm, model, _ = cfg.check()
    if cfg.family == "base":
        return [base.base_state(n, model.g, erm) for n in cfg.indices()]
    spec = DeformedSpectrum(_seed(cfg), erm)
    return [spec.state(n) for n in cfg.indices()]


def cmd_density(cfg):
    """``|psi_n(x, t)|^2`` for each requested index of the chosen family."""
    states = _states(cfg)
    xs, ts = cfg.x_grid(), cfg.t_grid()
    rows, dens = [], {}
    for st in states:
        d = np.array([st.density(xs, t) for t in ts])
        dens[str(st.index)] = _lists(d)
        rows.append(np.column_stack([_grid_rows(xs, ts, d)[:, :2], np.full(d.size, st.index), d.ravel()]))
    payload = {"x": [float(v) for v in xs], "t": [float(v) for v in ts], "family": cfg.family, "density": dens}
    fig = Figure(560, 60 + 420 * len(states), _meta(cfg, "density"))
    for k, st in enumerate(states):
        fig.heatmap(70, 40 + 420 * k, 420, 340, xs, ts, np.array(dens[str(st.index)]),
                    title=f"|psi_{st.index}|^2 ({cfg.family})")
    return Output("density", cfg, ["x", "t", "n", "density"], np.vstack(rows), payload, fig)


def cmd_eigen(cfg):
    """Eigenvalue table of both invariants for the requested indices."""
    _, model, seed = cfg.check()
    ns = cfg.indices()
    lam1 = [float(base.eigenvalue_base(n, model.g)) for n in ns]
    lam2 = [float(eigenvalue_deformed(n, model.g, seed.epsilon)) for n in ns]
    rows = np.column_stack([ns, lam1, lam2]).astype(float)
    payload = {"n": ns, "lambda1": lam1, "lambda2": lam2, "gaps2": [b - a for a, b in zip(lam2, lam2[1:])]}
    fig = Figure(560, 460, _meta(cfg, "eigen"))
    fig.lines(70, 40, 420, 360, [("lambda1", ns, lam1), ("lambda2", ns, lam2)], xlabel="n", ylabel="lambda",
              title="invariant spectra")
    return Output("eigen", cfg, ["n", "lambda1", "lambda2"], rows, payload, fig)


def cmd_phase(cfg):
    """Branch-corrected phases ``theta_n^(1)(t)`` and ``theta_n^(2)(t)``."""
    erm, model, seed = cfg.check()
    sol = _seed(cfg)
    ts = cfg.t_grid()
    ns = cfg.indices()
    integral = np.array([phase_integral(erm, erm.t0, t) for t in ts])
    th1 = {str(n): [float(v) for v in -base.eigenvalue_base(n, model.g) * integral] for n in ns}
    th2 = {str(n): [float(theta2(n, sol, erm, t)) for t in ts] for n in ns}
    rows = [np.column_stack([ts, np.full(len(ts), n), th1[str(n)], th2[str(n)]]) for n in ns]
    payload = {"t": [float(v) for v in ts], "theta1": th1, "theta2": th2}
    fig = Figure(560, 460, _meta(cfg, "phase"))
    series = [(f"theta1_{n}", ts, th1[str(n)]) for n in ns] + [(f"theta2_{n}", ts, th2[str(n)]) for n in ns]
    fig.lines(70, 40, 420, 360, series, xlabel="t", ylabel="theta", title="phases")
    return Output("phase", cfg, ["t", "n", "theta1", "theta2"], np.vstack(rows), payload, fig)


def cmd_verify(cfg):
    from .verify import run_suite

    cfg.check()
    report = run_suite(cfg)
    entries = report.payload()["entries"]
    rows = np.array([[i, e["residual"], e["tolerance"], float(e["passed"])] for i, e in enumerate(entries)])
    out = Output("verify", cfg, ["index", "residual", "tolerance", "passed"], rows, json.loads(report.to_json()))
    out.extra["report"] = report
    fig = Figure(760, 60 + 16 * len(entries), _meta(cfg, "verify"))
    for i, e in enumerate(entries):
        fig.text(20, 30 + 16 * i, f"[{'PASS' if e['passed'] else 'FAIL'}] {e['name']}: "
                                  f"{e['residual']:.3e} < {e['tolerance']:.1e}", size=12, anchor="start")
    out.figure = fig
    return out


COMMANDS = {
    "potential": cmd_potential,
    "density": cmd_density,
    "eigen": cmd_eigen,
    "phase": cmd_phase,
    "verify": cmd_verify,
}


def build_parser():
    p = argparse.ArgumentParser(prog="singosc", description="Time-dependent deformations of the singular oscillator.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--preset", choices=sorted(FIGURE_CONFIGS), help="start from a figure parameter set")
    for name in ("g", "a", "c", "t0", "epsilon", "ka", "kb"):
        p.add_argument(f"--{name}", help=f"model parameter {name}")
    p.add_argument("--n", help="index or range: 3, 0-2, 0,2,5")
    p.add_argument("--family", choices=("base", "deformed"))
    p.add_argument("--x-min", dest="x_min")
    p.add_argument("--x-max", dest="x_max")
    p.add_argument("--nx")
    p.add_argument("--t-min", dest="t_min")
    p.add_argument("--t-max", dest="t_max")
    p.add_argument("--nt")
    p.add_argument("--cuts", help="comma separated cut times, pi allowed (e.g. 0,3pi/8)")
    p.add_argument("--format", choices=("csv", "json", "svg"))
    p.add_argument("--out", help="output path (default: stdout)")
    return p


FLAG_KEYS = ("g", "a", "c", "t0", "epsilon", "ka", "kb", "n", "family",
             "x_min", "x_max", "nx", "t_min", "t_max", "nt", "cuts", "format", "out")


def resolve_config(args):
    """Defaults, then ``--preset``, then ``--config``, then explicit flags."""
    cfg = RunConfig()
    if args.preset:
        cfg = replace(cfg, **FIGURE_CONFIGS[args.preset])
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = replace(cfg, **parse_text(fh.read()))
    flags = {k: coerce(k, getattr(args, k)) for k in FLAG_KEYS if getattr(args, k) is not None}
    return replace(cfg, **flags)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        out = COMMANDS[args.command](cfg)
    except VALIDATION_ERRORS as exc:
        print(f"singosc: invalid configuration: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    fmt = cfg.format if args.format or args.command != "verify" else "json"
    text = out.render(fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify":
        report = out.extra["report"]
        print(report.to_text(), file=sys.stderr)
        return EXIT_OK if report.all_passed else EXIT_FAILURES
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
