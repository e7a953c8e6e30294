"""Run configuration shared by the CLI and the verification suite.

A config file is plain ``key = value`` text; blank lines and ``#`` comments
are ignored. Keys are the :class:`RunConfig` field names.
"""

from dataclasses import dataclass, fields, replace
import math

import numpy as np


class ConfigError(ValueError):
    """Malformed configuration text or field value."""


@dataclass(frozen=True)
class RunConfig:
    g: float = 2.0
    a: float = 1.0
    c: float = 2.0
    t0: float = 0.0
    epsilon: float = 3.0
    ka: float = 1.0
    kb: float = 0.25
    n: str = "0-2"
    family: str = "deformed"
    x_min: float = 0.01
    x_max: float = 8.0
    nx: int = 800
    t_min: float = 0.0
    t_max: float = math.pi
    nt: int = 200
    cuts: str = "0,pi/8,pi/4,3pi/8,pi/2"
    format: str = "csv"
    out: str = ""

    def indices(self):
        return parse_indices(self.n)

    def cut_times(self):
        try:
            return [float(_eval_pi(v)) for v in self.cuts.split(",") if v.strip()]
        except ValueError as exc:
            raise ConfigError(f"bad cut times {self.cuts!r}") from exc

    def x_grid(self):
        return np.linspace(self.x_min, self.x_max, self.nx)

    def t_grid(self):
        return np.linspace(self.t_min, self.t_max, self.nt)

    def header_items(self):
        """``(key, text)`` pairs in field order; floats via ``repr`` (locale free)."""
        return [(f.name, _fmt(getattr(self, f.name))) for f in fields(self) if f.name != "out"]

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "out"}

    def check(self):
        """Validate every field and return ``(ermakov, model, seed)``.

        Raises the domain error of the violated constraint.
        """
        from .base_invariant import ModelParams
        from .ermakov import ErmakovParams
        from .factorization import SeedParams, validate_seed

        if self.family not in ("base", "deformed"):
            raise ConfigError(f"family must be 'base' or 'deformed', got {self.family!r}")
        if self.format not in ("csv", "json", "svg"):
            raise ConfigError(f"format must be csv, json or svg, got {self.format!r}")
        if not (0.0 < self.x_min < self.x_max):
            raise ConfigError("x range must satisfy 0 < x_min < x_max (half line)")
        if self.nx < 2 or self.nt < 1 or self.t_max < self.t_min:
            raise ConfigError("grid needs nx >= 2, nt >= 1 and t_min <= t_max")
        self.indices()
        self.cut_times()
        erm = ErmakovParams(self.a, self.c, self.t0)
        model = ModelParams(self.g)
        seed = SeedParams(self.epsilon, self.ka, self.kb)
        validate_seed(seed, model.g)
        return erm, model, seed


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _fmt(v):
    return repr(float(v)) if isinstance(v, float) else str(v)


def coerce(key, text):
    if key not in _TYPES:
        raise ConfigError(f"unknown config key {key!r}")
    kind = _TYPES[key]
    kind = {"float": float, "int": int, "str": str}.get(kind, kind)
    try:
        if kind is float:
            return float(_eval_pi(text))
        if kind is int:
            return int(text)
        return str(text)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {text!r}") from exc


def _eval_pi(text):
    # allow "pi", "3pi/8" style values in config files
    t = text.strip().replace(" ", "")
    if "pi" not in t:
        return float(t)
    num, _, den = t.partition("/")
    coef = num.replace("*", "").replace("pi", "")
    value = (float(coef) if coef not in ("", "+", "-") else float(coef + "1")) * math.pi
    return value / float(den) if den else value


def parse_indices(spec):
    """``"3"`` -> [3], ``"0-2"`` -> [0, 1, 2], ``"0,2,5"`` -> [0, 2, 5]."""
    out = []
    for part in str(spec).split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        try:
            if sep:
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError as exc:
            raise ConfigError(f"bad index range {spec!r}") from exc
    if not out or min(out) < 0:
        raise ConfigError(f"index range must list non-negative integers, got {spec!r}")
    return out


def parse_text(text):
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key = key.strip().replace("-", "_")
        values[key] = coerce(key, val.strip())
    return values


def load(path=None, overrides=None):
    """Defaults, then the file at ``path``, then ``overrides`` (flags win)."""
    cfg = RunConfig()
    if path:
        with open(path, encoding="utf-8") as fh:
            cfg = replace(cfg, **parse_text(fh.read()))
    if overrides:
        clean = {k: (coerce(k, v) if isinstance(v, str) else v) for k, v in overrides.items() if v is not None}
        cfg = replace(cfg, **clean)
    return cfg


def dump(cfg):
    return "".join(f"{k} = {v}\n" for k, v in cfg.header_items())


FIGURE_CONFIGS = {
    "base-g1": dict(g=1.0, a=2.0, c=1.0, t0=0.0, family="base", n="0-2"),
    "nonsingular-g1": dict(g=1.0, a=2.0, c=1.0, t0=0.0, epsilon=-2.0, ka=1.0, kb=0.25),
    "equidistant-g2": dict(g=2.0, a=1.0, c=2.0, t0=0.0, epsilon=3.0, ka=1.0, kb=0.25),
}


def figure_config(name, **extra):
    return replace(RunConfig(), **FIGURE_CONFIGS[name], **extra)
