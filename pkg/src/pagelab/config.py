"""Metric description files.

Plain ``key = value`` text read with :mod:`configparser`.  Keys before the
first section are global::

    name = page-text          # optional
    kappa = 2                 # structure constant, dσ₁ = −κ σ₂∧σ₃
    sigma_volume = 1          # optional; required when kappa = 0

    [constants]               # evaluated in order; may use a, pi and earlier names
    Dc = 1/(3 + a^2)

    [profile]                 # expressions in t
    A = ...
    B = ...
    C = ...
    D = ...

    [domain]
    t0 = 0
    t1 = pi                   # constant expressions allowed
    lower = bolt              # bolt | nut | none
    upper = bolt

Keys are case-sensitive; ``#`` and ``;`` start full-line comments.  The
Page constant ``a`` is always predefined.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

from .expr import Expr, eval_expr, free_constants, parse_expression
from .metrics import ENDPOINT_KINDS, NONE, solve_page_constant

__all__ = ["MetricConfig", "ConfigError", "parse_metric_config", "load_metric_config", "default_page_config"]

_TOP = "__top__"


class ConfigError(ValueError):
    pass


@dataclass
class MetricConfig:
    name: str
    kappa: float
    constants: dict[str, float]
    profile: dict[str, tuple[Expr, str]]
    domain: tuple[float, float]
    endpoints: tuple[str, str] = (NONE, NONE)
    sigma_volume: Union[float, None] = None
    source: str = field(default="", repr=False)


def _constant(text: str, env: dict[str, float], what: str) -> float:
    try:
        e = parse_expression(text, constants=set(env))
    except ValueError as exc:
        raise ConfigError(f"{what}: {exc}") from exc
    if _uses_t(e):
        raise ConfigError(f"{what}: constant expression may not depend on t")
    return eval_expr(e, 0.0, env, text).val


def _uses_t(e) -> bool:
    from .expr import BinOp, Call, Neg, Var

    if isinstance(e, Var):
        return True
    if isinstance(e, Neg):
        return _uses_t(e.operand)
    if isinstance(e, BinOp):
        return _uses_t(e.left) or _uses_t(e.right)
    if isinstance(e, Call):
        return _uses_t(e.arg)
    return False


def parse_metric_config(text: str, name: str = "custom") -> MetricConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=None)
    cp.optionxform = str
    try:
        cp.read_string(f"[{_TOP}]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc

    stray = set(cp.sections()) - {_TOP, "constants", "profile", "domain"}
    if stray:
        raise ConfigError(f"unknown sections {sorted(stray)}")
    top = cp[_TOP]
    env = {"a": solve_page_constant().a}
    if "kappa" not in top:
        raise ConfigError("missing 'kappa'")
    kappa = _constant(top["kappa"], env, "kappa")
    sigma_volume = _constant(top["sigma_volume"], env, "sigma_volume") if "sigma_volume" in top else None
    unknown = set(top) - {"name", "kappa", "sigma_volume"}
    if unknown:
        raise ConfigError(f"unknown global keys {sorted(unknown)}")

    if cp.has_section("constants"):
        for key, val in cp["constants"].items():
            env[key] = _constant(val, env, f"constant {key}")

    if not cp.has_section("profile"):
        raise ConfigError("missing [profile] section")
    prof = cp["profile"]
    missing = [k for k in "ABCD" if k not in prof]
    if missing:
        raise ConfigError(f"[profile] lacks {', '.join(missing)}")
    extra = set(prof) - set("ABCD")
    if extra:
        raise ConfigError(f"[profile] has unknown keys {sorted(extra)}")
    profile = {}
    for k in "ABCD":
        src = prof[k]
        try:
            profile[k] = (parse_expression(src, constants=set(env)), src)
        except ValueError as exc:
            raise ConfigError(f"profile {k}: {exc}") from exc

    if not cp.has_section("domain"):
        raise ConfigError("missing [domain] section")
    dom = cp["domain"]
    try:
        t0 = _constant(dom["t0"], env, "t0")
        t1 = _constant(dom["t1"], env, "t1")
    except KeyError as exc:
        raise ConfigError(f"[domain] lacks {exc.args[0]}") from None
    extra = set(dom) - {"t0", "t1", "lower", "upper"}
    if extra:
        raise ConfigError(f"[domain] has unknown keys {sorted(extra)}")
    ends = (dom.get("lower", NONE).strip(), dom.get("upper", NONE).strip())
    for e in ends:
        if e not in ENDPOINT_KINDS:
            raise ConfigError(f"endpoint kind {e!r} not one of {ENDPOINT_KINDS}")
    if not t0 < t1:
        raise ConfigError(f"empty domain ({t0}, {t1})")

    used = set().union(*(free_constants(e) for e, _ in profile.values()))
    env = {k: v for k, v in env.items() if k in used or k == "a"}
    return MetricConfig(
        name=top.get("name", name).strip(),
        kappa=kappa,
        constants=env,
        profile=profile,
        domain=(t0, t1),
        endpoints=ends,
        sigma_volume=sigma_volume,
        source=text,
    )


def load_metric_config(path: Union[str, Path]) -> MetricConfig:
    path = Path(path)
    return parse_metric_config(path.read_text(encoding="utf-8"), name=path.stem)


def default_page_config() -> MetricConfig:
    """The shipped Page-metric description (r coordinate, calibrated κ)."""
    text = resources.files("pagelab").joinpath("data/page_r.ini").read_text(encoding="utf-8")
    return parse_metric_config(text, name="page-r")
