"""Deterministic, space-budgeted k-SUM solvers."""

import json
from fractions import Fraction

from ._core import (
    BudgetExceeded,
    Instance,
    KsumError,
    ParseError,
    generate,
    load_instance,
    parse_instance,
    save_instance,
    solver_names,
)
from . import _core

__all__ = [
    "BudgetExceeded",
    "Instance",
    "KsumError",
    "ParseError",
    "bench",
    "check_constraints",
    "curve",
    "generate",
    "load_instance",
    "parse_instance",
    "plan_3sum_two_stage",
    "plan_ksum",
    "save_instance",
    "solve",
    "solver_names",
]

_EXPONENT_KEYS = {
    "g_exponent",
    "h_exponent",
    "time_exponent",
    "space_exponent",
    "eps",
    "alpha",
    "stage1_g_exponent",
    "intermediate_time_exponent",
    "stage2_g_exponent",
    "balance_term",
    "gain_term",
    "effective_alpha",
}


def _fractions(plan):
    return {k: Fraction(v) if k in _EXPONENT_KEYS and v is not None else v for k, v in plan.items()}


def solve(instance, solver="brute-force", base=None, g=None, h=None, space_cap=None):
    """Solve under a fresh meter; returns the report as a dict."""
    return json.loads(_core.solve_json(instance, solver, base, g, h, space_cap))


def plan_ksum(k, space="linear", n=1 << 20):
    return _fractions(json.loads(_core.plan_ksum_json(k, space, n)))


def plan_3sum_two_stage(eps, alpha):
    return _fractions(json.loads(_core.plan_3sum_two_stage_json(str(Fraction(eps)), str(Fraction(alpha)))))


def check_constraints(f, g, h, n):
    """f is "power:<eps>", "polylog:<a>" or "lg/lglg"; g and h are (p, q, r)."""
    return json.loads(_core.check_constraints_json(f, tuple(g), tuple(h), float(n)))


def curve(k_min=4, k_max=12, space="linear", n=1 << 20):
    return _core.curve_csv(k_min, k_max, space, n)


def bench(config, with_wall_time=True):
    """Run a bench grid given as a dict or JSON text; returns CSV text."""
    text = config if isinstance(config, str) else json.dumps(config)
    return _core.bench_csv(text, with_wall_time)
