"""Built-in reference design grids.

Five grids cover the standard parameter lattice: consumer risks 0.25,
0.10, 0.05 and 0.01, producer risk 0.05, quality ratios 2 through 6 and
duration multipliers 0.5, 0.7 and 1.0.

1. double plans, shape 0.75
2. double plans, shape 1.25
3. double-versus-single comparison, shapes 0.75 and 1.25
4. group plans (group sizes 5 and 10), shape 0.75
5. group plans (group sizes 5 and 10), shape 1.25

Rows stream in row-major order: consumer risk, then quality ratio, then
any per-row block (shape or group size), then multiplier.  Designs are
memoised per process, so regenerating a grid or sharing cells between
grids costs one search per distinct cell.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .design import (
    DesignOutcome,
    RiskSpec,
    SearchBounds,
    design_double,
    design_group,
    design_single,
)
from .errors import DomainError

BETAS = (0.25, 0.10, 0.05, 0.01)
R2_LEVELS = (2.0, 3.0, 4.0, 5.0, 6.0)
A_LEVELS = (0.5, 0.7, 1.0)
GROUP_SIZES = (5, 10)
ALPHA = 0.05
TABLE_IDS = (1, 2, 3, 4, 5)

_DOUBLE_GAMMA = {1: 0.75, 2: 1.25}
_GROUP_GAMMA = {4: 0.75, 5: 1.25}


@lru_cache(maxsize=None)
def _double(spec: RiskSpec, bounds: SearchBounds) -> DesignOutcome:
    return design_double(spec, bounds)


@lru_cache(maxsize=None)
def _single(spec: RiskSpec, bounds: SearchBounds) -> DesignOutcome:
    return design_single(spec, bounds)


@lru_cache(maxsize=None)
def _group(spec: RiskSpec, r: int, bounds: SearchBounds) -> DesignOutcome:
    return design_group(spec, r, bounds)


def _base(table: int, beta: float, r2: float, a: float, gamma: float) -> dict:
    return {
        "table": table,
        "beta": beta,
        "r2": r2,
        "a": a,
        "gamma": gamma,
        "alpha": ALPHA,
    }


def _double_fields(out: DesignOutcome) -> dict:
    if not out.feasible:
        return {
            "feasible": False,
            "n1": None, "n2": None, "c1": None, "c2": None,
            "asn": None, "p_alpha": None, "p_beta": None,
        }
    return {
        "feasible": True,
        "n1": out.plan.n1,
        "n2": out.plan.n2,
        "c1": out.plan.c1,
        "c2": out.plan.c2,
        "asn": out.evaluation.asn,
        "p_alpha": out.evaluation.p_accept_producer,
        "p_beta": out.evaluation.p_accept_consumer,
    }


def _group_fields(out: DesignOutcome) -> dict:
    if not out.feasible:
        return {
            "feasible": False,
            "g": None, "c": None, "n": None,
            "p_alpha": None, "p_beta": None,
        }
    return {
        "feasible": True,
        "g": out.plan.g,
        "c": out.plan.c,
        "n": out.plan.n,
        "p_alpha": out.evaluation.p_accept_producer,
        "p_beta": out.evaluation.p_accept_consumer,
    }


def generate(table: int, bounds: Optional[SearchBounds] = None) -> list[dict]:
    """All rows of one built-in grid, in the documented row-major order."""
    if table not in TABLE_IDS:
        raise DomainError(f"table must be one of {TABLE_IDS}, got {table!r}")
    bounds = bounds or SearchBounds()
    rows = []
    if table in (1, 2):
        gamma = _DOUBLE_GAMMA[table]
        for beta in BETAS:
            for r2 in R2_LEVELS:
                for a in A_LEVELS:
                    spec = RiskSpec(beta=beta, alpha=ALPHA, r2=r2, a=a, gamma=gamma)
                    row = _base(table, beta, r2, a, gamma)
                    row.update(_double_fields(_double(spec, bounds)))
                    rows.append(row)
    elif table == 3:
        for beta in BETAS:
            for r2 in R2_LEVELS:
                for gamma in (0.75, 1.25):
                    for a in A_LEVELS:
                        spec = RiskSpec(beta=beta, alpha=ALPHA, r2=r2, a=a, gamma=gamma)
                        d = _double(spec, bounds)
                        s = _single(spec, bounds)
                        row = _base(table, beta, r2, a, gamma)
                        row["adp_asn"] = d.evaluation.asn if d.feasible else None
                        row["ssp_n"] = s.plan.n if s.feasible else None
                        row["ssp_c"] = s.plan.c if s.feasible else None
                        rows.append(row)
    else:
        gamma = _GROUP_GAMMA[table]
        for beta in BETAS:
            for r2 in R2_LEVELS:
                for r in GROUP_SIZES:
                    for a in A_LEVELS:
                        spec = RiskSpec(beta=beta, alpha=ALPHA, r2=r2, a=a, gamma=gamma)
                        row = _base(table, beta, r2, a, gamma)
                        row["r"] = r
                        row.update(_group_fields(_group(spec, r, bounds)))
                        rows.append(row)
    return rows
