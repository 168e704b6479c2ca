"""Jet-dimension counting: metrics versus Hessian data.

A metric in dimension n has n(n+1)/2 components, while Hessian data is a
coordinate system plus a potential (n+1 functions) whose (k+2)-jet must be
tracked to control the k-jet of the metric.  Counting Taylor coefficients
shows the metric jets eventually outgrow the Hessian-data jets for n >= 3,
while for n = 2 the deficit stays negative at every order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


def _taylor_terms(n: int, k: int) -> int:
    """Number of monomials of degree <= k in n variables: sum of C(n+i-1, i)."""
    return sum(math.comb(n + i - 1, i) for i in range(k + 1))


def jet_dim_metric(n: int, k: int) -> int:
    """Dimension of the space of k-jets of metrics at a point."""
    if n < 2 or k < 0:
        raise ValueError("need n >= 2 and k >= 0")
    return (n * (n + 1) // 2) * _taylor_terms(n, k)


def jet_dim_hessian_data(n: int, k: int) -> int:
    """Dimension of the space of (k+2)-jets of a coordinate system plus potential."""
    if n < 2 or k < 0:
        raise ValueError("need n >= 2 and k >= 0")
    return (n + 1) * _taylor_terms(n, k + 2)


def deficit(n: int, k: int) -> int:
    """jet_dim_metric(n, k) - jet_dim_hessian_data(n, k)."""
    return jet_dim_metric(n, k) - jet_dim_hessian_data(n, k)


def deficit_factored_twice(n: int, k: int) -> int:
    """2 * deficit via the factored form, an exact cross-check oracle.

    2 * deficit = (n+1) * [(n-2) * T_k - 2 C(n+k, k+1) - 2 C(n+k+1, k+2)]
    where T_k counts monomials of degree <= k.  The (n-2) factor explains
    why the two-dimensional deficit can never turn positive.
    """
    t = _taylor_terms(n, k)
    return (n + 1) * ((n - 2) * t
                      - 2 * math.comb(n + k, k + 1)
                      - 2 * math.comb(n + k + 1, k + 2))


@dataclass
class JetReport:
    n: int
    cap: int
    rows: list = field(default_factory=list)  # (k, dim_metric, dim_hessian, deficit)
    crossover: int | None = None
    monotone_after_crossover: bool = True
    growth_exponent_metric: float = 0.0
    growth_exponent_hessian: float = 0.0
    formula_note: str = (
        "dimensions are computed from the two jet-count summations; the "
        "printed closed form for the per-order coefficient a_{k,n} is "
        "inconsistent with those summations and is not used")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "cap": self.cap,
            "rows": [list(r) for r in self.rows],
            "crossover": self.crossover,
            "monotone_after_crossover": self.monotone_after_crossover,
            "growth_exponent_metric": self.growth_exponent_metric,
            "growth_exponent_hessian": self.growth_exponent_hessian,
            "formula_note": self.formula_note,
        }

    def to_text(self) -> str:
        lines = [f"{'k':>4} {'dim J_k(g)':>16} {'dim J_k+2(x,phi)':>18} {'deficit':>14}"]
        for k, dm, dh, df in self.rows:
            lines.append(f"{k:>4} {dm:>16} {dh:>18} {df:>14}")
        lines.append(f"crossover k* = {self.crossover}")
        return "\n".join(lines)


def crossover(n: int, cap: int) -> JetReport:
    """Smallest k <= cap where the metric jets outgrow the Hessian-data jets.

    Returns the full per-order table; crossover is None when the deficit
    never turns positive up to the cap.
    """
    if n < 2 or cap < 1:
        raise ValueError("need n >= 2 and cap >= 1")
    report = JetReport(n=n, cap=cap)
    for k in range(cap + 1):
        dm = jet_dim_metric(n, k)
        dh = jet_dim_hessian_data(n, k)
        report.rows.append((k, dm, dh, dm - dh))
        if dm > dh and report.crossover is None:
            report.crossover = k
    if report.crossover is not None:
        tail = [r[3] for r in report.rows[report.crossover:]]
        report.monotone_after_crossover = all(
            b > a for a, b in zip(tail, tail[1:])) if len(tail) > 1 else True
        if any(d <= 0 for d in tail):
            report.monotone_after_crossover = False
    half = max(1, cap // 2)
    for attr, fn in (("growth_exponent_metric", jet_dim_metric),
                     ("growth_exponent_hessian", jet_dim_hessian_data)):
        ratio = Fraction(fn(n, cap), fn(n, half))
        setattr(report, attr, math.log(float(ratio)) / math.log((cap + 1) / (half + 1)))
    return report
