"""Parameter arithmetic for generalized quadrangles of order (s,t).

Everything is exact integer arithmetic; inequality tests are evaluated
by cross-multiplication, never floating point, because the scans certify
nonexistence.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._ints import divisors_from_factors, factorize


@dataclass(frozen=True)
class GQOrder:
    s: int
    t: int

    @property
    def thick(self) -> bool:
        return self.s >= 2 and self.t >= 2

    @property
    def n_points(self) -> int:
        return (self.s + 1) * (self.s * self.t + 1)

    @property
    def n_lines(self) -> int:
        return (self.t + 1) * (self.s * self.t + 1)


def solve_orders(nP: int, nL: int, nP_factors: dict[int, int] | None = None) -> list[GQOrder]:
    """All thick orders (s,t) with (s+1)(st+1) = nP and (t+1)(st+1) = nL.

    Exhaustive: s+1 divides nP, so iterating u = s+1 over the divisors of
    nP and checking integrality of t = (nP/u - 1)/s plus the line-count
    equation covers every solution exactly once.
    """
    if nP < 2 or nL < 2:
        return []
    if nP_factors is None:
        nP_factors = factorize(nP)
    out = []
    for u in divisors_from_factors(nP_factors):
        if u < 3:
            continue
        s = u - 1
        d = nP // u  # st + 1
        if d < 2 * s + 1:  # t >= 2; divisors ascend, so no later u works either
            break
        if (d - 1) % s:
            continue
        t = (d - 1) // s
        if (t + 1) * d == nL:
            out.append(GQOrder(s, t))
    out.sort(key=lambda o: (o.s, o.t))
    return out


def solve_point_count(nP: int) -> list[GQOrder]:
    """All thick (s,t) satisfying the single point-count equation
    (s+1)(st+1) = nP; t is unconstrained by a line count here."""
    out = []
    for u in divisors_from_factors(factorize(nP)):
        if u < 3:
            continue
        s = u - 1
        d = nP // u
        if d < 2 * s + 1:
            continue
        if (d - 1) % s == 0:
            out.append(GQOrder(s, (d - 1) // s))
    out.sort(key=lambda o: (o.s, o.t))
    return out


def solve_equal_order(n: int) -> int | None:
    """The s >= 1 with (s+1)(s^2+1) = n, if any ((s+1)(s^2+1) is strictly
    increasing, so binary search is exact)."""
    lo, hi = 1, 1
    while (hi + 1) * (hi * hi + 1) <= n:
        hi *= 2
    while lo <= hi:
        mid = (lo + hi) // 2
        v = (mid + 1) * (mid * mid + 1)
        if v == n:
            return mid
        if v < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def higman(s: int, t: int) -> bool:
    """Higman's inequality: s <= t^2 and t <= s^2."""
    return s <= t * t and t <= s * s


def divisibility(s: int, t: int) -> bool:
    """s + t divides st(s+1)(t+1)."""
    return s * t * (s + 1) * (t + 1) % (s + t) == 0


def cube_bounds(s: int, t: int, nP: int, nL: int) -> bool:
    """((t+1)/(s+1))^3 < |P| and ((s+1)/(t+1))^3 < |L|, cross-multiplied."""
    a, b = t + 1, s + 1
    return a**3 < nP * b**3 and b**3 < nL * a**3


def grid_order_check(s1: int, s2: int):
    """A grid with parameters (s1, s2) is a generalized quadrangle exactly
    when s1 = s2, of order (s1, 1).  Returns GQOrder or None."""
    if s1 < 1 or s2 < 1:
        raise ValueError("grid parameters must be >= 1")
    return GQOrder(s1, 1) if s1 == s2 else None


@dataclass(frozen=True)
class StabilizerBounds:
    """Size window for the line stabilizer given |G| and |G_alpha|.

    |G_alpha|^(4/3) / |G|^(1/3)  <  |G_ell|  <  |G_alpha|^(3/4) |G|^(1/4),
    evaluated exactly: the lower test is |G_ell|^3 |G| > |G_alpha|^4 and
    the upper |G_ell|^4 < |G_alpha|^3 |G|.  Strict on both sides.
    """

    group_order: int
    point_stab_order: int

    def lower_ok(self, line_stab_order: int) -> bool:
        return line_stab_order**3 * self.group_order > self.point_stab_order**4

    def upper_ok(self, line_stab_order: int) -> bool:
        return line_stab_order**4 < self.point_stab_order**3 * self.group_order

    def admits(self, line_stab_order: int) -> bool:
        return self.lower_ok(line_stab_order) and self.upper_ok(line_stab_order)


def stabilizer_bounds(group_order: int, point_stab_order: int) -> StabilizerBounds:
    if group_order % point_stab_order:
        raise ValueError("point stabilizer order must divide the group order")
    return StabilizerBounds(group_order, point_stab_order)


def apply_filters(candidates: list[GQOrder], nP: int, nL: int):
    """Run the named feasibility predicates over candidates.

    Returns (survivors, trace) where trace lists (order, filter_name,
    passed) for reproducibility.
    """
    survivors = []
    trace = []
    for cand in candidates:
        ok = True
        for name, res in (
            ("higman", higman(cand.s, cand.t)),
            ("divisibility", divisibility(cand.s, cand.t)),
            ("cube", cube_bounds(cand.s, cand.t, nP, nL)),
        ):
            trace.append((cand, name, res))
            ok = ok and res
        if ok:
            survivors.append(cand)
    return survivors, trace
