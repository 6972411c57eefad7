"""Slopes algorithm: direct minimal solutions of a*x = b*y + c*z, plus the
all-but-three enumeration wrapper for wider equations.

The three-unknown solver walks the staircase of minimal (y, z) points
directly: gcd arithmetic yields the extreme solutions and the first interior
point, and a Euclidean update of the slope deltas (dy, dz) generates the
rest with z strictly increasing.  Candidates are dominance-filtered at the
end, which also absorbs the degenerate seed cases.

For residuals a*x = b*y + c*z + v with v != 0 (they appear once the wrapper
enumerates the other unknowns) the generation is not covered by the direct
construction; a congruence scan solves b*y + c*z = -v (mod a) per z with the
smallest admissible y, which is slower but oracle-checkable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import (
    BasisList,
    Deadline,
    Equation,
    Solution,
    WeightVector,
    build_weights,
    ext_gcd,
    pareto_min,
)
from .lex import BoundKind, LexVariant, TailKind, lex_solve_weights


def multiplier(a: int, b: int) -> int:
    """Bezout coefficient of the first argument: m with m*a + k*b = gcd(a, b)."""
    _, ma, _ = ext_gcd(a, b)
    return ma


@dataclass(frozen=True)
class SlopesSetup:
    """Derived quantities the three-unknown generation starts from."""

    gb: int  # gcd(a, b)
    gc: int  # gcd(a, c)
    g_all: int  # gcd(a, b, c)
    ymax: int
    zmax: int
    dy: int
    dz: int


def slopes3_setup(a: int, b: int, c: int) -> SlopesSetup:
    gb = math.gcd(a, b)
    gc = math.gcd(a, c)
    g_all = math.gcd(gb, c)
    ymax = a // gb
    zmax = a // gc
    dz = gb // g_all
    dy = (c // g_all * multiplier(b, a)) % ymax
    return SlopesSetup(gb, gc, g_all, ymax, zmax, dy, dz)


def _exact_x(numerator: int, a: int) -> int:
    q, r = divmod(numerator, a)
    assert r == 0, f"slope point off the congruence lattice: {numerator} not divisible by {a}"
    return q


def slopes3_generation(a: int, b: int, c: int) -> tuple[list[Solution], list[Solution]]:
    """Raw output of the descent: (seed triples, descent triples in order).

    Descent triples come out with z strictly increasing and y strictly
    decreasing; the seeds carry the two axis extremes and the first interior
    point.  No minimality filtering happens here.
    """
    s = slopes3_setup(a, b, c)
    y = s.ymax - s.dy
    z = s.dz
    seeds = [
        (b // s.gb, s.ymax, 0),
        (c // s.gc, 0, s.zmax),
        (_exact_x(b * y + c * z, a), y, z),
    ]
    descent: list[Solution] = []
    dy, dz = s.dy, s.dz
    while dy > 0:
        while y > dy:
            y -= dy
            z += dz
            descent.append((_exact_x(b * y + c * z, a), y, z))
        f = dy // y
        dy -= f * y
        dz += f * z
    return seeds, descent


def slopes3(a: int, b: int, c: int) -> BasisList:
    """Minimal natural solutions of a*x = b*y + c*z, sorted."""
    if min(a, b, c) < 1:
        raise ValueError("coefficients must be >= 1")
    seeds, descent = slopes3_generation(a, b, c)
    return pareto_min(seeds + descent)


def solve3_general(
    a: int,
    b: int,
    c: int,
    v: int,
    *,
    x_cap: int | None = None,
    yz_cap: int | None = None,
) -> BasisList:
    """Minimal natural solutions of a*x = b*y + c*z + v by congruence scan.

    Iterates z, solves b*y = -v - c*z (mod a) for the smallest admissible y
    (larger congruent y only raise x, so they are dominated), and Pareto
    filters.  Unsolvable congruence classes contribute nothing.  With v = 0
    this reproduces ``slopes3``.  Optional caps restrict x and y+z, e.g. to
    the per-side budgets of an enclosing equation.
    """
    if min(a, b, c) < 1:
        raise ValueError("coefficients must be >= 1")
    # Beyond one full period of c*z mod a (shifted while x would go negative
    # for v < 0), every candidate is dominated by its counterpart one period
    # earlier.
    period = a // math.gcd(a, c)
    z_top = period + (-(v // c) if v < 0 else 0)
    if yz_cap is not None:
        z_top = min(z_top, yz_cap)

    g = math.gcd(b, a)
    step = a // g
    bg = (b // g) % step
    inv = ext_gcd(bg, step)[1] % step if step > 1 else 0

    candidates: list[Solution] = []
    for z in range(z_top + 1):
        rhs = -v - c * z
        if rhs % g:
            continue
        y = ((rhs // g) % step) * inv % step if step > 1 else 0
        if rhs > 0:
            # x >= 0 needs b*y >= rhs
            y_floor = -((-rhs) // b)
            if y < y_floor:
                y += -((y - y_floor) // step) * step
        if v == 0 and z == 0 and y == 0:
            y += step  # skip the all-zero vector
        if yz_cap is not None and y + z > yz_cap:
            continue
        x = _exact_x(b * y + c * z + v, a)
        if x_cap is not None and x > x_cap:
            continue
        candidates.append((x, y, z))
    return pareto_min(candidates)


@dataclass
class SlopesStats:
    prefixes: int = 0
    residuals_direct: int = 0
    residuals_scan: int = 0
    candidates: int = 0


def slopes_solve(
    eq: Equation,
    *,
    stats: SlopesStats | None = None,
    time_limit: float | None = None,
) -> BasisList:
    """Basis of an equation: enumerate all but three unknowns, solve the rest."""
    return slopes_solve_weights(
        build_weights(eq), stats=stats, time_limit=time_limit
    )


def slopes_solve_weights(
    w: WeightVector,
    *,
    stats: SlopesStats | None = None,
    time_limit: float | None = None,
) -> BasisList:
    if not w.has_both_signs:
        return []
    if len(w) < 3:
        return lex_solve_weights(
            w,
            LexVariant(BoundKind.LAMBERT, TailKind.LAST_ONE),
            time_limit=time_limit,
        )
    if len(w.negative_positions) < 2:
        # One unknown on the negative side: the defect-zero set is invariant
        # under negating all weights, which swaps the sides.
        mirrored = WeightVector(tuple(-wi for wi in w.w))
        return slopes_solve_weights(mirrored, stats=stats, time_limit=time_limit)

    stats = stats if stats is not None else SlopesStats()
    deadline = Deadline.maybe(time_limit)
    weights = w.w
    n = len(w)

    # The positive unknown with the largest coefficient plays x; the final
    # two negative positions play y and z.
    x_pos = max(w.positive_positions, key=lambda i: weights[i])
    y_pos, z_pos = w.negative_positions[-2], w.negative_positions[-1]
    a = weights[x_pos]
    b = -weights[y_pos]
    c = -weights[z_pos]
    enum_positions = [i for i in range(n) if i not in (x_pos, y_pos, z_pos)]
    k = len(enum_positions)

    # Suffix envelopes for pruning: the largest weight magnitude per sign
    # still placeable among the remaining enumerated positions or the tail.
    max_pos_from = [a] * (k + 1)
    max_neg_from = [max(b, c)] * (k + 1)
    for j in range(k - 1, -1, -1):
        wj = weights[enum_positions[j]]
        max_pos_from[j] = max(max_pos_from[j + 1], wj if wj > 0 else 0)
        max_neg_from[j] = max(max_neg_from[j + 1], -wj if wj < 0 else 0)

    direct_cache = slopes3(a, b, c)
    candidates: list[Solution] = []
    assigned = [0] * n

    def solve_tail(d: int, pos_budget: int, neg_budget: int) -> None:
        v = -d
        if v == 0:
            stats.residuals_direct += 1
            if any(assigned):
                # The prefix already balances on its own; the tail may stay
                # all-zero, which the three-unknown solver never emits.
                candidates.append(tuple(assigned))
                stats.candidates += 1
            triples = [
                t
                for t in direct_cache
                if t[0] <= pos_budget and t[1] + t[2] <= neg_budget
            ]
        else:
            stats.residuals_scan += 1
            triples = solve3_general(a, b, c, v, x_cap=pos_budget, yz_cap=neg_budget)
        for x, y, z in triples:
            full = list(assigned)
            full[x_pos] = x
            full[y_pos] = y
            full[z_pos] = z
            candidates.append(tuple(full))
        stats.candidates += len(triples)

    def walk(j: int, d: int, pos_budget: int, neg_budget: int) -> None:
        stats.prefixes += 1
        if deadline is not None and stats.prefixes % 512 == 0:
            deadline.check()
        if j == k:
            solve_tail(d, pos_budget, neg_budget)
            return
        pos = enum_positions[j]
        wj = weights[pos]
        cap = pos_budget if wj > 0 else neg_budget
        dv = d
        for value in range(cap + 1):
            if value:
                dv += wj
            assigned[pos] = value
            pb = pos_budget - value if wj > 0 else pos_budget
            nb = neg_budget - value if wj < 0 else neg_budget
            hi = pb * max_pos_from[j + 1]
            lo = -nb * max_neg_from[j + 1]
            if wj > 0 and dv + lo > 0:
                break
            if wj < 0 and dv + hi < 0:
                break
            if dv + lo > 0 or dv + hi < 0:
                continue
            walk(j + 1, dv, pb, nb)
        assigned[pos] = 0

    walk(0, 0, w.max_b, w.max_a)
    return pareto_min(candidates)
