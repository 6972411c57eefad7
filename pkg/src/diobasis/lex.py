"""Lexicographic enumeration solver in four variants.

The enumeration backtracks over unknowns in input order (lhs block, then
rhs block).  Two bound flavors prune prefixes: per-coordinate caps, or the
stronger per-side running-sum caps.  Two tail flavors decide where the
enumeration stops: the last unknown is forced by divisibility, or the last
two are solved as a bounded two-variable linear equation via the extended
Euclidean parametrization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .core import (
    BasisList,
    Deadline,
    Equation,
    InsertStats,
    Solution,
    WeightVector,
    build_weights,
    ext_gcd,
    insert_minimal,
)


class BoundKind(str, Enum):
    HUET = "huet"
    LAMBERT = "lambert"


class TailKind(str, Enum):
    LAST_ONE = "one"
    LAST_TWO = "two"


@dataclass(frozen=True)
class LexVariant:
    bound: BoundKind = BoundKind.LAMBERT
    tail: TailKind = TailKind.LAST_ONE


ALL_VARIANTS: tuple[LexVariant, ...] = tuple(
    LexVariant(b, t) for b in BoundKind for t in TailKind
)

DEFAULT_VARIANT = LexVariant()


@dataclass
class LexStats:
    """Search instrumentation: prefix nodes visited and insertion behavior.

    Solutions come out in lexicographic order, so a later emission can never
    dominate a stored one; ``insert.evicted`` staying at zero is an invariant
    tests assert.
    """

    prefixes: int = 0
    emissions: int = 0
    insert: InsertStats = field(default_factory=InsertStats)


def lex_solve(
    eq: Equation,
    variant: LexVariant = DEFAULT_VARIANT,
    *,
    stats: LexStats | None = None,
    time_limit: float | None = None,
) -> BasisList:
    """Basis of an equation by bounded lexicographic enumeration."""
    return lex_solve_weights(
        build_weights(eq), variant, stats=stats, time_limit=time_limit
    )


def lex_solve_weights(
    w: WeightVector,
    variant: LexVariant = DEFAULT_VARIANT,
    *,
    stats: LexStats | None = None,
    time_limit: float | None = None,
) -> BasisList:
    if not w.has_both_signs:
        return []
    stats = stats if stats is not None else LexStats()
    deadline = Deadline.maybe(time_limit)

    weights = w.w
    n = len(weights)
    max_a, max_b = w.max_a, w.max_b
    lambert = variant.bound is BoundKind.LAMBERT
    tail_count = 1 if variant.tail is TailKind.LAST_ONE else 2
    tail_start = n - tail_count

    # Per-coordinate caps; positive-weight positions are bounded by the
    # largest opposing coefficient and vice versa.
    huet_cap = [max_b if wi > 0 else max_a for wi in weights]

    # Suffix feasibility envelopes for the per-coordinate variant: the most
    # the remaining positions (p..n-1) can add to / subtract from the defect.
    huet_hi = [0] * (n + 1)
    huet_lo = [0] * (n + 1)
    for p in range(n - 1, -1, -1):
        wi = weights[p]
        huet_hi[p] = huet_hi[p + 1] + (wi * max_b if wi > 0 else 0)
        huet_lo[p] = huet_lo[p + 1] + (wi * max_a if wi < 0 else 0)
    # Largest weight magnitude per sign over the suffix, for the budgeted
    # variant's envelopes (budget * largest weight still placeable).
    max_pos_from = [0] * (n + 1)
    max_neg_from = [0] * (n + 1)
    for p in range(n - 1, -1, -1):
        wi = weights[p]
        max_pos_from[p] = max(max_pos_from[p + 1], wi if wi > 0 else 0)
        max_neg_from[p] = max(max_neg_from[p + 1], -wi if wi < 0 else 0)

    basis: BasisList = []
    prefix = [0] * n

    def emit(vector: Solution) -> None:
        stats.emissions += 1
        insert_minimal(basis, vector, stats.insert)

    def finish_one(d: int, pos_budget: int, neg_budget: int, nonzero: bool) -> None:
        t = n - 1
        wt = weights[t]
        q, r = divmod(-d, wt)
        if r or q < 0:
            return
        if not nonzero and q == 0:
            return
        if lambert:
            cap = pos_budget if wt > 0 else neg_budget
        else:
            cap = huet_cap[t]
        if q > cap:
            return
        emit(tuple(prefix[:t]) + (q,))

    def finish_two(d: int, pos_budget: int, neg_budget: int, nonzero: bool) -> None:
        t0, t1 = n - 2, n - 1
        w0, w1 = weights[t0], weights[t1]
        if lambert:
            cap0 = pos_budget if w0 > 0 else neg_budget
            cap1 = pos_budget if w1 > 0 else neg_budget
            sum_cap = cap0 if (w0 > 0) == (w1 > 0) else None
        else:
            cap0, cap1, sum_cap = huet_cap[t0], huet_cap[t1], None
        for x0, x1 in solve_two_var(w0, w1, -d, cap0, cap1, sum_cap=sum_cap):
            if not nonzero and x0 == 0 and x1 == 0:
                continue
            emit(tuple(prefix[:t0]) + (x0, x1))

    finish = finish_one if tail_count == 1 else finish_two

    def walk(p: int, d: int, pos_budget: int, neg_budget: int, nonzero: bool) -> None:
        stats.prefixes += 1
        if deadline is not None and stats.prefixes % 1024 == 0:
            deadline.check()
        if p == tail_start:
            finish(d, pos_budget, neg_budget, nonzero)
            return
        wi = weights[p]
        if lambert:
            cap = pos_budget if wi > 0 else neg_budget
        else:
            cap = huet_cap[p]
        dv = d
        for v in range(cap + 1):
            if v:
                dv += wi
                prefix[p] = v
            else:
                prefix[p] = 0
            # Remaining positions can shift the defect by at most [lo, hi];
            # once 0 falls outside, larger v only push further out.
            if lambert:
                pb = pos_budget - v if wi > 0 else pos_budget
                nb = neg_budget - v if wi < 0 else neg_budget
                hi = pb * max_pos_from[p + 1]
                lo = -nb * max_neg_from[p + 1]
            else:
                pb, nb = pos_budget, neg_budget
                hi = huet_hi[p + 1]
                lo = huet_lo[p + 1]
            if wi > 0 and dv + lo > 0:
                break
            if wi < 0 and dv + hi < 0:
                break
            if dv + lo > 0 or dv + hi < 0:
                continue
            walk(p + 1, dv, pb, nb, nonzero or v > 0)
        prefix[p] = 0

    walk(0, 0, max_b, max_a, False)
    return basis


def tail_solve_one(
    w: WeightVector,
    prefix: Sequence[int],
    variant: LexVariant = DEFAULT_VARIANT,
) -> Solution | None:
    """Complete a prefix fixing all but the last position, or None.

    The last coordinate must consume the prefix defect exactly: it is the
    quotient of the residual by the final weight, accepted only when the
    division is exact, nonnegative, within the variant's bound, and the
    completed vector is not all-zero.
    """
    n = len(w)
    if len(prefix) != n - 1:
        raise ValueError(f"prefix must fix {n - 1} of {n} positions")
    d = sum(wi * xi for wi, xi in zip(w.w, prefix))
    q, r = divmod(-d, w.w[-1])
    if r or q < 0:
        return None
    cap = _tail_cap(w, prefix, n - 1, variant)
    if q > cap:
        return None
    full = tuple(prefix) + (q,)
    if not any(full):
        return None
    return full


def tail_solve_two(
    w: WeightVector,
    prefix: Sequence[int],
    variant: LexVariant = DEFAULT_VARIANT,
) -> list[Solution]:
    """All completions of a prefix fixing all but the last two positions.

    The residual is a two-variable linear equation over naturals, solved by
    extended-gcd parametrization restricted to the variant's bounds.
    """
    n = len(w)
    if len(prefix) != n - 2:
        raise ValueError(f"prefix must fix {n - 2} of {n} positions")
    d = sum(wi * xi for wi, xi in zip(w.w, prefix))
    w0, w1 = w.w[-2], w.w[-1]
    cap0 = _tail_cap(w, prefix, n - 2, variant)
    cap1 = _tail_cap(w, prefix, n - 1, variant)
    sum_cap = cap0 if (w0 > 0) == (w1 > 0) and variant.bound is BoundKind.LAMBERT else None
    out = []
    for x0, x1 in solve_two_var(w0, w1, -d, cap0, cap1, sum_cap=sum_cap):
        full = tuple(prefix) + (x0, x1)
        if any(full):
            out.append(full)
    return out


def _tail_cap(
    w: WeightVector, prefix: Sequence[int], position: int, variant: LexVariant
) -> int:
    positive = w.w[position] > 0
    if variant.bound is BoundKind.HUET:
        return w.max_b if positive else w.max_a
    used = sum(
        x for x, wi in zip(prefix, w.w) if (wi > 0) == positive
    )
    budget = (w.max_b if positive else w.max_a) - used
    return max(budget, 0)


def solve_two_var(
    s: int,
    t: int,
    c: int,
    x_cap: int,
    y_cap: int,
    *,
    sum_cap: int | None = None,
) -> list[tuple[int, int]]:
    """Natural solutions of s*x + t*y = c with x <= x_cap, y <= y_cap.

    s and t are nonzero integers of any sign.  The x values form an
    arithmetic progression with step |t|/gcd; the admissible stretch of the
    progression is computed from the y bounds by integer division, so the
    cost is proportional to the number of solutions, not the box size.
    """
    if s == 0 or t == 0:
        raise ValueError("coefficients must be nonzero")
    if x_cap < 0 or y_cap < 0:
        return []
    g = math.gcd(abs(s), abs(t))
    if c % g:
        return []
    m = abs(t) // g
    if m == 1:
        x0 = 0
    else:
        sg = (s // g) % m
        _, inv, _ = ext_gcd(sg, m)
        x0 = ((c // g) % m) * (inv % m) % m

    # Translate 0 <= y <= y_cap into bounds on s*x, then on x.
    if t > 0:
        lo_sx, hi_sx = c - t * y_cap, c
    else:
        lo_sx, hi_sx = c, c - t * y_cap
    if s > 0:
        x_lo = -((-lo_sx) // s)
        x_hi = hi_sx // s
    else:
        x_lo = -((-hi_sx) // s)
        x_hi = lo_sx // s
    x_lo = max(x_lo, 0)
    x_hi = min(x_hi, x_cap)
    if x_lo > x_hi:
        return []
    x = x_lo + (x0 - x_lo) % m
    out = []
    while x <= x_hi:
        y = (c - s * x) // t
        if sum_cap is None or x + y <= sum_cap:
            out.append((x, y))
        x += m
    return out
