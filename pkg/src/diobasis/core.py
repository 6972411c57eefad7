"""Core types and shared machinery for the Diophantine basis solvers.

An equation has positive integer coefficients on both sides over disjoint
unknowns.  Internally every solver works on the signed weight form: lhs
coefficients stay positive, rhs coefficients are negated, and a candidate
vector is a solution exactly when its defect (weighted sum) is zero.  The
basis of an equation is the set of all minimal nonzero natural solutions
under componentwise dominance.
"""

from __future__ import annotations

import bisect
import itertools
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

Solution = tuple[int, ...]
# A basis is a list of pairwise-incomparable nonzero solutions, kept sorted
# lexicographically: dominance implies lex order, so a sorted basis lets
# dominance scans stop early, and sorted output is diff-stable.
BasisList = list[Solution]

COEFFICIENT_LIMIT = 2**20
DEFAULT_ORACLE_CAP = 10**8


class DiobasisError(Exception):
    """Base class for all package errors."""


class EquationFormatError(DiobasisError):
    """Malformed equation text; ``position`` is the 1-based offending token."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class CoefficientRangeError(DiobasisError):
    """Coefficient outside [1, COEFFICIENT_LIMIT]."""


class OracleBoxError(DiobasisError):
    """Oracle search box exceeds the configured cap; carries the box size."""

    def __init__(self, box_size: int, cap: int):
        super().__init__(
            f"oracle search box has {box_size} candidate vectors, over the cap of {cap}"
        )
        self.box_size = box_size
        self.cap = cap


class ResourceLimitError(DiobasisError):
    """A solver exceeded a configured resource guard (e.g. frontier size)."""


class TimeLimitError(DiobasisError):
    """A solver exceeded its cooperative time limit."""


class Deadline:
    """Cooperative wall-clock limit checked at safe points inside solvers."""

    __slots__ = ("expires_at",)

    def __init__(self, seconds: float):
        self.expires_at = time.perf_counter() + seconds

    def check(self) -> None:
        if time.perf_counter() > self.expires_at:
            raise TimeLimitError("solver exceeded its time limit")

    @staticmethod
    def maybe(seconds: float | None) -> "Deadline | None":
        return None if seconds is None else Deadline(seconds)


def _validate_side(name: str, coeffs: Sequence[int]) -> None:
    if len(coeffs) == 0:
        raise CoefficientRangeError(f"{name} side must have at least one coefficient")
    for c in coeffs:
        if not isinstance(c, int) or isinstance(c, bool):
            raise CoefficientRangeError(f"{name} coefficient {c!r} is not an integer")
        if c < 1 or c > COEFFICIENT_LIMIT:
            raise CoefficientRangeError(
                f"{name} coefficient {c} outside [1, {COEFFICIENT_LIMIT}]"
            )


@dataclass(frozen=True)
class Equation:
    """a_1 x_1 + ... + a_l x_l = b_1 y_1 + ... + b_k y_k over naturals.

    The two sides use disjoint unknowns; the first ``len(lhs)`` solution
    coordinates belong to the lhs block.
    """

    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        _validate_side("lhs", self.lhs)
        _validate_side("rhs", self.rhs)

    @property
    def n(self) -> int:
        return len(self.lhs) + len(self.rhs)

    def weights(self) -> "WeightVector":
        return build_weights(self)

    def text(self) -> str:
        """Render in the one-line text format, e.g. ``"2 3 = 1 4 5"``."""
        return "{} = {}".format(
            " ".join(map(str, self.lhs)), " ".join(map(str, self.rhs))
        )


@dataclass(frozen=True)
class WeightVector:
    """Signed weight form of an equation: positive entries are lhs
    coefficients, negative entries are negated rhs coefficients.  Zero
    entries are not allowed here; route them through
    :func:`normalize_zero_weights` first.
    """

    w: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(self.w))
        if any(wi == 0 for wi in self.w):
            raise CoefficientRangeError("weight vector contains a zero entry")

    def __len__(self) -> int:
        return len(self.w)

    @cached_property
    def max_a(self) -> int:
        """Largest positive weight (0 when the positive side is empty)."""
        return max((wi for wi in self.w if wi > 0), default=0)

    @cached_property
    def max_b(self) -> int:
        """Largest magnitude among negative weights (0 when absent)."""
        return max((-wi for wi in self.w if wi < 0), default=0)

    @cached_property
    def positive_positions(self) -> tuple[int, ...]:
        return tuple(i for i, wi in enumerate(self.w) if wi > 0)

    @cached_property
    def negative_positions(self) -> tuple[int, ...]:
        return tuple(i for i, wi in enumerate(self.w) if wi < 0)

    @property
    def has_both_signs(self) -> bool:
        return bool(self.positive_positions) and bool(self.negative_positions)


@dataclass(frozen=True)
class Bounds:
    """Per-coordinate and per-side-sum caps satisfied by every minimal solution.

    Any lhs unknown of a minimal solution is at most ``huet_lhs`` and any rhs
    unknown at most ``huet_rhs``; the stronger per-side sums are capped by the
    ``lambert_*`` fields.  The sum caps imply the per-coordinate caps.
    """

    huet_lhs: int
    huet_rhs: int
    lambert_lhs_sum: int
    lambert_rhs_sum: int


def build_weights(eq: Equation) -> WeightVector:
    """Weight vector of an equation: lhs coefficients, then negated rhs."""
    return WeightVector(tuple(eq.lhs) + tuple(-b for b in eq.rhs))


def bounds(eq: Equation) -> Bounds:
    mb = max(eq.rhs)
    ma = max(eq.lhs)
    return Bounds(huet_lhs=mb, huet_rhs=ma, lambert_lhs_sum=mb, lambert_rhs_sum=ma)


def defect(w: WeightVector, x: Sequence[int]) -> int:
    """Weighted sum of a candidate vector; zero means solution."""
    if len(w.w) != len(x):
        raise ValueError(f"length mismatch: {len(w.w)} weights, {len(x)} coordinates")
    return sum(wi * xi for wi, xi in zip(w.w, x))


def dominates(s: Sequence[int], t: Sequence[int]) -> bool:
    """Strict componentwise dominance: s <= t everywhere and s != t."""
    if len(s) != len(t):
        raise ValueError("vectors must have equal length")
    strict = False
    for si, ti in zip(s, t):
        if si > ti:
            return False
        if si < ti:
            strict = True
    return strict


def dominated_or_equal(s: Sequence[int], t: Sequence[int]) -> bool:
    """True when s <= t componentwise (equality allowed)."""
    return all(si <= ti for si, ti in zip(s, t))


@dataclass
class InsertStats:
    """Instrumentation for basis insertion; solvers expose it so tests can
    assert structural invariants (e.g. lex enumeration never evicts)."""

    inserted: int = 0
    rejected: int = 0
    evicted: int = 0


def insert_minimal(
    basis: BasisList, sol: Solution, stats: InsertStats | None = None
) -> BasisList:
    """Insert ``sol`` into a lex-sorted basis, preserving minimality.

    ``sol`` is rejected when a stored solution dominates or equals it; any
    stored solutions it dominates are evicted.  Returns ``basis`` (mutated in
    place).  Only lex-smaller vectors can dominate, so the rejection scan
    stops at the insertion point and the eviction scan starts there.
    """
    i = bisect.bisect_left(basis, sol)
    if i < len(basis) and basis[i] == sol:
        if stats:
            stats.rejected += 1
        return basis
    for b in itertools.islice(basis, i):
        if dominated_or_equal(b, sol):
            if stats:
                stats.rejected += 1
            return basis
    tail = [b for b in itertools.islice(basis, i, len(basis)) if not dominated_or_equal(sol, b)]
    if stats:
        stats.evicted += len(basis) - i - len(tail)
        stats.inserted += 1
    basis[i:] = tail
    basis.insert(i, sol)
    return basis


def pareto_min(vectors: Iterable[Sequence[int]]) -> BasisList:
    """Minimal elements of a vector set under componentwise dominance.

    Candidates are deduplicated and processed in ascending coordinate-sum
    order, so kept vectors can never be evicted later.
    """
    uniq = sorted({tuple(v) for v in vectors}, key=lambda v: (sum(v), v))
    if len(uniq) > 512:
        return _pareto_min_numpy(uniq)
    kept: BasisList = []
    for v in uniq:
        if not any(dominated_or_equal(k, v) for k in kept):
            kept.append(v)
    kept.sort()
    return kept


def _pareto_min_numpy(uniq: list[Solution]) -> BasisList:
    arr = np.asarray(uniq, dtype=np.int64)
    m, n = arr.shape
    kept = np.empty((m, n), dtype=np.int64)
    count = 0
    for row in range(m):
        v = arr[row]
        if count and bool((kept[:count] <= v).all(axis=1).any()):
            continue
        kept[count] = v
        count += 1
    return sorted(tuple(r) for r in kept[:count].tolist())


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, ma, mb) with ma*a + mb*b = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class WeightNormalization:
    """Result of stripping zero weights from a raw weight list.

    A zero weight means the unknown is unconstrained in isolation, so its
    unit vector is itself a basis member and the position drops out of the
    search.  ``expand`` maps residual-space solutions back to full length.
    """

    original_length: int
    kept_positions: tuple[int, ...]
    residual: WeightVector | None
    unit_solutions: tuple[Solution, ...]

    def expand(self, x: Sequence[int]) -> Solution:
        full = [0] * self.original_length
        for pos, value in zip(self.kept_positions, x):
            full[pos] = value
        return tuple(full)


def normalize_zero_weights(weights: Sequence[int]) -> WeightNormalization:
    """Split a raw weight list into unit basis members (zero positions) and a
    zero-free residual weight vector.  With no zeros this is a pass-through."""
    weights = tuple(weights)
    n = len(weights)
    zero_positions = [i for i, wi in enumerate(weights) if wi == 0]
    kept = tuple(i for i, wi in enumerate(weights) if wi != 0)
    units = tuple(
        tuple(1 if j == i else 0 for j in range(n)) for i in zero_positions
    )
    residual = WeightVector(tuple(weights[i] for i in kept)) if kept else None
    return WeightNormalization(
        original_length=n,
        kept_positions=kept,
        residual=residual,
        unit_solutions=units,
    )


def shared_weights(lhs: Sequence[int], rhs: Sequence[int]) -> list[int]:
    """Weights for the shared-unknown form, where the same unknown carries a
    coefficient on each side: w_i = lhs_i - rhs_i (zeros possible)."""
    if len(lhs) != len(rhs):
        raise ValueError("shared-unknown form needs equally long sides")
    return [a - b for a, b in zip(lhs, rhs)]


def solve_normalized(
    weights: Sequence[int],
    solver: Callable[[WeightVector], BasisList],
) -> BasisList:
    """Solve a raw weight list (zeros allowed) with ``solver`` and re-embed.

    Unit members from zero positions are merged with the residual solutions;
    a residual with weights of only one sign has no nonzero solutions.
    """
    norm = normalize_zero_weights(weights)
    out: BasisList = list(norm.unit_solutions)
    if norm.residual is not None and norm.residual.has_both_signs:
        for sol in solver(norm.residual):
            out.append(norm.expand(sol))
    return sorted(out)


def oracle_box_size(eq: Equation) -> int:
    """Number of candidate vectors in the per-coordinate search box."""
    b = bounds(eq)
    return (b.huet_lhs + 1) ** len(eq.lhs) * (b.huet_rhs + 1) ** len(eq.rhs)


def oracle_basis(eq: Equation, cap: int = DEFAULT_ORACLE_CAP) -> BasisList:
    """Brute-force reference basis, independent of every solver.

    Exhausts the per-coordinate box (lhs unknowns up to max rhs coefficient,
    rhs unknowns up to max lhs coefficient), keeps the zero-defect vectors,
    and dominance-filters them.  The two sides are enumerated separately and
    matched on equal weighted sums, which considers exactly the same solution
    set as a flat product scan of the box.
    """
    box = oracle_box_size(eq)
    if box > cap:
        raise OracleBoxError(box, cap)
    b = bounds(eq)
    lhs_by_sum = _side_sums(eq.lhs, b.huet_lhs)
    rhs_by_sum = _side_sums(eq.rhs, b.huet_rhs)
    candidates: list[Solution] = []
    for s, left_vecs in lhs_by_sum.items():
        if s == 0:
            continue  # coefficient >= 1 forces the all-zero side vector
        right_vecs = rhs_by_sum.get(s)
        if not right_vecs:
            continue
        for lv in left_vecs:
            for rv in right_vecs:
                candidates.append(lv + rv)
    return pareto_min(candidates)


def _side_sums(coeffs: Sequence[int], bound: int) -> dict[int, list[Solution]]:
    by_sum: dict[int, list[Solution]] = {}
    for vec in itertools.product(range(bound + 1), repeat=len(coeffs)):
        s = sum(c * x for c, x in zip(coeffs, vec))
        by_sum.setdefault(s, []).append(vec)
    return by_sum


def parse_equation(text: str) -> Equation:
    """Parse the one-line text format ``"a1 a2 ... = b1 b2 ..."``.

    Raises :class:`EquationFormatError` naming the 1-based token position of
    the first problem.
    """
    tokens = text.split()
    if not tokens:
        raise EquationFormatError("empty equation", position=1)
    try:
        eq_index = tokens.index("=")
    except ValueError:
        raise EquationFormatError("missing '=' separator", position=len(tokens)) from None
    if "=" in tokens[eq_index + 1 :]:
        second = tokens.index("=", eq_index + 1)
        raise EquationFormatError("more than one '='", position=second + 1)
    if eq_index == 0:
        raise EquationFormatError("no coefficients before '='", position=1)
    if eq_index == len(tokens) - 1:
        raise EquationFormatError("no coefficients after '='", position=len(tokens))

    def to_coeff(tok: str, pos: int) -> int:
        try:
            value = int(tok)
        except ValueError:
            raise EquationFormatError(
                f"token {pos}: {tok!r} is not an integer", position=pos
            ) from None
        if value < 1:
            raise EquationFormatError(
                f"token {pos}: coefficient must be >= 1, got {value}", position=pos
            )
        if value > COEFFICIENT_LIMIT:
            raise EquationFormatError(
                f"token {pos}: coefficient {value} over limit {COEFFICIENT_LIMIT}",
                position=pos,
            )
        return value

    lhs = tuple(to_coeff(t, i + 1) for i, t in enumerate(tokens[:eq_index]))
    rhs = tuple(
        to_coeff(t, eq_index + 2 + i) for i, t in enumerate(tokens[eq_index + 1 :])
    )
    return Equation(lhs, rhs)


def format_basis(basis: Iterable[Solution]) -> str:
    """One solution per line, coordinates space-separated, lex order."""
    return "\n".join(" ".join(map(str, sol)) for sol in sorted(basis))
