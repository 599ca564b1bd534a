"""Exact arithmetic on finite unions of closed subintervals of [0, 1].

All endpoints are `fractions.Fraction`; no floats enter or leave this module.
The central object is :class:`IntervalSet`, kept in a canonical normal form
(sorted, pairwise disjoint, touching components merged, zero-length components
dropped) so that equality of sets is plain structural equality.

On top of the set algebra there are the two measure-theoretic gadgets the
experiments need: Bohr sets of a single frequency, and the union of Bohr sets
over a difference set, plus the ratio used in second-moment (Borel-Cantelli
type) lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "Interval",
    "IntervalSet",
    "bohr_set",
    "small_denominator_set",
    "borel_cantelli_ratio",
    "write_interval_set",
    "read_interval_set",
]

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(x: RationalLike) -> Fraction:
    """Coerce to Fraction, rejecting floats (exactness is the contract here)."""
    if isinstance(x, float):
        raise TypeError("interval endpoints must be exact rationals, not floats")
    return Fraction(x)


@dataclass(frozen=True, order=True)
class Interval:
    """A closed interval [lo, hi] with 0 <= lo <= hi <= 1."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        lo, hi = _frac(self.lo), _frac(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not (ZERO <= lo <= hi <= ONE):
            raise ValueError(f"not a valid subinterval of [0,1]: [{lo}, {hi}]")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x: RationalLike) -> bool:
        x = _frac(x)
        return self.lo <= x <= self.hi


class IntervalSet:
    """A finite union of closed subintervals of [0,1], in canonical form.

    Canonical form: components sorted by left endpoint, pairwise disjoint,
    with touching components merged and degenerate (single point) components
    dropped.  Dropping points keeps equality canonical and never changes the
    measure.
    """

    __slots__ = ("_ivals",)

    def __init__(self, intervals: Iterable[Interval] = ()) -> None:
        self._ivals: tuple[Interval, ...] = self._normalize(intervals)

    @staticmethod
    def _normalize(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
        ivals = sorted(intervals)
        out: list[Interval] = []
        for iv in ivals:
            if out and iv.lo <= out[-1].hi:
                # overlap or touch: merge into the previous component
                if iv.hi > out[-1].hi:
                    out[-1] = Interval(out[-1].lo, iv.hi)
            else:
                out.append(iv)
        return tuple(iv for iv in out if iv.length > 0)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[RationalLike, RationalLike]]) -> "IntervalSet":
        return cls(Interval(_frac(a), _frac(b)) for a, b in pairs)

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls((Interval(ZERO, ONE),))

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls()

    # -- container protocol ------------------------------------------------

    @property
    def intervals(self) -> tuple[Interval, ...]:
        return self._ivals

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._ivals)

    def __len__(self) -> int:
        return len(self._ivals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._ivals == other._ivals

    def __hash__(self) -> int:
        return hash(self._ivals)

    def __repr__(self) -> str:
        body = " u ".join(f"[{iv.lo}, {iv.hi}]" for iv in self._ivals)
        return f"IntervalSet({body or 'empty'})"

    def __contains__(self, x: RationalLike) -> bool:
        x = _frac(x)
        return any(x in iv for iv in self._ivals)

    # -- set algebra ---------------------------------------------------------

    @property
    def measure(self) -> Fraction:
        return sum((iv.length for iv in self._ivals), ZERO)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self._ivals + other._ivals)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        # Two-pointer sweep over the sorted component lists.
        out: list[Interval] = []
        a, b = self._ivals, other._ivals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo <= hi:
                # degenerate overlaps are produced here and dropped by
                # normalization; they carry no measure either way
                out.append(Interval(lo, hi))
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    def complement(self) -> "IntervalSet":
        """The closure of [0,1] minus this set (complement within [0,1])."""
        out: list[Interval] = []
        cursor = ZERO
        for iv in self._ivals:
            if iv.lo > cursor:
                out.append(Interval(cursor, iv.lo))
            cursor = iv.hi
        if cursor < ONE:
            out.append(Interval(cursor, ONE))
        return IntervalSet(out)

    __or__ = union
    __and__ = intersect


def bohr_set(d: int, delta: RationalLike) -> IntervalSet:
    """The set of alpha in [0,1] whose multiple d*alpha lies within delta
    of an integer (distance to the nearest integer at most delta).

    Requires d != 0 and 0 <= delta <= 1/2.  The result is the union of
    |d| + 1 closed intervals centred on the rationals k/|d| (clipped at the
    ends), and its measure is exactly min(1, 2*delta).
    """
    if d == 0:
        raise ValueError("frequency d must be nonzero")
    delta = _frac(delta)
    if not (ZERO <= delta <= Fraction(1, 2)):
        raise ValueError(f"delta must lie in [0, 1/2], got {delta}")
    q = abs(d)
    radius = delta / q
    pieces = []
    for k in range(q + 1):
        center = Fraction(k, q)
        pieces.append(Interval(max(ZERO, center - radius), min(ONE, center + radius)))
    return IntervalSet(pieces)


def small_denominator_set(b_set: Iterable[int], eps: RationalLike) -> IntervalSet:
    """Union of Bohr sets over all nonzero pairwise differences of ``b_set``,
    each with radius eps / #(B - B).

    The measure of the result is strictly less than 2*eps: the difference set
    contains 0, so there are fewer than #(B - B) nonzero frequencies, each
    contributing a Bohr set of measure 2*eps/#(B - B).
    """
    b = set(b_set)
    if len(b) < 2:
        raise ValueError("need at least two integers to form nonzero differences")
    eps = _frac(eps)
    if not (ZERO < eps < ONE):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    diffs = {x - y for x in b for y in b}
    radius = eps / len(diffs)
    # d and -d give the same Bohr set, so only the positive representatives
    # are materialized; the union is unchanged.
    out = IntervalSet.empty()
    for d in sorted({abs(d) for d in diffs if d != 0}):
        out = out.union(bohr_set(d, radius))
    return out


def borel_cantelli_ratio(sets: Sequence[IntervalSet]) -> Fraction:
    """Second-moment ratio (sum of measures)^2 / (sum of pairwise
    intersection measures over all ordered pairs, including m = n).

    This is the quantity whose limsup lower-bounds the measure of the set of
    points lying in infinitely many of the given sets.  Requires at least one
    set of positive measure (otherwise the ratio is 0/0).
    """
    sets = list(sets)
    total = sum((s.measure for s in sets), ZERO)
    if total == 0:
        raise ValueError("all sets have measure zero; ratio undefined")
    denom = ZERO
    for i, a in enumerate(sets):
        denom += a.measure  # the diagonal term lambda(A_i ∩ A_i)
        for b_ in sets[i + 1 :]:
            denom += 2 * a.intersect(b_).measure
    return total * total / denom


# -- serialization -----------------------------------------------------------
#
# One interval per line, two endpoints in lowest terms as "num/den num/den".
# Lines starting with '#' (and blank lines) are ignored on read.


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def interval_set_to_lines(s: IntervalSet) -> list[str]:
    return [f"{_fmt(iv.lo)} {_fmt(iv.hi)}" for iv in s]


def interval_set_from_lines(lines: Iterable[str]) -> IntervalSet:
    pieces = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two endpoints, got {line!r}")
        try:
            lo, hi = Fraction(parts[0]), Fraction(parts[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: bad rational in {line!r}: {exc}") from None
        pieces.append(Interval(lo, hi))
    return IntervalSet(pieces)


def write_interval_set(path, s: IntervalSet, comment: str | None = None) -> None:
    with open(path, "w", encoding="ascii") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        for line in interval_set_to_lines(s):
            fh.write(line + "\n")


def read_interval_set(path) -> IntervalSet:
    with open(path, "r", encoding="ascii") as fh:
        return interval_set_from_lines(fh)
