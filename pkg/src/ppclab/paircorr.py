"""Pair correlation statistics of dilated integer sequences, exactly.

For a sequence (a_n), a dilation alpha and a window parameter s, the statistic
counts ordered pairs i != j among the first N indices whose dilated points
alpha*a_i and alpha*a_j lie within s/N of each other on the circle, scaled by
1/N.  For Poissonian behaviour the statistic tends to 2s; the experiments
here chase dilations where it diverges instead.

Exactness discipline: a rational alpha = p/q turns every fractional part into
an integer residue (p * a mod q) / q, so the closed-threshold comparison
"circle distance <= s/N" is a pure integer comparison and the statistic is an
exact fraction.  A fixed-point mode exists for speed with certified error
bounds; comparisons that fall inside its guard window raise instead of
guessing.

Three routes compute the same number and are kept independent: a sorted
two-pointer sweep (production), the literal quadratic loop (oracle), and a
sum over representation counts of the difference set (connects the statistic
to additive energy).
"""

from __future__ import annotations

import math
import random
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .growth import GrowthFunction, ThetaFunction, psi
from .energy import rep_counts
from .sequences import BlockSequence, SequenceLike, as_elements, truncate

__all__ = [
    "Alpha",
    "PrecisionError",
    "frac_mult",
    "pair_correlation",
    "pair_correlation_naive",
    "pair_correlation_via_reps",
    "RegularSystemParams",
    "exceptional_alpha_candidates",
    "rank_of_denominator",
    "perturbed_alpha",
    "targeting_eta",
    "TrajectoryPoint",
    "Trajectory",
    "divergence_probe",
    "MonteCarloRow",
    "MonteCarloResult",
    "monte_carlo_ppc",
    "random_prime_alpha",
    "is_probable_prime",
]

SLike = Union[int, float, str, Fraction]


class PrecisionError(Exception):
    """A fixed-point comparison could not be certified; use rational mode."""


@dataclass(frozen=True)
class Alpha:
    """A dilation factor in [0, 1), either exact rational or fixed point.

    rational:    value = num / den, in lowest terms, 0 <= num < den
    fixed point: mantissa / 2**bits approximates a real alpha with error
                 below 2**-bits; ``guard`` bits of the error budget are
                 reserved so products with integers stay certified
    """

    mode: str
    num: int = 0
    den: int = 1
    mantissa: int = 0
    bits: int = 0
    guard: int = 64

    @classmethod
    def rational(cls, num: SLike, den: int | None = None) -> "Alpha":
        frac = Fraction(num, den) if den is not None else Fraction(num)
        frac = frac - (frac.numerator // frac.denominator)  # reduce mod 1
        return cls(mode="rational", num=frac.numerator, den=frac.denominator)

    @classmethod
    def fixed(cls, mantissa: int, bits: int, guard: int = 64) -> "Alpha":
        if bits <= 0 or not (0 <= mantissa < (1 << bits)):
            raise ValueError("mantissa must fit the stated width")
        if not (0 < guard < bits):
            raise ValueError("guard must lie strictly between 0 and bits")
        return cls(mode="fixed", mantissa=mantissa, bits=bits, guard=guard)

    @property
    def value(self) -> Fraction:
        if self.mode == "rational":
            return Fraction(self.num, self.den)
        return Fraction(self.mantissa, 1 << self.bits)

    @property
    def denominator(self) -> int:
        return self.den if self.mode == "rational" else 1 << self.bits

    def label(self) -> str:
        if self.mode == "rational":
            return f"{self.num}/{self.den}"
        return f"fixed:{self.mantissa}:{self.bits}:{self.guard}"

    @classmethod
    def parse(cls, text: str) -> "Alpha":
        """Parse '3/7', '0.25' (exact decimal), or 'fixed:mantissa:bits[:guard]'."""
        text = text.strip()
        if text.startswith("fixed:"):
            parts = text.split(":")
            if len(parts) not in (3, 4):
                raise ValueError(f"bad fixed-point alpha {text!r}")
            mantissa, bits = int(parts[1]), int(parts[2])
            guard = int(parts[3]) if len(parts) == 4 else 64
            return cls.fixed(mantissa, bits, guard)
        return cls.rational(Fraction(text))


def _fixed_width_check(alpha: Alpha, a: int) -> None:
    need = a.bit_length() + alpha.guard
    if need > alpha.bits:
        raise PrecisionError(
            f"multiplier needs {need} mantissa bits (value bits + guard) "
            f"but alpha carries {alpha.bits}; use rational mode"
        )


def frac_mult(alpha: Alpha, a: int) -> Fraction:
    """Fractional part of alpha * a.

    Rational mode is exact: (num * a mod den) / den, reducing a mod den up
    front so the full product is never materialized.  Fixed-point mode is the
    same computation with denominator 2**bits and a certified error below
    2**-guard, enforced via the width precondition.
    """
    a = int(a)
    if alpha.mode == "rational":
        q = alpha.den
        return Fraction((alpha.num * (a % q)) % q, q)
    _fixed_width_check(alpha, abs(a))
    q = 1 << alpha.bits
    return Fraction((alpha.mantissa * (a % q)) % q, q)


def _residues(alpha: Alpha, elements: Sequence[int]) -> tuple[list[int], int]:
    if alpha.mode == "rational":
        q, p = alpha.den, alpha.num
        return [(p * (x % q)) % q for x in elements], q
    for x in elements:
        _fixed_width_check(alpha, abs(int(x)))
    q = 1 << alpha.bits
    v = alpha.mantissa
    return [(v * (x % q)) % q for x in elements], q


def _count_within(sorted_res: list[int], q: int, limit: int) -> int:
    """Unordered pairs at circular distance <= limit, via a doubled-array
    two-pointer sweep.  Requires limit < q/2 so each pair is seen once."""
    n = len(sorted_res)
    if limit < 0:
        return 0
    ext = sorted_res + [x + q for x in sorted_res]
    count = 0
    j = 1
    for i in range(n):
        if j < i + 1:
            j = i + 1
        bound = sorted_res[i] + limit
        while j < i + n and ext[j] <= bound:
            j += 1
        count += j - i - 1
    return count


def _prepare(seq: SequenceLike, n: int, s: SLike) -> tuple[Sequence[int], Fraction]:
    s = Fraction(s)
    if s < 0:
        raise ValueError("window parameter s must be nonnegative")
    if n < 1:
        raise ValueError("need at least one point")
    return truncate(seq, n), s


def pair_correlation(seq: SequenceLike, alpha: Alpha, n: int, s: SLike) -> Fraction:
    """The pair correlation statistic at scale N = n, exactly.

    Counts ordered index pairs i != j with circle distance at most s/n
    between the dilated points (closed threshold), scaled by 1/n.  Runs in
    O(n log n) via sorting; in fixed-point mode a comparison landing inside
    the guard window raises :class:`PrecisionError`.
    """
    elements, s = _prepare(seq, n, s)
    if 2 * s >= n:  # the window covers the whole circle
        return Fraction(n - 1)
    res, q = _residues(alpha, elements)
    res.sort()
    # threshold in residue units: distance/q <= s/n  <=>  distance <= q*s/n
    t_num, t_den = q * s.numerator, s.denominator * n
    limit = t_num // t_den
    if alpha.mode == "rational":
        return Fraction(2 * _count_within(res, q, limit), n)
    # fixed point: residues carry up to 2**(bits-guard) units of error each,
    # so distances are uncertain within a window of twice that
    window = 1 << (alpha.bits - alpha.guard + 1)
    low = (t_num - window * t_den) // t_den
    high = (t_num + window * t_den) // t_den
    if 2 * high >= q:
        raise PrecisionError("guard window reaches half the circle; use rational mode")
    c_low = _count_within(res, q, low)
    c_high = _count_within(res, q, high)
    if c_low != c_high:
        raise PrecisionError(
            f"{c_high - c_low} pair(s) within the precision guard of the "
            "threshold; use rational mode"
        )
    return Fraction(2 * c_low, n)


def pair_correlation_naive(seq: SequenceLike, alpha: Alpha, n: int, s: SLike) -> Fraction:
    """Oracle: the literal quadratic count (rational alpha only)."""
    if alpha.mode != "rational":
        raise ValueError("the oracle route is defined for rational alpha only")
    elements, s = _prepare(seq, n, s)
    res, q = _residues(alpha, elements)
    count = 0
    for i in range(n):
        ri = res[i]
        for j in range(i + 1, n):
            delta = ri - res[j]
            if delta < 0:
                delta = -delta
            dist = min(delta, q - delta)
            # dist/q <= s/n without leaving the integers
            if dist * s.denominator * n <= s.numerator * q:
                count += 1
    return Fraction(2 * count, n)


def pair_correlation_via_reps(seq: SequenceLike, alpha: Alpha, n: int, s: SLike) -> Fraction:
    """Cross-check route: sum representation counts of the difference set
    over the differences whose dilation lands in the window.

    Identical to the direct count because each ordered pair contributes via
    its difference d, and the window only depends on d.
    """
    if alpha.mode != "rational":
        raise ValueError("the representation route is defined for rational alpha only")
    elements, s = _prepare(seq, n, s)
    reps = rep_counts(elements)
    q, p = alpha.den, alpha.num
    total = 0
    for d, c in reps.counts.items():
        if d <= 0:  # count each +/- pair once via the positive side
            continue
        rd = (p * (d % q)) % q
        dist = min(rd, q - rd)
        if dist * s.denominator * n <= s.numerator * q:
            total += 2 * c
    return Fraction(total, n)


# -- regular system of rational candidates ----------------------------------------


@dataclass(frozen=True)
class RegularSystemParams:
    """Denominator window per level: q in [ceil(2/3 * B_j), floor(B_j)] with
    B_j = 2^j / (f(2^j) * sqrt(theta(2^j)))."""

    f: GrowthFunction
    theta: ThetaFunction

    def upper(self, j: int) -> float:
        x = 2.0**j
        return x / (self.f(x) * math.sqrt(self.theta(x)))

    def lower(self, j: int) -> float:
        return self.upper(j) * 2.0 / 3.0

    def denominator_range(self, j: int) -> range:
        lo = math.ceil(self.lower(j))
        hi = math.floor(self.upper(j))
        if lo > hi:
            raise ValueError(
                f"no admissible denominators at level {j}: window is "
                f"[{self.lower(j):.3f}, {self.upper(j):.3f}]"
            )
        return range(lo, hi + 1)


def exceptional_alpha_candidates(
    system: RegularSystemParams, j: int, limit: int | None = None
) -> list[Alpha]:
    """Reduced fractions p/q with q in the level-j denominator window,
    ordered by denominator then numerator; optionally truncated."""
    out: list[Alpha] = []
    for q in system.denominator_range(j):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                out.append(Alpha.rational(p, q))
                if limit is not None and len(out) >= limit:
                    return out
    return out


# 25*pi^2 relates the enumeration rank of a reduced fraction to its height:
# among fractions ordered by height, p/q appears no earlier than rank
# q^2/(25*pi^2) up to the constants of the counting argument
_RANK_SCALE = 25.0 * math.pi**2


def rank_of_denominator(q: int) -> int:
    return max(1, math.ceil(q * q / _RANK_SCALE))


def perturbed_alpha(
    candidate: Alpha,
    system: RegularSystemParams,
    rank: int | None = None,
    eta: Fraction | None = None,
) -> Alpha:
    """A rational point inside the approximation neighborhood of a candidate:
    p/q + eta with 0 <= eta <= psi(rank), psi(n) = 1/(n f(n) theta(n)).

    The rank defaults to the conservative proxy for where p/q appears in the
    height ordering; eta defaults to half the full radius.  eta = 0 returns
    the candidate itself.
    """
    if candidate.mode != "rational":
        raise ValueError("candidates are rational by construction")
    i = rank if rank is not None else rank_of_denominator(candidate.den)
    if i < 1:
        raise ValueError("rank must be >= 1")
    radius = Fraction(psi(system.f, system.theta, i))
    eta = radius / 2 if eta is None else Fraction(eta)
    if not (0 <= eta <= radius):
        raise ValueError(f"eta {eta} outside the neighborhood radius {radius}")
    shifted = candidate.value + eta
    if shifted >= 1:
        raise ValueError("perturbation pushed the dilation out of [0, 1)")
    return Alpha.rational(shifted)


def targeting_eta(seq: BlockSequence, level: int, q: int, s: SLike) -> Fraction:
    """A perturbation small enough that every multiple of q up to the
    level's run length lands inside the closed window s/T_level.

    With alpha = p/q + eta, the dilation of m*q sits at distance m*q*eta
    from an integer; bounding m*q*eta <= s/(2*T) for all useful m makes the
    run's representation mass at multiples of q count in full.
    """
    t = seq.checkpoint(level)
    run = seq.a_block(level).length
    multiples = max(1, run // q)
    return Fraction(s) / (2 * t * q * multiples)


# -- divergence probe ---------------------------------------------------------------


@dataclass(frozen=True)
class TrajectoryPoint:
    level: int
    n: int
    s: Fraction
    r: Fraction
    predicted: float


@dataclass(frozen=True)
class Trajectory:
    alpha: Alpha
    points: tuple[TrajectoryPoint, ...]


def divergence_probe(
    seq: BlockSequence,
    alpha: Alpha,
    s: SLike,
    levels: Sequence[int],
    system: RegularSystemParams,
) -> Trajectory:
    """The statistic along the checkpoint scales T_j, with the theoretical
    lower-bound shape f(2^j)^(2*gamma-beta) * theta(2^j)^(1/3) attached
    (up to its unspecified constant) for visual comparison."""
    params = seq.params
    s = Fraction(s)
    points = []
    for j in sorted(set(levels)):
        n = seq.checkpoint(j)
        r = pair_correlation(seq, alpha, n, s)
        x = 2.0**j
        predicted = params.f(x) ** (2.0 * params.gamma - params.beta) * system.theta(
            x
        ) ** (1.0 / 3.0)
        points.append(TrajectoryPoint(level=j, n=n, s=s, r=r, predicted=predicted))
    return Trajectory(alpha=alpha, points=tuple(points))


# -- Monte Carlo ------------------------------------------------------------------------


@dataclass(frozen=True)
class MonteCarloRow:
    trial: int
    alpha: Alpha
    n: int
    s: Fraction
    r: Fraction


@dataclass(frozen=True)
class MonteCarloResult:
    rows: tuple[MonteCarloRow, ...]
    delta: float

    def mean_r(self, n: int, s: SLike) -> float:
        s = Fraction(s)
        vals = [float(row.r) for row in self.rows if row.n == n and row.s == s]
        if not vals:
            raise ValueError(f"no rows at (n={n}, s={s})")
        return sum(vals) / len(vals)

    def exceed_fraction(self, n: int, s: SLike) -> float:
        """Fraction of trials with R > (1 + delta) * 2s at this (n, s)."""
        s = Fraction(s)
        vals = [row.r for row in self.rows if row.n == n and row.s == s]
        if not vals:
            raise ValueError(f"no rows at (n={n}, s={s})")
        bar = (1 + Fraction(str(self.delta))) * 2 * s
        return sum(1 for r in vals if r > bar) / len(vals)


def _trial_alpha(seed: int, trial: int) -> Alpha:
    # string seeding hashes via SHA-512 in CPython, stable across platforms;
    # forcing the low bit makes the numerator odd, hence coprime to 2**64
    rng = random.Random(f"{seed}:{trial}")
    k = rng.getrandbits(64) | 1
    return Alpha.rational(k, 1 << 64)


def monte_carlo_ppc(
    seq: SequenceLike,
    seed: int,
    trials: int,
    schedule: Sequence[int],
    s_values: Sequence[SLike],
    delta: float = 0.5,
    max_workers: int = 1,
) -> MonteCarloResult:
    """Sample the statistic at random dyadic dilations k/2**64 (k odd).

    Each trial draws its dilation from an independent substream of the master
    seed, so results are reproducible run to run and independent of the
    execution order; rows are emitted sorted by (trial, n, s).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    schedule = sorted(set(int(n) for n in schedule))
    s_fracs = [Fraction(s) for s in s_values]
    if not schedule or not s_fracs:
        raise ValueError("schedule and s list must be nonempty")
    elements = as_elements(seq)
    if schedule[-1] > len(elements):
        raise ValueError(
            f"schedule reaches N={schedule[-1]} but the sequence has "
            f"{len(elements)} elements"
        )

    def run_trial(trial: int) -> list[MonteCarloRow]:
        alpha = _trial_alpha(seed, trial)
        return [
            MonteCarloRow(trial=trial, alpha=alpha, n=n, s=s,
                          r=pair_correlation(elements, alpha, n, s))
            for n in schedule
            for s in s_fracs
        ]

    if max_workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            chunks = list(pool.map(run_trial, range(trials)))
    else:
        chunks = [run_trial(t) for t in range(trials)]
    rows = tuple(row for chunk in chunks for row in chunk)
    return MonteCarloResult(rows=rows, delta=delta)


# -- prime-denominator baseline dilations --------------------------------------------

# deterministic Miller-Rabin witness set for n < 3.3 * 10^24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for anything below 3.3e24 (incl. 64-bit)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime_alpha(
    rng: random.Random, bits: int = 64, min_power_order: int = 0
) -> Alpha:
    """A baseline dilation p/q with q a random prime of the given width.

    Unlike dyadic denominators, a generic large prime does not resonate with
    power-of-two sequence elements.  If ``min_power_order`` is positive, q is
    redrawn until no power 2^k with 1 <= k <= min_power_order is 1 mod q, so
    even deep geometric blocks cannot collapse to residue zero.
    """
    if bits < 8:
        raise ValueError("prime width below 8 bits is not useful here")
    while True:
        q = rng.getrandbits(bits - 1) | (1 << (bits - 1)) | 1
        if not is_probable_prime(q):
            continue
        if min_power_order:
            x = 1
            ok = True
            for _ in range(min_power_order):
                x = (x << 1) % q
                if x == 1:
                    ok = False
                    break
            if not ok:
                continue
        p = rng.randrange(1, q)
        return Alpha.rational(p, q)
