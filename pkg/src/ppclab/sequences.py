"""Integer sequences under study: the two-block construction and classics.

The main constructor interleaves, level by level, a run of consecutive
integers (an "A block", maximal additive structure) with a sparse geometric
tail (a "G block", powers of two shifted far to the right).  The relative
sizes are steered by a growth function f and two exponents gamma < beta; the
A blocks make the additive energy of every truncation large while the G
blocks keep the counting function long enough that the energy still falls
below the classical threshold.

Elements grow doubly exponentially (the top G element at level j has on the
order of 2^j bits), so everything is plain Python big integers.  Classic
comparison families (identity, powers, primes, lacunary) live here too, as
does the one-integer-per-line file format shared with the CLI.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .growth import GrowthFunction, parse_growth

__all__ = [
    "BlockParams",
    "Block",
    "BlockSequence",
    "ClassicSequence",
    "BudgetError",
    "build_blocks",
    "classic",
    "truncate",
    "max_element_bits",
    "estimate_build_bits",
    "write_sequence",
    "read_sequence",
    "as_elements",
]


class BudgetError(Exception):
    """A requested computation exceeds its configured resource budget."""


@dataclass(frozen=True)
class BlockParams:
    """Construction parameters: growth function and exponents 0 < gamma < beta < 3/4."""

    f: GrowthFunction
    beta: float
    gamma: float
    j_max: int

    def __post_init__(self) -> None:
        if not (0.0 < self.gamma < self.beta < 0.75):
            raise ValueError(
                f"need 0 < gamma < beta < 3/4, got gamma={self.gamma}, beta={self.beta}"
            )
        if self.j_max < 1:
            raise ValueError("j_max must be >= 1")

    def a_len(self, j: int) -> int:
        """Length of the consecutive run at level j (0 at level 1)."""
        if j == 1:
            return 0
        fj = self.f(2.0**j)
        return math.floor(2.0**j * fj**-self.beta)

    def g_len(self, j: int) -> int:
        """Number of geometric elements at level j (2 at level 1)."""
        if j == 1:
            return 2
        fj = self.f(2.0**j)
        return math.floor(fj**-self.gamma * 2.0**j * (1.0 - fj ** (self.gamma - self.beta)))


@dataclass(frozen=True)
class Block:
    """One block's membership.  ``length`` is the size of the block as a set.

    The element list is a set union, so a block can share members with
    earlier blocks.  Consecutive runs stay contiguous in storage, so for an
    "A" block the values are ``elements[start_index : start_index+length]``
    even when the run restarted over an earlier one.  A geometric block lists
    any already-present members in ``shared``; its remaining
    ``length - len(shared)`` values sit at ``start_index``."""

    level: int
    kind: str  # "A" or "G"
    start_index: int
    length: int
    shared: tuple[int, ...] = ()


@dataclass(frozen=True)
class BlockSequence:
    params: BlockParams
    elements: list[int]
    blocks: tuple[Block, ...]
    checkpoints: tuple[int, ...]  # checkpoints[j-1] = #elements through level j

    def __len__(self) -> int:
        return len(self.elements)

    def checkpoint(self, j: int) -> int:
        if not (1 <= j <= self.params.j_max):
            raise ValueError(f"level {j} outside built range 1..{self.params.j_max}")
        return self.checkpoints[j - 1]

    def a_block(self, j: int) -> Block:
        for b in self.blocks:
            if b.level == j and b.kind == "A":
                return b
        raise ValueError(f"no A block at level {j}")

    def g_block(self, j: int) -> Block:
        for b in self.blocks:
            if b.level == j and b.kind == "G":
                return b
        raise ValueError(f"no G block at level {j}")

    def block_values(self, block: Block) -> list[int]:
        """The block's members in increasing order (resolving shared storage)."""
        own = self.elements[
            block.start_index : block.start_index + block.length - len(block.shared)
        ]
        return list(block.shared) + own


SequenceLike = Union[BlockSequence, "ClassicSequence", Sequence[int]]


def estimate_build_bits(params: BlockParams) -> int:
    """Cheap upper estimate of the total bits stored by build_blocks.

    The binding term is the geometric blocks: the i-th element at level j
    has about max(i, bits(C_j)) bits, and bits(C_j) is roughly the previous
    level's geometric length.
    """
    total = 64
    prev_g = 2
    for j in range(2, params.j_max + 1):
        la, lg = params.a_len(j), params.g_len(j)
        total += la * (prev_g + 64)  # consecutive run sits just above 2*max G
        total += lg * (prev_g + 64) + lg * (lg + 1) // 2
        if lg:
            prev_g = max(prev_g, lg)
    return total


# 1 GiB of raw element bits; far above anything the experiments need, but it
# turns an accidental j_max=25 into a clean refusal instead of an OOM
DEFAULT_MAX_BUILD_BITS = 1 << 33


def build_blocks(
    f: GrowthFunction,
    beta: float,
    gamma: float,
    j_max: int,
    max_total_bits: int | None = DEFAULT_MAX_BUILD_BITS,
) -> BlockSequence:
    """Build the interleaved block sequence through level ``j_max``.

    Level 1 is the seed {1, 2} (geometric, empty consecutive run).  At level
    j >= 2 the consecutive run starts at C_j = twice the largest element of
    the most recent nonempty geometric block, and the geometric block is
    C_j-shifted powers of two: 2*C_j + 2^i for i = 1..g_len(j).

    Either block may be empty at small levels; the element list is the set
    union, so a run that restarts at an earlier C_j (possible when geometric
    blocks were empty in between) only contributes its new integers, and a
    geometric member that lands inside the run is recorded as shared rather
    than stored twice.
    """
    params = BlockParams(f=f, beta=beta, gamma=gamma, j_max=j_max)
    if max_total_bits is not None:
        est = estimate_build_bits(params)
        if est > max_total_bits:
            raise BudgetError(
                f"estimated {est} element bits exceed the budget of "
                f"{max_total_bits}; lower j_max or raise the budget"
            )

    elements: list[int] = [1, 2]
    blocks: list[Block] = [
        Block(level=1, kind="A", start_index=0, length=0),
        Block(level=1, kind="G", start_index=0, length=2),
    ]
    checkpoints: list[int] = [2]
    last_g_max = 2  # largest element of the most recent nonempty G block

    for j in range(2, j_max + 1):
        la, lg = params.a_len(j), params.g_len(j)
        c = 2 * last_g_max

        # consecutive run [c, c + la)
        if la > 0:
            top = elements[-1]
            if c > top:
                blocks.append(Block(j, "A", len(elements), la))
                elements.extend(range(c, c + la))
            else:
                # a restarted run: everything in [c, top] must already be
                # present as a consecutive run from an earlier level
                start_index = bisect_left(elements, c)
                if elements[start_index:] != list(range(c, top + 1)):
                    raise ValueError(
                        f"level {j}: run starting at {c} collides with "
                        "non-run elements; construction is inconsistent"
                    )
                if c + la - 1 > top:
                    elements.extend(range(top + 1, c + la))
                blocks.append(Block(j, "A", start_index, la))
        else:
            blocks.append(Block(j, "A", len(elements), 0))

        # geometric block {2c + 2^i}; the union can share small members with
        # this level's consecutive run (every integer of the run is present,
        # so a member at or below the current maximum must be one of them)
        if lg > 0:
            two_c = 2 * c
            members = [two_c + (1 << i) for i in range(1, lg + 1)]
            top = elements[-1]
            shared = [v for v in members if v <= top]
            for v in shared:
                idx = bisect_left(elements, v)
                if idx >= len(elements) or elements[idx] != v:
                    raise ValueError(
                        f"level {j}: geometric member {v} falls below the "
                        f"current maximum {top} without being present; "
                        "construction is inconsistent"
                    )
            blocks.append(Block(j, "G", len(elements), lg, shared=tuple(shared)))
            elements.extend(v for v in members if v > top)
            last_g_max = members[-1]
        else:
            blocks.append(Block(j, "G", len(elements), 0))

        checkpoints.append(len(elements))

    for a, b in zip(elements, elements[1:]):
        if a >= b:  # defensive: the invariant every consumer relies on
            raise AssertionError("construction produced a non-increasing list")

    return BlockSequence(
        params=params,
        elements=elements,
        blocks=tuple(blocks),
        checkpoints=tuple(checkpoints),
    )


# -- classic comparison families ------------------------------------------------


@dataclass(frozen=True)
class ClassicSequence:
    family: str
    n: int
    param: int
    elements: list[int] = field(repr=False)


def _first_primes(n: int) -> list[int]:
    """The first n primes, by sieving up to a standard upper bound."""
    if n <= 0:
        return []
    if n < 6:
        return [2, 3, 5, 7, 11][:n]
    bound = int(n * (math.log(n) + math.log(math.log(n)))) + 10
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    primes = [i for i, flag in enumerate(sieve) if flag]
    if len(primes) < n:  # the bound is proven for n >= 6, but stay defensive
        return _first_primes_grow(n, primes, bound)
    return primes[:n]


def _first_primes_grow(n: int, primes: list[int], bound: int) -> list[int]:
    while len(primes) < n:
        bound *= 2
        sieve = bytearray([1]) * (bound + 1)
        sieve[0] = sieve[1] = 0
        for p in range(2, math.isqrt(bound) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        primes = [i for i, flag in enumerate(sieve) if flag]
    return primes[:n]


def classic(family: str, n: int, param: int = 0) -> ClassicSequence:
    """Build a classic family: identity | power (n^d) | primes | lacunary (q^n).

    ``param`` is the exponent d >= 1 for "power" (default 2) and the base
    q >= 2 for "lacunary" (default 2); it is ignored for the others.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if family == "identity":
        return ClassicSequence(family, n, 1, list(range(1, n + 1)))
    if family == "power":
        d = param or 2
        if d < 1:
            raise ValueError("power exponent must be >= 1")
        return ClassicSequence(family, n, d, [k**d for k in range(1, n + 1)])
    if family == "primes":
        return ClassicSequence(family, n, 0, _first_primes(n))
    if family == "lacunary":
        q = param or 2
        if q < 2:
            raise ValueError("lacunary base must be >= 2")
        return ClassicSequence(family, n, q, [q**k for k in range(1, n + 1)])
    raise ValueError(f"unknown family {family!r}")


# -- shared helpers ------------------------------------------------------------


def as_elements(seq: SequenceLike) -> Sequence[int]:
    if isinstance(seq, (BlockSequence, ClassicSequence)):
        return seq.elements
    return seq


def truncate(seq: SequenceLike, n: int) -> Sequence[int]:
    """The first n elements; refuses to silently pad a too-short sequence."""
    elems = as_elements(seq)
    if not (0 <= n <= len(elems)):
        raise ValueError(f"truncation length {n} outside 0..{len(elems)}")
    return elems[:n]


def max_element_bits(seq: SequenceLike) -> int:
    elems = as_elements(seq)
    if not elems:
        raise ValueError("empty sequence has no maximum")
    return max(elems).bit_length()


# -- file format -----------------------------------------------------------------
#
# One decimal integer per line; '#' lines are comments.  Key = value comments
# at the top carry optional construction metadata so block sequences can be
# rebuilt (and verified) from their files.


def write_sequence(path, seq: SequenceLike, meta: dict[str, str] | None = None) -> None:
    elems = as_elements(seq)
    if meta is None and isinstance(seq, BlockSequence):
        meta = block_meta(seq)
    with open(path, "w", encoding="ascii") as fh:
        for key, value in (meta or {}).items():
            fh.write(f"# {key} = {value}\n")
        for x in elems:
            fh.write(f"{x}\n")


def block_meta(seq: BlockSequence) -> dict[str, str]:
    p = seq.params
    return {
        "family": "blocks",
        "f": p.f.spec_string,
        "beta": repr(p.beta),
        "gamma": repr(p.gamma),
        "jmax": str(p.j_max),
    }


def read_sequence(path) -> tuple[list[int], dict[str, str]]:
    """Read elements and top-comment metadata; enforces strict increase."""
    elements: list[int] = []
    meta: dict[str, str] = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta.setdefault(key.strip(), value.strip())
                continue
            try:
                x = int(line)
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: not an integer: {line!r}") from None
            if elements and x <= elements[-1]:
                raise ValueError(
                    f"{path}: line {lineno}: element {x} not strictly above "
                    f"its predecessor {elements[-1]}"
                )
            elements.append(x)
    return elements, meta


def rebuild_from_meta(meta: dict[str, str]) -> BlockSequence:
    """Rebuild a block sequence from file metadata written by write_sequence."""
    try:
        f = parse_growth(meta["f"])
        beta = float(eval_fraction(meta["beta"]))
        gamma = float(eval_fraction(meta["gamma"]))
        j_max = int(meta["jmax"])
    except KeyError as exc:
        raise ValueError(f"sequence file lacks block metadata key {exc}") from None
    return build_blocks(f, beta, gamma, j_max)


def eval_fraction(token: str) -> float:
    """Parse '2/3' or '0.66' into a float (used for beta/gamma round-trips)."""
    token = token.strip()
    if "/" in token:
        num, _, den = token.partition("/")
        return float(num) / float(den)
    return float(token)
