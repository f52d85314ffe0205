"""Set partitions, Bell numbers, and the counting formulas for spaces of
equivariant linear maps.

Partitions of {1..m} are represented as restricted-growth strings (RGS):
element i gets a 0-based block label, the first element gets label 0, and
every later element's label is at most 1 + max of the labels before it.
Enumeration is strictly lexicographic in the RGS, which fixes a stable
order for everything built on top (map enumeration, CLI output, weights).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from typing import Iterator, NamedTuple

from .errors import ContractError, InternalConsistencyError, SizeCapError

BELL_CAP = 30
ENUMERATION_CAP = 12
GROUP_ITERATION_CAP = 10**7

# The closed-form overlap count is cross-checked against the partition
# enumeration whenever the enumeration is this cheap or cheaper.
CROSS_CHECK_PARTITION_LIMIT = 250_000


class BellTable:
    """Bell numbers B(0..cap), exact integers, built once then read-only."""

    def __init__(self, cap: int):
        if cap < 0:
            raise ContractError("Bell table cap must be nonnegative")
        self.cap = cap
        values = [1]
        for m in range(cap):
            values.append(sum(comb(m, j) * values[j] for j in range(m + 1)))
        self.values = tuple(values)

    def __getitem__(self, m: int) -> int:
        return self.values[m]


_SHARED_BELL = BellTable(BELL_CAP)


def bell(m: int, cap: int = BELL_CAP) -> int:
    """B(m), the number of partitions of an m-element set.

    Exact arbitrary-precision integer. Raises SizeCapError for m > cap.
    """
    if m < 0:
        raise ContractError(f"bell() needs m >= 0, got {m}")
    if m > cap:
        raise SizeCapError(f"bell({m}) exceeds cap {cap}")
    if m <= _SHARED_BELL.cap:
        return _SHARED_BELL[m]
    return BellTable(m)[m]


def iter_rgs(m: int) -> Iterator[tuple[int, ...]]:
    """All restricted-growth strings of length m, lexicographically."""
    if m == 0:
        yield ()
        return
    a = [0] * m
    maxes = [0] * m
    while True:
        yield tuple(a)
        i = m - 1
        while i > 0 and a[i] > maxes[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        maxes[i] = max(maxes[i - 1], a[i])
        for j in range(i + 1, m):
            a[j] = 0
            maxes[j] = maxes[i]


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1..m} in restricted-growth form.

    `assignment[i]` is the 0-based label of element i+1. Blocks are
    recovered on demand; block t's minimum element grows with t, so label
    order and block-min-element order coincide.
    """

    m: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.m:
            raise ContractError("assignment length must equal m")
        seen_max = -1
        for label in self.assignment:
            if label < 0 or label > seen_max + 1:
                raise ContractError(
                    f"not a restricted-growth string: {self.assignment}"
                )
            seen_max = max(seen_max, label)

    @property
    def n_blocks(self) -> int:
        return max(self.assignment) + 1 if self.m else 0

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks as sorted tuples of 1-based elements, in label order."""
        out: list[list[int]] = [[] for _ in range(self.n_blocks)]
        for pos, label in enumerate(self.assignment):
            out[label].append(pos + 1)
        return tuple(tuple(b) for b in out)

    @classmethod
    def from_blocks(cls, m: int, blocks) -> "SetPartition":
        """Build from any iterable of element collections covering {1..m}."""
        label_of: dict[int, int] = {}
        for block in blocks:
            block = sorted(block)
            if not block:
                raise ContractError("empty block")
            for e in block:
                if e in label_of:
                    raise ContractError(f"element {e} appears in two blocks")
                label_of[e] = min(block)
        if sorted(label_of) != list(range(1, m + 1)):
            raise ContractError("blocks must cover {1..m} exactly")
        relabel: dict[int, int] = {}
        assignment = []
        for e in range(1, m + 1):
            anchor = label_of[e]
            if anchor not in relabel:
                relabel[anchor] = len(relabel)
            assignment.append(relabel[anchor])
        return cls(m, tuple(assignment))

    def __str__(self):
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return "{" + inner + "}"


def iter_partitions(m: int, cap: int = ENUMERATION_CAP) -> Iterator[SetPartition]:
    """Lazily enumerate all partitions of {1..m} in lexicographic RGS order."""
    if m < 0:
        raise ContractError(f"need m >= 0, got {m}")
    if m > cap:
        raise SizeCapError(f"enumerating partitions of {m} exceeds cap {cap}")
    for rgs in iter_rgs(m):
        yield SetPartition(m, rgs)


def enumerate_partitions(m: int, cap: int = ENUMERATION_CAP) -> list[SetPartition]:
    """All partitions of {1..m} as a list; length equals bell(m)."""
    return list(iter_partitions(m, cap))


class BlockRole(Enum):
    """What a block does in the map a partition encodes."""

    PURE_OUTPUT = "broadcast"
    MIXED = "transfer"
    PURE_INPUT = "sum"


class PartitionType(NamedTuple):
    """Block counts by role: (pure-output, mixed, pure-input)."""

    pure_output: int
    mixed: int
    pure_input: int


def classify_partition(
    partition: SetPartition, k_out: int, k_in: int
) -> tuple[tuple[BlockRole, ...], PartitionType]:
    """Label each block by role under the output-first mode convention.

    Elements 1..k_out are output tensor modes, elements k_out+1..k_out+k_in
    are input modes. A block touching only output modes broadcasts, one
    touching only input modes sums, and a block touching both transfers.
    """
    if partition.m != k_out + k_in:
        raise ContractError(
            f"partition of {partition.m} elements cannot split into "
            f"{k_out} output + {k_in} input modes"
        )
    roles = []
    counts = [0, 0, 0]
    for block in partition.blocks:
        has_out = any(e <= k_out for e in block)
        has_in = any(e > k_out for e in block)
        if has_out and has_in:
            role = BlockRole.MIXED
            counts[1] += 1
        elif has_out:
            role = BlockRole.PURE_OUTPUT
            counts[0] += 1
        else:
            role = BlockRole.PURE_INPUT
            counts[2] += 1
        roles.append(role)
    return tuple(roles), PartitionType(*counts)


def count_same_domain(k_in: int, k_out: int, cap: int = BELL_CAP) -> int:
    """Dimension of the equivariant map space for identical domains."""
    if k_in < 0 or k_out < 0:
        raise ContractError("tensor orders must be nonnegative")
    return bell(k_in + k_out, cap)


def count_overlap_closed_form(k_in: int, k_out: int, cap: int = BELL_CAP) -> int:
    """Overlap-map count by the binomial/Bell double sum."""
    if k_in < 0 or k_out < 0:
        raise ContractError("tensor orders must be nonnegative")
    if k_in + k_out > cap:
        raise SizeCapError(f"count for orders ({k_in},{k_out}) exceeds Bell cap {cap}")
    return sum(
        comb(k_in, p) * comb(k_out, q) * bell(p + q, cap)
        * bell(k_in - p, cap) * bell(k_out - q, cap)
        for p in range(k_in + 1)
        for q in range(k_out + 1)
    )


def count_overlap_variant_sum(k_in: int, k_out: int, cap: int = ENUMERATION_CAP) -> int:
    """Overlap-map count by direct enumeration: sum of 2^(pure blocks).

    Independent of the closed form; iterates every partition of the
    combined modes and doubles once per pure block (the common-atoms-only
    versus whole-domain choice for each sum and broadcast).
    """
    if k_in < 0 or k_out < 0:
        raise ContractError("tensor orders must be nonnegative")
    m = k_in + k_out
    if m > cap:
        raise SizeCapError(f"variant-sum count for {m} modes exceeds cap {cap}")
    total = 0
    for rgs in iter_rgs(m):
        nb = (max(rgs) + 1) if m else 0
        has_out = [False] * nb
        has_in = [False] * nb
        for pos, label in enumerate(rgs):
            if pos < k_out:
                has_out[label] = True
            else:
                has_in[label] = True
        pure = sum(1 for t in range(nb) if has_out[t] != has_in[t])
        total += 1 << pure
    return total


def count_overlap(k_in: int, k_out: int, cap: int = BELL_CAP) -> int:
    """Dimension of the equivariant map space for partially overlapping domains.

    Computes the closed form and, whenever the partition enumeration is
    cheap enough, recomputes the count by variant sum; the two must agree.
    """
    result = count_overlap_closed_form(k_in, k_out, cap)
    m = k_in + k_out
    if m <= ENUMERATION_CAP and bell(m, max(cap, m)) <= CROSS_CHECK_PARTITION_LIMIT:
        check = count_overlap_variant_sum(k_in, k_out)
        if check != result:
            raise InternalConsistencyError(
                f"overlap count mismatch for ({k_in},{k_out}): "
                f"closed form {result} != variant sum {check}"
            )
    return result


def avg_fixed_power(z: int, k: int, cap: int = GROUP_ITERATION_CAP) -> Fraction:
    """Average of (number of fixed points)^k over all permutations of z items.

    Exact rational, by explicit enumeration of the symmetric group. Equals
    B(k) exactly whenever z >= k, and falls strictly below it for z < k.
    """
    if z < 1:
        raise ContractError(f"need z >= 1, got {z}")
    if k < 0:
        raise ContractError(f"need k >= 0, got {k}")
    order = factorial(z)
    if order > cap:
        raise SizeCapError(f"{z}! = {order} exceeds iteration cap {cap}")
    total = 0
    for perm in permutations(range(z)):
        fixed = sum(1 for i, image in enumerate(perm) if i == image)
        total += fixed**k
    return Fraction(total, order)
