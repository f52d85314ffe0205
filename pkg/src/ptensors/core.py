"""Atoms, ordered reference domains, permutations, and the P-tensor container.

An atom is a nonnegative integer id into a global universe (for graphs,
a vertex id). A reference domain is an ordered tuple of distinct atoms.
A P-tensor is a dense order-k tensor over its domain plus a trailing
channel axis; a permutation tau of the domain acts by

    tau(T)[i1,...,ik,c] = T[tau^-1(i1),...,tau^-1(ik),c]

with the domain reordered the same way, so an atom keeps its values.
Global permutations of the universe are plain ``{atom: atom}`` mappings;
when one maps a domain onto itself as a set, its restriction is the
position permutation induced on the domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _permutations
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import ContractError, DisjointDomainsError, SizeCapError

Atom = int

TENSOR_SIZE_CAP = 10**8


@dataclass(frozen=True)
class RefDomain:
    """An ordered tuple of distinct atoms. Order is significant."""

    atoms: tuple[Atom, ...]

    def __init__(self, atoms: Sequence[Atom]):
        atoms = tuple(int(a) for a in atoms)
        if len(set(atoms)) != len(atoms):
            raise ContractError(f"duplicate atoms in reference domain {atoms}")
        if any(a < 0 for a in atoms):
            raise ContractError("atom ids must be nonnegative")
        object.__setattr__(self, "atoms", atoms)

    @property
    def d(self) -> int:
        return len(self.atoms)

    def position(self, atom: Atom) -> int:
        return self.atoms.index(atom)

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self):
        return len(self.atoms)

    def __str__(self):
        return "(" + ",".join(map(str, self.atoms)) + ")"


@dataclass(frozen=True)
class Permutation:
    """A bijection on positions 0..n-1; position i maps to mapping[i]."""

    mapping: tuple[int, ...]

    def __init__(self, mapping: Sequence[int]):
        mapping = tuple(int(x) for x in mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ContractError(f"not a permutation of 0..{len(mapping)-1}: {mapping}")
        object.__setattr__(self, "mapping", mapping)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        m = list(range(n))
        m[i], m[j] = m[j], m[i]
        return cls(tuple(m))

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(i) = self(other(i))."""
        if self.n != other.n:
            raise ContractError("cannot compose permutations of different sizes")
        return Permutation(tuple(self.mapping[other.mapping[i]] for i in range(self.n)))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))


class PTensor:
    """A dense order-k tensor over a reference domain, channels last.

    values has shape (d,)*order + (channels,). Integer dtype gives the
    exact mode used by the property tests; float64 is the layer mode.
    Instances are immutable: the value array is marked read-only.
    """

    def __init__(self, domain: RefDomain, order: int, channels: int, values):
        if order < 0:
            raise ContractError("tensor order must be nonnegative")
        if channels < 1:
            raise ContractError("channel count must be positive")
        values = np.asarray(values)
        expected = (domain.d,) * order + (channels,)
        if values.shape != expected:
            raise ContractError(
                f"value shape {values.shape} does not match {expected}"
            )
        self.domain = domain
        self.order = order
        self.channels = channels
        self.values = values
        self.values.flags.writeable = False

    @classmethod
    def zeros(cls, domain: RefDomain, order: int, channels: int, dtype=np.int64):
        shape = (domain.d,) * order + (channels,)
        return cls(domain, order, channels, np.zeros(shape, dtype=dtype))

    @property
    def d(self) -> int:
        return self.domain.d

    def same_as(self, other: "PTensor") -> bool:
        return (
            self.domain == other.domain
            and self.order == other.order
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return (
            f"PTensor(domain={self.domain}, order={self.order}, "
            f"channels={self.channels}, dtype={self.values.dtype})"
        )


def permute_ptensor(tensor: PTensor, tau: Permutation) -> PTensor:
    """Apply a domain permutation to a P-tensor.

    Output entry [i1..ik,c] is input entry [tau^-1(i1)..tau^-1(ik),c] and
    the domain is reordered so new position i holds the atom previously at
    tau^-1(i). Every atom keeps its associated values.
    """
    if tau.n != tensor.d:
        raise ContractError(
            f"permutation size {tau.n} does not match domain size {tensor.d}"
        )
    inv = tau.inverse().mapping
    values = tensor.values
    for axis in range(tensor.order):
        values = np.take(values, inv, axis=axis)
    new_domain = RefDomain(tuple(tensor.domain.atoms[inv[i]] for i in range(tau.n)))
    return PTensor(new_domain, tensor.order, tensor.channels, values)


def restrict_permutation(sigma: Mapping[Atom, Atom], domain: RefDomain):
    """Restrict a global permutation to a domain it fixes as a set.

    Returns the position permutation tau with sigma(domain[j]) =
    domain[tau(j)], or None when sigma moves some atom out of the domain.
    Atoms missing from sigma's mapping are a contract error.
    """
    images = []
    for atom in domain:
        if atom not in sigma:
            raise ContractError(f"atom {atom} outside the permutation's universe")
        images.append(sigma[atom])
    atom_set = set(domain.atoms)
    if any(img not in atom_set for img in images):
        return None
    pos = {atom: j for j, atom in enumerate(domain.atoms)}
    return Permutation(tuple(pos[img] for img in images))


@dataclass(frozen=True)
class DomainAlignment:
    """Realignment of two domains so their common atoms come first.

    perm_in moves input-domain positions, perm_out output-domain
    positions; after applying them, positions 0..n_common-1 of both
    domains carry the same atoms in the same order.
    """

    n_common: int
    perm_in: Permutation
    perm_out: Permutation
    d_in: int
    d_out: int

    def swapped(self) -> "DomainAlignment":
        return DomainAlignment(
            self.n_common, self.perm_out, self.perm_in, self.d_out, self.d_in
        )


def _realignment(domain: RefDomain, common: frozenset) -> Permutation:
    shared = sorted(a for a in domain if a in common)
    rest = sorted(a for a in domain if a not in common)
    target = {atom: pos for pos, atom in enumerate(shared + rest)}
    return Permutation(tuple(target[atom] for atom in domain))


def align_domains(d_in: RefDomain, d_out: RefDomain) -> DomainAlignment:
    """Compute the canonical common-atoms-first realignment of two domains.

    Common atoms go first in ascending id order, remaining atoms after in
    ascending id order. Identical domains (elementwise) are left alone.
    Disjoint domains cannot exchange overlap messages and are an error.
    """
    common = frozenset(d_in.atoms) & frozenset(d_out.atoms)
    if not common:
        raise DisjointDomainsError(
            f"domains {d_in} and {d_out} share no atoms"
        )
    if d_in.atoms == d_out.atoms:
        ident = Permutation.identity(d_in.d)
        return DomainAlignment(d_in.d, ident, ident, d_in.d, d_out.d)
    return DomainAlignment(
        len(common),
        _realignment(d_in, common),
        _realignment(d_out, common),
        d_in.d,
        d_out.d,
    )


def apply_alignment(domain: RefDomain, perm: Permutation) -> RefDomain:
    """The domain as reordered by a realignment permutation."""
    inv = perm.inverse().mapping
    return RefDomain(tuple(domain.atoms[inv[i]] for i in range(perm.n)))


def random_ptensor(
    domain: RefDomain,
    order: int,
    channels: int,
    seed: int,
    mode: str = "int",
    cap: int = TENSOR_SIZE_CAP,
) -> PTensor:
    """A reproducible random P-tensor.

    Uses numpy's PCG64 generator, so identical (seed, shape, mode) give
    identical tensors on every platform. Integer mode draws uniformly
    from [-8, 8]; float mode draws uniformly from [-1, 1).
    """
    size = domain.d**order * channels
    if size > cap:
        raise SizeCapError(f"tensor with {size} entries exceeds cap {cap}")
    shape = (domain.d,) * order + (channels,)
    rng = np.random.default_rng(seed)
    if mode == "int":
        values = rng.integers(-8, 9, size=shape, dtype=np.int64)
    elif mode == "float":
        values = rng.uniform(-1.0, 1.0, size=shape)
    else:
        raise ContractError(f"unknown tensor mode {mode!r}")
    return PTensor(domain, order, channels, values)


def iter_block_permutations(
    blocks: Sequence[Sequence[Atom]],
) -> Iterator[dict[Atom, Atom]]:
    """All global permutations fixing each given atom block as a set."""
    blocks = [tuple(b) for b in blocks]
    pools = [list(_permutations(b)) for b in blocks]

    def rec(i: int, acc: dict[Atom, Atom]):
        if i == len(blocks):
            yield dict(acc)
            return
        for image in pools[i]:
            for atom, img in zip(blocks[i], image):
                acc[atom] = img
            yield from rec(i + 1, acc)

    yield from rec(0, {})


def random_block_permutation(
    blocks: Sequence[Sequence[Atom]], rng: np.random.Generator
) -> dict[Atom, Atom]:
    """One uniformly random global permutation fixing each block as a set."""
    sigma: dict[Atom, Atom] = {}
    for block in blocks:
        block = list(block)
        image = list(block)
        rng.shuffle(image)
        for atom, img in zip(block, image):
            sigma[atom] = img
    return sigma
