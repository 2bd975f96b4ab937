"""Universes, set families and coverings with their characteristic matrices."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .boolmat import (
    BoolMatrix,
    SetVec,
    bool_product,
    first_asymmetry,
    iter_bits,
    odot,
    to_boolean,
    transpose,
)


class CoveringError(ValueError):
    pass


class RelationError(ValueError):
    def __init__(self, predicate: str, witness: tuple[int, int]):
        i, j = witness
        super().__init__(f"relation is not {predicate}: witness pair ({i},{j})")
        self.predicate = predicate
        self.witness = witness


@dataclass(frozen=True)
class Universe:
    names: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.names:
            raise ValueError("universe must have at least one element")
        index = {}
        for i, name in enumerate(self.names):
            if not name:
                raise ValueError(f"element {i} has an empty name")
            if name in index:
                raise ValueError(f"duplicate element name {name!r}")
            index[name] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, names: Iterable[str]) -> Universe:
        return cls(tuple(names))

    @classmethod
    def numbered(cls, n: int, prefix: str = "x") -> Universe:
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown element {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    def subset(self, names: Iterable[str]) -> int:
        bits = 0
        for name in names:
            bits |= 1 << self.index(name)
        return bits

    def setvec(self, names: Iterable[str]) -> SetVec:
        return SetVec(len(self), self.subset(names))

    def names_of(self, bits: int) -> list[str]:
        return [self.names[i] for i in iter_bits(bits)]


@dataclass(frozen=True)
class SetFamily:
    universe: Universe
    blocks: tuple[int, ...]

    def __post_init__(self):
        full = self.universe.full
        for j, b in enumerate(self.blocks):
            if b < 0 or b & ~full:
                raise ValueError(f"block {j} has bits outside the universe")

    @classmethod
    def of(cls, universe: Universe | Sequence[str], blocks: Iterable[Iterable[str]]) -> SetFamily:
        if not isinstance(universe, Universe):
            universe = Universe.of(universe)
        return cls(universe, tuple(universe.subset(b) for b in blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def block_names(self) -> list[list[str]]:
        return [self.universe.names_of(b) for b in self.blocks]

    def with_blocks(self, blocks: Iterable[int]) -> SetFamily:
        return type(self)(self.universe, tuple(blocks))


@dataclass(frozen=True)
class Covering(SetFamily):
    """A family of nonempty blocks whose union is the universe."""

    def __post_init__(self):
        super().__post_init__()
        if not self.blocks:
            raise CoveringError("a covering needs at least one block")
        covered = 0
        for j, b in enumerate(self.blocks):
            if b == 0:
                raise CoveringError(f"block {j} is empty")
            covered |= b
        missing = self.universe.full & ~covered
        if missing:
            name = self.universe.name(next(iter_bits(missing)))
            raise CoveringError(f"element {name!r} is not covered")


def canonical_key(bits: int, n: int) -> int:
    """Sort key placing blocks in canonical order.

    The block is read as an integer with element 0 as the most significant
    bit; larger integers come first, so blocks holding earlier elements sort
    earlier.
    """
    msb_first = 0
    for i in range(n):
        msb_first = (msb_first << 1) | ((bits >> i) & 1)
    return -msb_first


def canonical_sort(blocks: Iterable[int], n: int) -> list[int]:
    return sorted(blocks, key=lambda b: canonical_key(b, n))


def membership_matrix(family: SetFamily) -> BoolMatrix:
    return BoolMatrix.from_columns(len(family.universe), family.blocks)


def validate_covering(family: SetFamily) -> Covering:
    if isinstance(family, Covering):
        return family
    return Covering(family.universe, family.blocks)


def _neighborhood_bits(c: Covering) -> tuple[list[int], list[int]]:
    n = len(c.universe)
    full = c.universe.full
    ind = [0] * n
    nbr = [full] * n
    for b in c.blocks:
        for i in iter_bits(b):
            ind[i] |= b
            nbr[i] &= b
    return ind, nbr


@lru_cache(maxsize=256)
def neighborhood_bits(c: Covering) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(I, N)`` as bitsets per element: union and intersection of the
    blocks containing it."""
    ind, nbr = _neighborhood_bits(c)
    return tuple(ind), tuple(nbr)


def neighborhoods(c: Covering) -> tuple[list[SetVec], list[SetVec]]:
    n = len(c.universe)
    ind, nbr = neighborhood_bits(c)
    return [SetVec(n, b) for b in ind], [SetVec(n, b) for b in nbr]


@lru_cache(maxsize=256)
def gamma(c: Covering) -> BoolMatrix:
    """Type-1 characteristic matrix ``M·Mᵀ``: (i, j) set iff x_i and x_j share a block."""
    m = membership_matrix(c)
    return bool_product(m, transpose(m))


@lru_cache(maxsize=256)
def pi(c: Covering) -> BoolMatrix:
    """Type-2 characteristic matrix ``M ⊙ Mᵀ``: (i, j) set iff x_j lies in N(x_i)."""
    m = membership_matrix(c)
    return to_boolean(odot(m, transpose(m)))


def _dedupe(blocks: Iterable[int]) -> list[int]:
    seen = set()
    out = []
    for b in blocks:
        if b not in seen:
            seen.add(b)
            out.append(b)
    return out


def is_reducible(blocks: Sequence[int], j: int) -> bool:
    """Whether block j is a union of other blocks in the list."""
    k = blocks[j]
    acc = 0
    for t, b in enumerate(blocks):
        if t != j and b & ~k == 0:
            acc |= b
    return acc == k


def reduct(c: Covering) -> Covering:
    """Drop reducible blocks one at a time until none remain."""
    blocks = list(c.blocks)
    while True:
        for j in range(len(blocks)):
            if is_reducible(blocks, j):
                del blocks[j]
                break
        else:
            return Covering(c.universe, tuple(blocks))


def gir(family: SetFamily) -> SetFamily:
    """Keep only inclusion-maximal blocks, one copy each, in first-seen order."""
    blocks = _dedupe(family.blocks)
    keep = [b for b in blocks if not any(o != b and b & ~o == 0 for o in blocks)]
    return family.with_blocks(keep)


def covering_from_relation(
    rel: BoolMatrix, mode: str = "preorder", universe: Universe | None = None
) -> Covering:
    """Covering whose neighborhoods reproduce a reflexive, transitive relation.

    In ``equivalence`` mode the relation must also be symmetric and the result
    is the partition into equivalence classes. In ``preorder`` mode the blocks
    are the distinct successor sets R(x), so ``pi`` of the result is ``rel``.
    """
    if mode not in ("equivalence", "preorder"):
        raise ValueError(f"unknown mode {mode!r}")
    if rel.rows != rel.cols:
        raise ValueError(f"relation matrix must be square, got {rel.rows}x{rel.cols}")
    n = rel.rows
    if universe is None:
        universe = Universe.numbered(n)
    elif len(universe) != n:
        raise ValueError(f"universe has {len(universe)} elements, relation has {n}")
    for i in range(n):
        if not rel[i, i]:
            raise RelationError("reflexive", (i, i))
    if mode == "equivalence":
        bad = first_asymmetry(rel)
        if bad is not None:
            raise RelationError("symmetric", bad)
    square = bool_product(rel, rel)
    for i in range(n):
        extra = square.data[i] & ~rel.data[i]
        if extra:
            raise RelationError("transitive", (i, next(iter_bits(extra))))
    return Covering(universe, tuple(_dedupe(rel.data)))
