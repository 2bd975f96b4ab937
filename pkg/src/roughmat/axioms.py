"""Decide whether an operator is SH, IH or XH of some covering.

Operators are given either as a full table over all subsets or only through
their singleton matrix ``A_H`` (row i holds the image of ``{x_i}``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .approx import OpKind, oracle_approx
from .boolmat import (
    BoolMatrix,
    SetVec,
    bool_product,
    first_asymmetry,
    iter_bits,
    transpose,
)
from .covering import (
    Covering,
    Universe,
    canonical_sort,
    covering_from_relation,
    reduct,
)
from .decompose import decompose_paper

MAX_TABLE_N = 12
DEFAULT_SIXTH_BOUND = 6


@dataclass(frozen=True)
class OperatorTable:
    """``images[mask]`` is the image of the subset encoded by ``mask``."""

    universe: Universe
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.universe)
        if n > MAX_TABLE_N:
            raise ValueError(f"operator tables are limited to {MAX_TABLE_N} elements")
        if len(self.images) != 1 << n:
            raise ValueError(f"expected {1 << n} images, got {len(self.images)}")
        full = self.universe.full
        for mask, img in enumerate(self.images):
            if img & ~full or img < 0:
                raise ValueError(f"image of subset {mask} leaves the universe")

    @classmethod
    def from_function(cls, universe: Universe, fn: Callable[[int], int]) -> OperatorTable:
        return cls(universe, tuple(fn(mask) for mask in range(1 << len(universe))))

    @classmethod
    def of_approx(cls, c: Covering, kind: OpKind | str) -> OperatorTable:
        n = len(c.universe)
        return cls.from_function(c.universe, lambda m: oracle_approx(c, kind, SetVec(n, m)).bits)

    def __call__(self, mask: int) -> int:
        return self.images[mask]


def singleton_matrix(h: OperatorTable) -> BoolMatrix:
    n = len(h.universe)
    return BoolMatrix(n, n, tuple(h.images[1 << i] for i in range(n)))


def non_additive_witness(h: OperatorTable) -> int | None:
    """A subset whose image is not the union of its singleton images."""
    if h.images[0] != 0:
        return 0
    for mask in range(1, len(h.images)):
        low = mask & -mask
        if h.images[mask] != h.images[low] | h.images[mask ^ low]:
            return mask
    return None


def is_representable(h: OperatorTable) -> bool:
    """H(∅) = ∅ and H(X) is the union of H({x}) over x in X."""
    return non_additive_witness(h) is None


@dataclass(frozen=True)
class AxiomResult:
    accepted: bool
    reason: str = ""
    entry: tuple[int, int] | None = None
    covering: Covering | None = None
    relation: BoolMatrix | None = None

    def __bool__(self) -> bool:
        return self.accepted


def _reject(reason: str, entry=None) -> AxiomResult:
    return AxiomResult(False, reason, entry)


def _names(universe: Universe, i: int, j: int) -> str:
    return f"({universe.name(i)},{universe.name(j)})"


def _pre(a: BoolMatrix, h: OperatorTable | None, universe: Universe | None):
    if a.rows != a.cols:
        raise ValueError(f"singleton matrix must be square, got {a.rows}x{a.cols}")
    if h is not None:
        if singleton_matrix(h) != a:
            raise ValueError("matrix is not the singleton matrix of the operator")
        universe = h.universe
    if universe is None:
        universe = Universe.numbered(a.rows)
    return universe


def _diagonal(a: BoolMatrix, universe: Universe) -> AxiomResult | None:
    for i in range(a.rows):
        if not a[i, i]:
            return _reject(f"diagonal entry {_names(universe, i, i)} is 0", (i, i))
    return None


def _additivity(h: OperatorTable | None) -> AxiomResult | None:
    if h is None:
        return None
    mask = non_additive_witness(h)
    if mask is None:
        return None
    names = ",".join(h.universe.names_of(mask))
    return _reject(f"operator is not a union of singleton images at {{{names}}}")


def _canonical(c: Covering) -> Covering:
    return Covering(c.universe, tuple(canonical_sort(c.blocks, len(c.universe))))


def _reproduces(c: Covering, kind: OpKind, a: BoolMatrix, h: OperatorTable | None) -> bool:
    n = a.rows
    for i in range(n):
        if oracle_approx(c, kind, SetVec(n, 1 << i)).bits != a.data[i]:
            return False
    if h is not None:
        return all(oracle_approx(c, kind, SetVec(n, m)).bits == img for m, img in enumerate(h.images))
    return True


def check_second_upper(
    a: BoolMatrix, h: OperatorTable | None = None, universe: Universe | None = None
) -> AxiomResult:
    """SH_C for some covering C iff A is symmetric with a unit diagonal."""
    universe = _pre(a, h, universe)
    bad = first_asymmetry(a)
    if bad is not None:
        return _reject(f"not symmetric at {_names(universe, *bad)}", bad)
    for fail in (_diagonal(a, universe), _additivity(h)):
        if fail is not None:
            return fail
    d = decompose_paper(a)
    witness = _canonical(Covering(universe, d.blocks))
    assert _reproduces(witness, OpKind.SH, a, h)
    return AxiomResult(True, covering=witness)


def check_fifth_upper(
    a: BoolMatrix, h: OperatorTable | None = None, universe: Universe | None = None
) -> AxiomResult:
    """IH_C for some covering C iff A is idempotent with a unit diagonal.

    IH({x_i}) is column i of Π(C), so the singleton matrix of IH_C is Π(C)ᵀ
    and the witness is built from the successor sets of Aᵀ.
    """
    universe = _pre(a, h, universe)
    fail = _diagonal(a, universe)
    if fail is not None:
        return fail
    square = bool_product(a, a)
    for i in range(a.rows):
        extra = square.data[i] & ~a.data[i]
        if extra:
            j = next(iter_bits(extra))
            return _reject(f"not idempotent at {_names(universe, i, j)}", (i, j))
    fail = _additivity(h)
    if fail is not None:
        return fail
    witness = _canonical(reduct(covering_from_relation(transpose(a), "preorder", universe)))
    assert _reproduces(witness, OpKind.IH, a, h)
    return AxiomResult(True, covering=witness)


def _preorders_below(a: BoolMatrix):
    """Yield every reflexive, transitive B ≤ A with B·Bᵀ = A.

    Reflexive B satisfies B ≤ B·Bᵀ (take k = j in the product), so only the
    off-diagonal 1-entries of A can appear in B. Pairs are decided in
    row-major order, excluded before included.
    """
    n = a.rows
    diag = tuple(1 << i for i in range(n))
    pairs = [(i, j) for i in range(n) for j in iter_bits(a.data[i]) if i != j]

    def product_rows(rows):
        # (B·Bᵀ)[i] = OR over k in B[i] of column k of B
        cols = [0] * n
        for i, r in enumerate(rows):
            for k in iter_bits(r):
                cols[k] |= 1 << i
        return [_or_over(cols, r) for r in rows]

    def search(idx: int, inc: list[int], exc: list[int]):
        # inc: rows of included pairs; exc: rows of pairs decided absent
        lo = product_rows(inc)
        if any(lo[i] & ~a.data[i] for i in range(n)):
            return
        hi_rows = [a.data[i] & ~exc[i] for i in range(n)]
        hi = product_rows(hi_rows)
        if any(a.data[i] & ~hi[i] for i in range(n)):
            return
        # transitivity among decided pairs
        for i in range(n):
            for k in iter_bits(inc[i]):
                if inc[k] & exc[i]:
                    return
        if idx == len(pairs):
            if all(_or_over(inc, inc[i]) == inc[i] for i in range(n)):
                yield BoolMatrix(n, n, tuple(inc))
            return
        i, j = pairs[idx]
        exc[i] |= 1 << j
        yield from search(idx + 1, inc, exc)
        exc[i] &= ~(1 << j)
        inc[i] |= 1 << j
        yield from search(idx + 1, inc, exc)
        inc[i] &= ~(1 << j)

    yield from search(0, list(diag), [0] * n)


def _or_over(rows, mask: int) -> int:
    acc = 0
    for k in iter_bits(mask):
        acc |= rows[k]
    return acc


def check_sixth_upper(
    a: BoolMatrix,
    h: OperatorTable | None = None,
    universe: Universe | None = None,
    max_n: int = DEFAULT_SIXTH_BOUND,
) -> AxiomResult:
    """XH_C for some covering C iff A = B·Bᵀ for a reflexive idempotent B.

    The witness covering has Π = Bᵀ, so its XH matrix Πᵀ·Π equals B·Bᵀ.
    """
    universe = _pre(a, h, universe)
    if a.rows > max_n:
        raise ValueError(f"sixth-upper search is limited to n <= {max_n} (got {a.rows})")
    fail = _diagonal(a, universe)
    if fail is not None:
        return fail
    bad = first_asymmetry(a)
    if bad is not None:
        return _reject(f"not symmetric at {_names(universe, *bad)}", bad)
    fail = _additivity(h)
    if fail is not None:
        return fail
    for b in _preorders_below(a):
        witness = _canonical(reduct(covering_from_relation(transpose(b), "preorder", universe)))
        assert _reproduces(witness, OpKind.XH, a, h)
        return AxiomResult(True, covering=witness, relation=b)
    return _reject("no reflexive idempotent B with B·Bᵀ = A")
