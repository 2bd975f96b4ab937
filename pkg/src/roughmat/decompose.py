"""Symmetric boolean factorization ``B = A·Aᵀ``.

A sub-formula is the all-ones square ``X × X`` inside B, i.e. a clique with
loops in the support graph of B. ``decompose_paper`` returns every maximal
sub-formula; ``decompose_exact`` picks a minimum number of them covering all
1-entries (an edge clique cover), which can be strictly smaller.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .boolmat import BoolMatrix, ShapeError, bool_product, first_asymmetry, iter_bits, transpose
from .covering import canonical_sort

DEFAULT_EXACT_BOUND = 24


class NotDecomposableError(ValueError):
    """No A with B = A·Aᵀ exists."""

    def __init__(self, reason: str, entry: tuple[int, int]):
        super().__init__(reason)
        self.reason = reason
        self.entry = entry


class ExactBoundError(ValueError):
    pass


def _label(i: int, j: int) -> str:
    if i < 9 and j < 9:
        return f"{i + 1}{j + 1}"
    return f"{i + 1},{j + 1}"


def _check_square(b: BoolMatrix):
    if b.rows != b.cols:
        raise ShapeError(f"expected a square matrix, got {b.rows}x{b.cols}")


def violation(b: BoolMatrix) -> NotDecomposableError | None:
    """The first broken feasibility condition of B, or None when B factors."""
    _check_square(b)
    bad = first_asymmetry(b)
    if bad is not None:
        i, j = bad
        return NotDecomposableError(f"not symmetric at ({i + 1},{j + 1})", bad)
    for i, r in enumerate(b.data):
        if r and not (r >> i) & 1:
            j = next(iter_bits(r))
            return NotDecomposableError(f"B_{_label(i, j)}=1 but B_{_label(i, i)}=0", (i, j))
    return None


def is_decomposable(b: BoolMatrix) -> bool:
    """B is symmetric and every nonzero row has its diagonal entry set."""
    return violation(b) is None


@dataclass(frozen=True)
class SubFormula:
    n: int
    vertices: int

    @property
    def matrix(self) -> BoolMatrix:
        v = self.vertices
        return BoolMatrix(self.n, self.n, tuple(v if (v >> i) & 1 else 0 for i in range(self.n)))

    def indices(self) -> list[int]:
        return list(iter_bits(self.vertices))


def subformula_union(n: int, blocks) -> BoolMatrix:
    rows = [0] * n
    for v in blocks:
        for i in iter_bits(v):
            rows[i] |= v
    return BoolMatrix(n, n, tuple(rows))


def _support_cliques(b: BoolMatrix) -> list[int]:
    """Maximal X with X × X ≤ B, by Bron-Kerbosch with pivoting on row bitsets."""
    n = b.rows
    looped = sum(1 << i for i in range(n) if (b.data[i] >> i) & 1)
    t = transpose(b)
    adj = [(b.data[i] & t.data[i] & looped) & ~(1 << i) if (looped >> i) & 1 else 0 for i in range(n)]
    out = []

    def expand(r: int, p: int, x: int):
        if not p:
            if not x:
                out.append(r)
            return
        pivot = max(iter_bits(p | x), key=lambda u: (p & adj[u]).bit_count())
        for v in iter_bits(p & ~adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    if looped:
        expand(0, looped, 0)
    return canonical_sort(out, n)


def maximal_subformulas(b: BoolMatrix) -> list[SubFormula]:
    err = violation(b)
    if err is not None:
        raise err
    return [SubFormula(b.rows, v) for v in _support_cliques(b)]


@dataclass(frozen=True)
class Decomposition:
    """Blocks K_1..K_m whose sub-formulas union to ``target``."""

    target: BoolMatrix
    blocks: tuple[int, ...]
    mode: str

    def __post_init__(self):
        n = self.target.rows
        if any(v == 0 for v in self.blocks):
            raise ValueError("decomposition blocks must be nonempty")
        if len(set(self.blocks)) != len(self.blocks):
            raise ValueError("decomposition blocks must be distinct")
        if any(v >> n for v in self.blocks):
            raise ValueError("block outside the index range")
        if subformula_union(n, self.blocks) != self.target:
            raise ValueError("blocks do not reproduce the target matrix")

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def matrix(self) -> BoolMatrix:
        """A with column j the characteristic vector of block j.

        The zero matrix has no blocks; it is returned as a single zero column
        since a matrix needs at least one column.
        """
        n = self.target.rows
        if not self.blocks:
            return BoolMatrix.zeros(n, 1)
        return BoolMatrix.from_columns(n, self.blocks)


def verify_decomposition(b: BoolMatrix, d: Decomposition) -> bool:
    if d.target.shape != b.shape:
        return False
    a = d.matrix
    return bool_product(a, transpose(a)) == b


def decompose_paper(b: BoolMatrix) -> Decomposition:
    """All maximal sub-formulas, when their union is B."""
    _check_square(b)
    cliques = _support_cliques(b)
    if subformula_union(b.rows, cliques) != b:
        err = violation(b)
        assert err is not None
        raise err
    return Decomposition(b, tuple(cliques), "paper")


class _Cover:
    """Set cover of the upper-triangle 1-entries of B by maximal cliques."""

    def __init__(self, b: BoolMatrix, cliques: list[int]):
        n = b.rows
        index = {}
        for i in range(n):
            for j in iter_bits(b.data[i] >> i):
                index[(i, i + j)] = len(index)
        self.universe = (1 << len(index)) - 1
        self.cover = []
        for v in cliques:
            members = list(iter_bits(v))
            mask = 0
            for a, i in enumerate(members):
                for j in members[a:]:
                    mask |= 1 << index[(i, j)]
            self.cover.append(mask)
        self.by_elem = [0] * len(index)
        for c, mask in enumerate(self.cover):
            for e in iter_bits(mask):
                self.by_elem[e] |= 1 << c

    def lower_bound(self, uncovered: int, allowed: int) -> int:
        # elements pairwise sharing no allowed clique each need their own clique
        used = 0
        count = 0
        for e in iter_bits(uncovered):
            opts = self.by_elem[e] & allowed
            if not opts & used:
                used |= opts
                count += 1
        return count

    def feasible(self, uncovered: int, k: int, allowed: int) -> bool:
        if not uncovered:
            return True
        if k == 0 or self.lower_bound(uncovered, allowed) > k:
            return False
        best_e, best_opts = -1, None
        for e in iter_bits(uncovered):
            opts = self.by_elem[e] & allowed
            if best_opts is None or opts.bit_count() < best_opts.bit_count():
                best_e, best_opts = e, opts
                if opts.bit_count() <= 1:
                    break
        for c in iter_bits(best_opts):
            if self.feasible(uncovered & ~self.cover[c], k - 1, allowed):
                return True
        return False

    def minimum(self) -> list[int]:
        ncl = len(self.cover)
        everything = (1 << ncl) - 1
        k = max(self.lower_bound(self.universe, everything), 1 if self.universe else 0)
        while not self.feasible(self.universe, k, everything):
            k += 1
        # lexicographically smallest index list among covers of size k
        chosen = []
        uncovered = self.universe
        start = 0
        for pos in range(k):
            for c in range(start, ncl):
                if not self.cover[c] & uncovered:
                    continue
                rest = everything & ~((1 << (c + 1)) - 1)
                if self.feasible(uncovered & ~self.cover[c], k - pos - 1, rest):
                    chosen.append(c)
                    uncovered &= ~self.cover[c]
                    start = c + 1
                    break
        assert not uncovered and len(chosen) == k
        return chosen


def exact_bound() -> int:
    raw = os.environ.get("RM_EXACT_BOUND")
    return int(raw) if raw else DEFAULT_EXACT_BOUND


def decompose_exact(b: BoolMatrix, max_vertices: int | None = None) -> Decomposition:
    """A decomposition with the fewest possible columns.

    Any clique extends to a maximal one, so some minimum cover uses only
    maximal sub-formulas. Among minimum covers the lexicographically smallest
    list of canonically ordered blocks is returned.
    """
    _check_square(b)
    bound = exact_bound() if max_vertices is None else max_vertices
    if b.rows > bound:
        raise ExactBoundError(
            f"exact mode is limited to {bound} vertices (got {b.rows}); "
            "use paper or greedy mode, or raise RM_EXACT_BOUND"
        )
    err = violation(b)
    if err is not None:
        raise err
    cliques = _support_cliques(b)
    picked = _Cover(b, cliques).minimum()
    return Decomposition(b, tuple(cliques[c] for c in picked), "exact")


def decompose_greedy(b: BoolMatrix) -> Decomposition:
    """Greedy cover over maximal sub-formulas; not guaranteed minimum."""
    _check_square(b)
    err = violation(b)
    if err is not None:
        raise err
    cliques = _support_cliques(b)
    sc = _Cover(b, cliques)
    uncovered = sc.universe
    picked = []
    while uncovered:
        c = max(range(len(cliques)), key=lambda c: ((sc.cover[c] & uncovered).bit_count(), -c))
        picked.append(c)
        uncovered &= ~sc.cover[c]
    return Decomposition(b, tuple(cliques[c] for c in sorted(picked)), "greedy")
