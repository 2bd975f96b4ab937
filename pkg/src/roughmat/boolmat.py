"""Bit-packed boolean matrices.

Each row is stored as a Python int whose bit ``j`` holds entry ``(i, j)``,
so the boolean product and the ``odot`` composition reduce to word-level
AND/OR over row bitsets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class ShapeError(ValueError):
    pass


class NotBooleanError(ValueError):
    """Raised when a {0,1,2} matrix holding a 2 is forced into {0,1}."""

    def __init__(self, i: int, j: int):
        super().__init__(f"entry ({i},{j}) equals 2; matrix is not boolean")
        self.i = i
        self.j = j


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class BoolMatrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ShapeError(f"empty shape {self.rows}x{self.cols}")
        if len(self.data) != self.rows:
            raise ShapeError(f"expected {self.rows} rows, got {len(self.data)}")
        limit = 1 << self.cols
        for i, r in enumerate(self.data):
            if r < 0 or r >= limit:
                raise ValueError(f"row {i} has bits outside {self.cols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> BoolMatrix:
        if not rows:
            raise ShapeError("matrix needs at least one row")
        ncols = len(rows[0])
        packed = []
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ShapeError(f"row {i} has {len(row)} entries, expected {ncols}")
            word = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise ValueError(f"entry ({i},{j}) = {v!r} is not 0/1")
                if v:
                    word |= 1 << j
            packed.append(word)
        return cls(len(rows), ncols, tuple(packed))

    @classmethod
    def from_strings(cls, *lines: str) -> BoolMatrix:
        """Build from row strings such as ``"1 0 1"`` or ``"101"``."""
        return cls.from_rows([[int(c) for c in line if c in "01"] for line in lines])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BoolMatrix:
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> BoolMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, rows: int, cols: int) -> BoolMatrix:
        return cls(rows, cols, ((1 << cols) - 1,) * rows)

    @classmethod
    def from_columns(cls, n: int, columns: Sequence[int]) -> BoolMatrix:
        """Build an n x len(columns) matrix from column bitsets (bit i = row i)."""
        data = [0] * n
        for j, col in enumerate(columns):
            for i in _bits(col):
                if i >= n:
                    raise ValueError(f"column {j} has bits beyond {n} rows")
                data[i] |= 1 << j
        return cls(n, len(columns), tuple(data))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i},{j}) outside {self.rows}x{self.cols}")
        return (self.data[i] >> j) & 1

    def row(self, i: int) -> int:
        return self.data[i]

    def column(self, j: int) -> int:
        bit = 1 << j
        return sum(1 << i for i, r in enumerate(self.data) if r & bit)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def count(self) -> int:
        return sum(r.bit_count() for r in self.data)

    @property
    def T(self) -> BoolMatrix:
        return transpose(self)

    def __matmul__(self, other: BoolMatrix) -> BoolMatrix:
        return bool_product(self, other)

    def __or__(self, other: BoolMatrix) -> BoolMatrix:
        return union(self, other)

    def __le__(self, other: BoolMatrix) -> bool:
        return leq(self, other)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.to_lists())


@dataclass(frozen=True)
class TriMatrix:
    """Matrix over {0, 1, 2}; the raw result of :func:`odot`."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ShapeError("entries do not match declared shape")
        for i, r in enumerate(self.entries):
            for j, v in enumerate(r):
                if v not in (0, 1, 2):
                    raise ValueError(f"entry ({i},{j}) = {v!r} not in {{0,1,2}}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> TriMatrix:
        return cls(len(rows), len(rows[0]), tuple(tuple(r) for r in rows))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]


@dataclass(frozen=True)
class SetVec:
    """Characteristic column vector of a subset; bit i set iff element i is in."""

    len: int
    bits: int = 0

    def __post_init__(self):
        if self.len < 1:
            raise ShapeError("set vector needs positive length")
        if self.bits < 0 or self.bits >> self.len:
            raise ValueError(f"bits outside length {self.len}")

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> SetVec:
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise IndexError(f"index {i} outside 0..{n - 1}")
            bits |= 1 << i
        return cls(n, bits)

    @classmethod
    def from_column(cls, m: BoolMatrix) -> SetVec:
        if m.cols != 1:
            raise ShapeError(f"expected a column, got {m.rows}x{m.cols}")
        return cls(m.rows, sum((r & 1) << i for i, r in enumerate(m.data)))

    def as_column(self) -> BoolMatrix:
        return BoolMatrix(self.len, 1, tuple((self.bits >> i) & 1 for i in range(self.len)))

    def indices(self) -> list[int]:
        return sorted(_bits(self.bits))

    def complement(self) -> SetVec:
        return SetVec(self.len, ((1 << self.len) - 1) & ~self.bits)

    def __contains__(self, i: int) -> bool:
        return bool((self.bits >> i) & 1)

    def __le__(self, other: SetVec) -> bool:
        return self.bits & ~other.bits == 0


def _check_inner(a, b):
    if a.cols != b.rows:
        raise ShapeError(f"inner dimensions disagree: {a.rows}x{a.cols} and {b.rows}x{b.cols}")


def _check_same(a: BoolMatrix, b: BoolMatrix):
    if a.shape != b.shape:
        raise ShapeError(f"shapes differ: {a.rows}x{a.cols} and {b.rows}x{b.cols}")


def transpose(a: BoolMatrix) -> BoolMatrix:
    return BoolMatrix(a.cols, a.rows, tuple(a.column(j) for j in range(a.cols)))


def bool_product(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """Boolean (OR-AND) product: row i of the result is the OR of the rows
    of ``b`` selected by row i of ``a``."""
    _check_inner(a, b)
    out = []
    for r in a.data:
        acc = 0
        for k in _bits(r):
            acc |= b.data[k]
        out.append(acc)
    return BoolMatrix(a.rows, b.cols, tuple(out))


def odot(a: BoolMatrix, b: BoolMatrix) -> TriMatrix:
    """Entrywise ``min_k (b[k,j] - a[i,k] + 1)``.

    An entry is 2 only when row i of ``a`` is empty and column j of ``b`` is
    full; otherwise it is 1 exactly when row i of ``a`` is contained in
    column j of ``b``.
    """
    _check_inner(a, b)
    full = (1 << a.cols) - 1
    bcols = [b.column(j) for j in range(b.cols)]
    out = []
    for r in a.data:
        if r == 0:
            out.append(tuple(2 if c == full else 1 for c in bcols))
        else:
            out.append(tuple(1 if r & ~c == 0 else 0 for c in bcols))
    return TriMatrix(a.rows, b.cols, tuple(out))


def to_boolean(t: TriMatrix) -> BoolMatrix:
    for i, r in enumerate(t.entries):
        for j, v in enumerate(r):
            if v == 2:
                raise NotBooleanError(i, j)
    return BoolMatrix.from_rows(t.entries)


def union(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    _check_same(a, b)
    return BoolMatrix(a.rows, a.cols, tuple(x | y for x, y in zip(a.data, b.data)))


def leq(a: BoolMatrix, b: BoolMatrix) -> bool:
    _check_same(a, b)
    return all(x & ~y == 0 for x, y in zip(a.data, b.data))


def _check_square(a: BoolMatrix):
    if a.rows != a.cols:
        raise ShapeError(f"expected a square matrix, got {a.rows}x{a.cols}")


def is_symmetric(a: BoolMatrix) -> bool:
    _check_square(a)
    return transpose(a) == a


def is_reflexive(a: BoolMatrix) -> bool:
    _check_square(a)
    return all((r >> i) & 1 for i, r in enumerate(a.data))


diag_all_ones = is_reflexive


def is_idempotent(a: BoolMatrix) -> bool:
    _check_square(a)
    return bool_product(a, a) == a


def is_transitive(a: BoolMatrix) -> bool:
    _check_square(a)
    return leq(bool_product(a, a), a)


def predicates(a: BoolMatrix) -> dict[str, bool]:
    _check_square(a)
    refl = is_reflexive(a)
    return {
        "symmetric": is_symmetric(a),
        "diag_all_ones": refl,
        "idempotent": is_idempotent(a),
        "transitive": is_transitive(a),
        "reflexive": refl,
    }


def first_asymmetry(a: BoolMatrix) -> tuple[int, int] | None:
    """First (i, j) in row-major order with a[i,j] != a[j,i], or None."""
    _check_square(a)
    t = transpose(a)
    for i in range(a.rows):
        diff = a.data[i] ^ t.data[i]
        if diff:
            return i, next(_bits(diff))
    return None


def reflexive_transitive_closure(a: BoolMatrix) -> BoolMatrix:
    _check_square(a)
    rows = [r | (1 << i) for i, r in enumerate(a.data)]
    # Warshall over row bitsets
    for k in range(a.rows):
        bit = 1 << k
        rk = rows[k]
        for i in range(a.rows):
            if rows[i] & bit:
                rows[i] |= rk
    return BoolMatrix(a.rows, a.cols, tuple(rows))


def iter_bits(x: int):
    """Yield set bit positions of ``x`` in increasing order."""
    return _bits(x)
