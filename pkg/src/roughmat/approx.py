"""The second, fifth and sixth covering approximation operators.

Every operator exists twice: :func:`oracle_approx` evaluates it from the
neighborhood and block sets directly, :func:`matrix_approx` evaluates it with
the characteristic matrices. The test suite holds the two routes equal.
"""
from __future__ import annotations

from enum import Enum
from functools import lru_cache

from .boolmat import BoolMatrix, SetVec, ShapeError, bool_product, odot, to_boolean, transpose
from .covering import Covering, gamma, neighborhood_bits, pi


class OpKind(str, Enum):
    SH = "SH"
    SL = "SL"
    IH = "IH"
    IL = "IL"
    XH = "XH"
    XL = "XL"

    @classmethod
    def parse(cls, text: str) -> OpKind:
        return cls(text.upper())

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str) and value.upper() in cls.__members__:
            return cls[value.upper()]
        return None

    @property
    def is_upper(self) -> bool:
        return self.value.endswith("H")


def _check_len(c: Covering, x: SetVec):
    if x.len != len(c.universe):
        raise ShapeError(f"set has length {x.len}, universe has {len(c.universe)} elements")


def _sh(c: Covering, x: int) -> int:
    out = 0
    for k in c.blocks:
        if k & x:
            out |= k
    return out


def _xh(nbr, x: int) -> int:
    out = 0
    for nb in nbr:
        if nb & x:
            out |= nb
    return out


def oracle_approx(c: Covering, kind: OpKind | str, x: SetVec) -> SetVec:
    """Evaluate an operator straight from blocks and neighborhoods.

    XL is taken as the dual of XH, ``U - XH(U - X)``: an element survives
    only if every neighborhood containing it lies inside X. This is the
    operator the matrix formula computes and the one the worked tables list.
    """
    kind = OpKind(kind)
    _check_len(c, x)
    full = c.universe.full
    xb = x.bits
    _, nbr = neighborhood_bits(c)
    if kind is OpKind.SH:
        out = _sh(c, xb)
    elif kind is OpKind.SL:
        out = full & ~_sh(c, full & ~xb)
    elif kind is OpKind.IH:
        out = sum(1 << i for i, nb in enumerate(nbr) if nb & xb)
    elif kind is OpKind.IL:
        out = sum(1 << i for i, nb in enumerate(nbr) if nb & ~xb == 0)
    elif kind is OpKind.XH:
        out = _xh(nbr, xb)
    else:
        out = full & ~_xh(nbr, full & ~xb)
    return SetVec(x.len, out)


def xl_union_of_contained(c: Covering, x: SetVec) -> SetVec:
    """Union of the neighborhoods contained in X.

    Differs from ``oracle_approx(c, "XL", x)`` in general; kept so the two
    readings of the sixth lower operator can be compared.
    """
    _check_len(c, x)
    _, nbr = neighborhood_bits(c)
    out = 0
    for nb in nbr:
        if nb & ~x.bits == 0:
            out |= nb
    return SetVec(x.len, out)


def sh_via_indiscernible(c: Covering, x: SetVec) -> SetVec:
    """``{x : I(x) meets X}``, the identity the SH matrix formula rests on."""
    _check_len(c, x)
    ind, _ = neighborhood_bits(c)
    return SetVec(x.len, sum(1 << i for i, b in enumerate(ind) if b & x.bits))


@lru_cache(maxsize=256)
def sixth_matrix(c: Covering) -> BoolMatrix:
    """``Πᵀ·Π``, the type-1 matrix of the neighborhood covering."""
    p = pi(c)
    return bool_product(transpose(p), p)


def _upper(m: BoolMatrix, x: SetVec) -> SetVec:
    return SetVec.from_column(bool_product(m, x.as_column()))


def _lower(m: BoolMatrix, x: SetVec) -> SetVec:
    # m has a unit diagonal here, so odot never yields a 2
    return SetVec.from_column(to_boolean(odot(m, x.as_column())))


def matrix_approx(c: Covering, kind: OpKind | str, x: SetVec) -> SetVec:
    kind = OpKind(kind)
    _check_len(c, x)
    if kind is OpKind.SH:
        return _upper(gamma(c), x)
    if kind is OpKind.SL:
        return _lower(gamma(c), x)
    if kind is OpKind.IH:
        return _upper(pi(c), x)
    if kind is OpKind.IL:
        return _lower(pi(c), x)
    if kind is OpKind.XH:
        return _upper(sixth_matrix(c), x)
    return _lower(sixth_matrix(c), x)


def cov_of(c: Covering) -> Covering:
    """Covering by the distinct neighborhoods, in element order."""
    _, nbr = neighborhood_bits(c)
    seen = []
    for nb in nbr:
        if nb not in seen:
            seen.append(nb)
    return Covering(c.universe, tuple(seen))
