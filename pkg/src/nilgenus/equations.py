"""Closed-form relation systems for candidate generator-image matrices.

For each family there is a known polynomial system in the entries of a
shape-restricted matrix M that vanishes exactly when the rows of M, read
as generator images, satisfy the source presentation's relations in the
target presentation.  These systems are used as an independent oracle
against the collection engine: both must agree on whether a matrix is a
relation-preserving map.

The systems are evaluated in exact integer arithmetic.  They contain
inverses of the diagonal entries and divisions by 2 and 6, so callers
must supply matrices whose diagonal entries are +1 or -1; then every
inverse is the entry itself and every division is exact.
"""

from __future__ import annotations

from .arith import NilgenusError, exact_div
from .params import T211, T311, T2111, T212, ParamTuple

Rows = tuple[tuple[int, ...], ...]


def _entry(rows: Rows, i: int, j: int) -> int:
    return rows[i - 1][j - 1]


def _check_diagonal(rows: Rows) -> None:
    for i in range(1, len(rows) + 1):
        if _entry(rows, i, i) not in (1, -1):
            raise NilgenusError(
                "relation systems need diagonal entries +1 or -1 "
                f"(entry ({i},{i}) is {_entry(rows, i, i)})"
            )


def relation_system_residuals(
    source: ParamTuple, target: ParamTuple, rows: Rows
) -> tuple[int, ...]:
    """Residuals of the per-family relation system, one integer per equation.

    source supplies the relations being mapped, target the presentation the
    images live in; all residuals vanish iff rows defines a relation
    preserving map.  Requires source and target of the same family and a
    matrix with +-1 diagonal.
    """
    if source.type_id != target.type_id:
        raise NilgenusError("relation systems are defined within one family")
    _check_diagonal(rows)
    fn = {
        T211: _system_211,
        T311: _system_311,
        T2111: _system_2111,
        T212: _system_212,
    }[source.type_id]
    return fn(source, target, rows)


def _system_211(source: ParamTuple, target: ParamTuple, rows: Rows) -> tuple[int, ...]:
    t123, t134, t124 = source.get(1, 2, 3), source.get(1, 3, 4), source.get(1, 2, 4)
    s123, s134, s124 = target.get(1, 2, 3), target.get(1, 3, 4), target.get(1, 2, 4)
    m = lambda i, j: _entry(rows, i, j)
    i1, i2, i3 = m(1, 1), m(2, 2), m(3, 3)  # equal to their own inverses
    half = exact_div(m(1, 1) - 1, 2)
    return (
        t123 * i1 * i2 * m(3, 3) - s123,
        t134 * i1 * i3 * m(4, 4) - s134,
        t124 * i1 * i2 * m(4, 4)
        - s124
        - (s123 * (s134 * half - i3 * m(3, 4)) + s134 * i2 * m(2, 3)),
    )


def _system_311(source: ParamTuple, target: ParamTuple, rows: Rows) -> tuple[int, ...]:
    tg = source.get
    sg = target.get
    t124, t145, t235, t135, t125 = (
        tg(1, 2, 4), tg(1, 4, 5), tg(2, 3, 5), tg(1, 3, 5), tg(1, 2, 5),
    )
    s124, s145, s235, s135, s125 = (
        sg(1, 2, 4), sg(1, 4, 5), sg(2, 3, 5), sg(1, 3, 5), sg(1, 2, 5),
    )
    m = lambda i, j: _entry(rows, i, j)
    i1, i2, i3, i4 = m(1, 1), m(2, 2), m(3, 3), m(4, 4)
    half = exact_div(m(1, 1) - 1, 2)
    return (
        t124 * i1 * i2 * m(4, 4) - s124,
        t145 * i1 * i4 * m(5, 5) - s145,
        t235 * i2 * i3 * m(5, 5) - s235,
        t135 * i1 * i3 * m(5, 5)
        - s135
        - (s145 * i3 * m(3, 4) + s235 * i1 * m(1, 2)),
        t125 * i1 * i2 * m(5, 5)
        - s125
        - (
            s124 * (s145 * half - i4 * m(4, 5))
            + s135 * i2 * m(2, 3)
            + s145 * i2 * m(2, 4)
            + s235 * (i1 * i2 * m(1, 2) * m(2, 3) - i1 * m(1, 3))
        ),
    )


def _system_2111(source: ParamTuple, target: ParamTuple, rows: Rows) -> tuple[int, ...]:
    tg = source.get
    sg = target.get
    t123, t134, t145, t235 = tg(1, 2, 3), tg(1, 3, 4), tg(1, 4, 5), tg(2, 3, 5)
    t124, t135, t125 = tg(1, 2, 4), tg(1, 3, 5), tg(1, 2, 5)
    s123, s134, s145, s235 = sg(1, 2, 3), sg(1, 3, 4), sg(1, 4, 5), sg(2, 3, 5)
    s124, s135, s125 = sg(1, 2, 4), sg(1, 3, 5), sg(1, 2, 5)
    m = lambda i, j: _entry(rows, i, j)
    i1, i2, i3, i4 = m(1, 1), m(2, 2), m(3, 3), m(4, 4)
    half1 = exact_div(m(1, 1) - 1, 2)
    half2 = exact_div(m(2, 2) - 1, 2)
    sixth = exact_div((m(1, 1) - 1) * (m(1, 1) - 2), 6)
    v = s123 * (m(1, 1) - 1) + i2 * m(2, 3)
    w = s134 * half1 + i3 * m(3, 4)
    x = -i4 * m(4, 5)
    y = i1 * m(1, 2)
    z1 = (
        s134 * s145 * sixth
        + s134 * i4 * m(4, 5) * half1
        - s135 * half1
        + s235 * m(1, 2)
        + s235 * half2
        + i3 * (i4 * m(3, 4) * m(4, 5) - m(3, 5))
    )
    z2 = s124 * half1 + s134 * i2 * m(2, 3) * half1 + i2 * m(2, 4)
    z3 = i1 * (i2 * m(1, 2) * m(2, 3) - m(1, 3))
    return (
        t123 * i1 * i2 * m(3, 3) - s123,
        t134 * i1 * i3 * m(4, 4) - s134,
        t145 * i1 * i4 * m(5, 5) - s145,
        t235 * i2 * i3 * m(5, 5) - s235,
        t124 * i1 * i2 * m(4, 4) - s124 - (s134 * v - s123 * w),
        t135 * i1 * i3 * m(5, 5) - s135 - (s134 * x + s145 * w + s235 * y),
        t125 * i1 * i2 * m(5, 5)
        - s125
        - (s124 * x + s134 * v * x + s135 * v + s123 * z1 + s145 * z2 + s235 * z3),
    )


def _system_212(source: ParamTuple, target: ParamTuple, rows: Rows) -> tuple[int, ...]:
    tg = source.get
    sg = target.get
    t123, t134, t235, t124, t125 = (
        tg(1, 2, 3), tg(1, 3, 4), tg(2, 3, 5), tg(1, 2, 4), tg(1, 2, 5),
    )
    s123, s134, s235, s124, s125 = (
        sg(1, 2, 3), sg(1, 3, 4), sg(2, 3, 5), sg(1, 2, 4), sg(1, 2, 5),
    )
    m = lambda i, j: _entry(rows, i, j)
    det1 = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)
    i3 = m(3, 3)
    x = s134 * exact_div(
        m(1, 1) ** 2 * m(2, 2) - m(1, 2) * m(2, 1) ** 2 - det1, 2
    ) - det1 * i3 * m(3, 4)
    y = s235 * exact_div(
        m(1, 1) * m(2, 2) ** 2
        - m(1, 2) ** 2 * m(2, 1)
        - det1
        + 2 * m(1, 2) * m(2, 2) * (m(1, 1) - m(2, 1)),
        2,
    ) - det1 * i3 * m(3, 5)
    return (
        t123 * m(3, 3) - s123 * det1,
        t134 * m(4, 4) - m(3, 3) * m(1, 1) * s134,
        t134 * m(4, 5) - m(3, 3) * m(1, 2) * s235,
        t235 * m(5, 4) - m(3, 3) * m(2, 1) * s134,
        t235 * m(5, 5) - m(3, 3) * m(2, 2) * s235,
        t124 * m(4, 4)
        + t125 * m(5, 4)
        - s124 * det1
        - (s134 * (m(2, 3) * m(1, 1) - m(1, 3) * m(2, 1)) + s123 * x),
        t124 * m(4, 5)
        + t125 * m(5, 5)
        - s125 * det1
        - (s235 * (m(2, 3) * m(1, 2) - m(1, 3) * m(2, 2)) + s123 * y),
    )
