"""Exact arithmetic in groups given by triangular power-commutator tables.

Elements are integer exponent vectors x for the normal form
g1^x1 * ... * gn^xn.  Multiplication applies left collection: the letter
rewrite gj gi -> gi gj [gj, gi] (i < j) is carried out syllable-wise, so a
whole power gi^e is moved at once and the commutators it spawns are
accumulated with binomial exponents.  Concretely, conjugation by gi^e uses

    u^(gi^e) = u * c1^C(e,1) * c2^C(e,2) * ...,   c1 = [u, gi], c_{m+1} = [c_m, gi],

valid whenever consecutive chain elements commute (checked at run time;
the chain descends through the generator filtration, so it is finite).
All arithmetic is exact over arbitrary-precision integers; exponent
vectors are never reduced modulo anything.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import NilgenusError, binom_int
from .params import ParamTuple, TypeDescriptor, require_valid

Vector = tuple[int, ...]


class PCPresentation:
    """Power-commutator presentation with commutators in higher generators.

    commutators maps (i, j) with 1 <= i < j <= n to the exponent vector of
    [gj, gi]; the vector must vanish at positions <= j (central-series
    condition, which guarantees collection terminates).  Missing pairs are
    trivial.
    """

    def __init__(self, n: int, commutators: dict[tuple[int, int], Vector]):
        if n < 1:
            raise NilgenusError("need at least one generator")
        self.n = n
        zero = (0,) * n
        table: list[list[Vector]] = [[zero] * n for _ in range(n)]
        for (i, j), vec in commutators.items():
            if not (1 <= i < j <= n):
                raise NilgenusError(f"bad generator pair ({i}, {j})")
            vec = tuple(vec)
            if len(vec) != n:
                raise NilgenusError("commutator vector has wrong length")
            if any(vec[: j]):
                raise NilgenusError(
                    f"[g{j}, g{i}] must be supported above position {j}"
                )
            table[i - 1][j - 1] = vec
        self._table = table
        # First level below which everything commutes (0-based).
        ab = 0
        for i in range(n - 1, -1, -1):
            if any(any(table[i][j]) for j in range(i + 1, n)):
                ab = i + 1
                break
        self._ab = ab
        self._conj_trivial = tuple(
            not any(any(table[i][j]) for j in range(i + 1, n)) for i in range(n)
        )
        # Images of the higher generators under conjugation by g_{i+1}.
        self._phi = tuple(
            tuple(
                tuple((1 if m == j else 0) + table[i][j][m] for m in range(n))
                for j in range(n)
            )
            for i in range(n)
        )
        self._zero = zero

    @classmethod
    def from_params(cls, t: ParamTuple) -> "PCPresentation":
        require_valid(t)
        n = t.n
        comms: dict[tuple[int, int], Vector] = {}
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                vec = [0] * n
                for k in range(j + 1, n + 1):
                    vec[k - 1] = t.get(i, j, k)
                if any(vec):
                    comms[(i, j)] = tuple(vec)
        return cls(n, comms)

    def comm(self, i: int, j: int) -> Vector:
        """Exponent vector of [gj, gi] for i < j."""
        return self._table[i - 1][j - 1]

    @property
    def identity(self) -> Vector:
        return self._zero

    def _check(self, x) -> Vector:
        x = tuple(x)
        if len(x) != self.n:
            raise NilgenusError(
                f"element has length {len(x)}, presentation has {self.n} generators"
            )
        return x

    # -- engine ------------------------------------------------------------

    def _mul(self, x: Vector, y: Vector, k: int) -> Vector:
        """Normal form of x*y inside <g_{k+1}, ..., g_n> (0-based k)."""
        if k >= self._ab:
            return tuple(p + q for p, q in zip(x, y))
        a, b = x[k], y[k]
        xt = x[:k] + (0,) + x[k + 1:]
        yt = y[:k] + (0,) + y[k + 1:]
        if not any(xt):
            return yt[:k] + (a + b,) + yt[k + 1:]
        if b:
            xt = self._conj(xt, k, b)
        out = self._mul(xt, yt, k + 1)
        return out[:k] + (a + b,) + out[k + 1:]

    def _inv(self, x: Vector, k: int) -> Vector:
        if k >= self._ab:
            return tuple(-v for v in x)
        a = x[k]
        xt = x[:k] + (0,) + x[k + 1:]
        if not any(xt):
            return tuple(-v for v in x)
        ti = self._inv(xt, k + 1)
        if a and not self._conj_trivial[k]:
            ti = self._conj(ti, k, -a)
        return ti[:k] + (-a,) + ti[k + 1:]

    def _pow(self, x: Vector, e: int, k: int) -> Vector:
        if k >= self._ab:
            return tuple(v * e for v in x)
        if e == 0:
            return self._zero
        if e < 0:
            x = self._inv(x, k)
            e = -e
        res = None
        base = x
        while True:
            if e & 1:
                res = base if res is None else self._mul(res, base, k)
            e >>= 1
            if not e:
                return res
            base = self._mul(base, base, k)

    def _apply_phi(self, i: int, u: Vector) -> Vector:
        """Image of u under conjugation by g_{i+1} (u supported above i)."""
        res = self._zero
        phi = self._phi[i]
        for j in range(i + 1, self.n):
            if u[j]:
                res = self._mul(res, self._pow(phi[j], u[j], i + 1), i + 1)
        return res

    def _conj(self, u: Vector, i: int, e: int) -> Vector:
        """Normal form of g_{i+1}^-e * u * g_{i+1}^e."""
        if e == 0 or self._conj_trivial[i] or not any(u):
            return u
        chain: list[Vector] = []
        c = u
        for _ in range(self.n):
            fc = self._apply_phi(i, c)
            ci = self._mul(self._inv(c, i + 1), fc, i + 1)
            if not any(ci):
                break
            chain.append(ci)
            c = ci
        else:
            raise NilgenusError("commutator chain did not terminate")
        if any(self._support_start(ci) < self._ab for ci in chain):
            for a, b in zip(chain, chain[1:]):
                if self._mul(a, b, i + 1) != self._mul(b, a, i + 1):
                    raise NilgenusError(
                        "presentation outside the supported class: "
                        "conjugation chain does not commute"
                    )
        res = u
        for m, ci in enumerate(chain, 1):
            res = self._mul(res, self._pow(ci, binom_int(e, m), i + 1), i + 1)
        return res

    def _support_start(self, x: Vector) -> int:
        for idx, v in enumerate(x):
            if v:
                return idx
        return self.n

    # -- public operations ---------------------------------------------------

    def multiply(self, x, y) -> Vector:
        return self._mul(self._check(x), self._check(y), 0)

    def inverse(self, x) -> Vector:
        return self._inv(self._check(x), 0)

    def power(self, x, e: int) -> Vector:
        return self._pow(self._check(x), e, 0)

    def commutator(self, x, y) -> Vector:
        """Normal form of x^-1 y^-1 x y."""
        x = self._check(x)
        y = self._check(y)
        return self._mul(
            self._mul(self._inv(x, 0), self._inv(y, 0), 0), self._mul(x, y, 0), 0
        )

    def generator(self, i: int) -> Vector:
        if not 1 <= i <= self.n:
            raise NilgenusError(f"no generator g{i}")
        return tuple(1 if j == i - 1 else 0 for j in range(self.n))


def det_int(rows: tuple[Vector, ...]) -> int:
    """Exact determinant by cofactor expansion (matrices here are tiny)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for col in range(n):
        if rows[0][col] == 0:
            continue
        minor = tuple(r[:col] + r[col + 1:] for r in rows[1:])
        sign = -1 if col % 2 else 1
        total += sign * rows[0][col] * det_int(minor)
    return total


@dataclass(frozen=True)
class CandidateMatrix:
    """Integer matrix of candidate generator images, row i = image of gi."""

    rows: tuple[Vector, ...]
    source_type: TypeDescriptor
    target_type: TypeDescriptor

    def __post_init__(self):
        if self.source_type.type_id != self.target_type.type_id:
            raise NilgenusError("candidate maps are only formed within one type")
        n = self.source_type.hirsch_length
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise NilgenusError(f"candidate matrix must be {n}x{n}")

    def check_shape(self) -> None:
        mask = self.source_type.shape_mask
        for i, row in enumerate(self.rows):
            for j, value in enumerate(row):
                if value and not mask[i][j]:
                    raise NilgenusError(
                        f"matrix entry ({i + 1},{j + 1}) must vanish for "
                        f"type ({self.source_type.type_id})"
                    )


@dataclass(frozen=True)
class MapReport:
    """Outcome of testing a candidate generator-image matrix."""

    residuals: dict[tuple[int, int], Vector]
    determinant: int
    is_homomorphism: bool
    is_z_isomorphism_candidate: bool

    def to_json_dict(self) -> dict:
        return {
            "is_homomorphism": self.is_homomorphism,
            "determinant": self.determinant,
            "is_z_isomorphism_candidate": self.is_z_isomorphism_candidate,
            "residuals": {
                f"[g{j},g{i}]": list(vec) for (i, j), vec in sorted(self.residuals.items())
            },
        }


def check_candidate_map(
    pres_t: PCPresentation, pres_s: PCPresentation, matrix: CandidateMatrix
) -> MapReport:
    """Test whether mapping gi to the word with exponents matrix.rows[i-1]
    sends every defining commutator relation of pres_t to a relation that
    holds in pres_s.

    For each relation [gj, gi] = w the report stores the exponent-vector
    difference between the image of the left side and the image of w;
    the map is a homomorphism exactly when every difference vanishes, and
    an isomorphism candidate over the integers when additionally the
    matrix has determinant +-1.
    """
    if pres_t.n != pres_s.n:
        raise NilgenusError("presentations must have the same length")
    matrix.check_shape()
    n = pres_t.n
    rows = matrix.rows
    residuals: dict[tuple[int, int], Vector] = {}
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            lhs = pres_s.commutator(rows[j - 1], rows[i - 1])
            rhs = pres_s.identity
            w = pres_t.comm(i, j)
            for m in range(j, n):
                if w[m]:
                    rhs = pres_s.multiply(rhs, pres_s.power(rows[m], w[m]))
            residuals[(i, j)] = tuple(a - b for a, b in zip(lhs, rhs))
    det = det_int(rows)
    is_hom = all(not any(vec) for vec in residuals.values())
    return MapReport(
        residuals=residuals,
        determinant=det,
        is_homomorphism=is_hom,
        is_z_isomorphism_candidate=is_hom and det in (1, -1),
    )
