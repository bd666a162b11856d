"""The finite pair rectangle for family (2,1,2) and its matrix actions.

For positive a | b and c, the rectangle holds all pairs (x, y) with
x < gcd(a, c) and y < gcd(b, c).  Invertible 2x2 matrices whose
upper-right entry is divisible by k = b/a act on it by row-vector
multiplication with independent reduction of the two coordinates.  Local
(one-prime) orbit equivalence, which drives the finite-quotient decision,
admits a four-residue criterion; global integer orbits, which drive
canonical representatives, are computed by bounded-entry closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .arith import NilgenusError, is_prime, p_valuation

Point = tuple[int, int]
Matrix = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class OrbitSpace:
    a: int
    b: int
    c: int
    k: int   # b // a
    m1: int  # gcd(a, c)
    m2: int  # gcd(b, c)

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(product(range(self.m1), range(self.m2)))

    def reduce(self, point: Point) -> Point:
        return (point[0] % self.m1, point[1] % self.m2)


def build_orbit_space(a: int, b: int, c: int) -> OrbitSpace:
    import math

    if a <= 0 or b <= 0 or c <= 0:
        raise NilgenusError("rectangle parameters must be positive")
    if b % a:
        raise NilgenusError(f"{a} must divide {b}")
    return OrbitSpace(a, b, c, b // a, math.gcd(a, c), math.gcd(b, c))


def apply_dk_matrix(space: OrbitSpace, point: Point, matrix: Matrix) -> Point:
    """Image of a row vector under the matrix, coordinates reduced
    independently modulo (m1, m2); the upper-right entry must be a
    multiple of k, which is what makes the action well defined."""
    (m11, m12), (m21, m22) = matrix
    if m12 % space.k:
        raise NilgenusError(
            f"upper-right entry {m12} is not divisible by k={space.k}"
        )
    x, y = point
    if not (0 <= x < space.m1 and 0 <= y < space.m2):
        raise NilgenusError(f"point {point} lies outside the rectangle")
    return ((x * m11 + y * m21) % space.m1, (x * m12 + y * m22) % space.m2)


@dataclass(frozen=True)
class OrbitWitness:
    """Residue certificate that one pair reaches another at a prime."""

    prime: int
    alpha: int
    beta: int
    gamma: int
    delta: int
    ell: int  # exponent of prime in m1
    m: int    # exponent of prime in m2


def local_orbit_equivalent(
    space: OrbitSpace, pt1: Point, pt2: Point, p: int
) -> OrbitWitness | None:
    """Four-residue test for one-prime orbit equivalence of two pairs.

    (d, e) reaches (f, g) at p iff there are integers alpha..delta with
        p^ell | d*alpha + e*gamma - f,
        p^m  | d*k*beta + e*delta - g,
        p    | alpha*delta - k*beta*gamma  failing,
    where ell, m are the exponents of p in (m1, m2).  The conditions only
    depend on alpha, gamma mod p^max(ell,1) and beta, delta mod
    p^max(m,1), so enumerating those residues is exhaustive.  Returns the
    lexicographically smallest witness (alpha, beta, gamma, delta).
    """
    if not is_prime(p):
        raise NilgenusError(f"{p} is not prime")
    d, e = space.reduce(pt1)
    f, g = space.reduce(pt2)
    ell = int(p_valuation(space.m1, p))
    m = int(p_valuation(space.m2, p))
    q1 = p ** ell
    q2 = p ** m
    r1 = p ** max(ell, 1)
    r2 = p ** max(m, 1)
    k = space.k
    for alpha in range(r1):
        for beta in range(r2):
            for gamma in range(r1):
                if (d * alpha + e * gamma - f) % q1:
                    continue
                for delta in range(r2):
                    if (d * k * beta + e * delta - g) % q2:
                        continue
                    if (alpha * delta - k * beta * gamma) % p == 0:
                        continue
                    return OrbitWitness(p, alpha, beta, gamma, delta, ell, m)
    return None


def local_orbit_partition(space: OrbitSpace, p: int) -> tuple[tuple[Point, ...], ...]:
    """Partition of the rectangle into one-prime orbit classes."""
    classes: list[list[Point]] = []
    for pt in space.points:
        for cls in classes:
            if local_orbit_equivalent(space, cls[0], pt, p) is not None:
                cls.append(pt)
                break
        else:
            classes.append([pt])
    return tuple(tuple(cls) for cls in classes)


def _unit_matrices_mod(space: OrbitSpace, p: int) -> tuple[Matrix, ...]:
    """All matrices mod p^max(ell,m,1) with unit determinant and k | m12."""
    ell = int(p_valuation(space.m1, p))
    m = int(p_valuation(space.m2, p))
    q = p ** max(ell, m, 1)
    k_step = p ** min(int(p_valuation(space.k, p)) if space.k else 0, max(ell, m, 1))
    out = []
    for m11 in range(q):
        for m12 in range(0, q, k_step):
            for m21 in range(q):
                for m22 in range(q):
                    if (m11 * m22 - m12 * m21) % p:
                        out.append(((m11, m12), (m21, m22)))
    return tuple(out)


def orbit_partition_matrix_closure(
    space: OrbitSpace, p: int
) -> tuple[tuple[Point, ...], ...]:
    """Independent oracle for the one-prime partition.

    Enumerates every matrix mod p^max(ell,m,1) with unit determinant whose
    upper-right entry carries the p-part of the divisibility-by-k
    condition, lets it act on the p-parts (x mod p^ell, y mod p^m) of the
    points, and closes under a union-find.  Over the p-adic integers a
    congruence modulo (m1, m2) is exactly a congruence modulo their
    p-parts, so the rectangle partition is the pullback of the closure
    along the residue map.
    """
    ell = int(p_valuation(space.m1, p))
    m = int(p_valuation(space.m2, p))
    q1, q2 = p ** ell, p ** m
    residues = tuple(product(range(q1), range(q2)))
    uf = UnionFind(residues)
    for mat in _unit_matrices_mod(space, p):
        (m11, m12), (m21, m22) = mat
        for (x, y) in residues:
            img = ((x * m11 + y * m21) % q1, (x * m12 + y * m22) % q2)
            uf.union((x, y), img)
    groups: dict[Point, list[Point]] = {}
    for pt in space.points:
        rep = uf.find((pt[0] % q1, pt[1] % q2))
        groups.setdefault(rep, []).append(pt)
    return tuple(tuple(g) for g in groups.values())


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def classes(self) -> tuple[tuple, ...]:
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return tuple(tuple(sorted(g)) for g in sorted(groups.values()))


@lru_cache(maxsize=None)
def _integer_matrices(bound: int, k: int) -> tuple[Matrix, ...]:
    """Determinant +-1 integer matrices with entries in [-bound, bound]
    and upper-right entry divisible by k."""
    rng = range(-bound, bound + 1)
    out = []
    for m11 in rng:
        for m12 in range(-(bound // k) * k, bound + 1, k) if k > 1 else rng:
            for m21 in rng:
                for m22 in rng:
                    if abs(m11 * m22 - m12 * m21) == 1:
                        out.append(((m11, m12), (m21, m22)))
    return tuple(out)


@dataclass(frozen=True)
class GlobalOrbits:
    partition: tuple[tuple[Point, ...], ...]
    final_bound: int

    def class_of(self, point: Point) -> tuple[Point, ...]:
        for cls in self.partition:
            if point in cls:
                return cls
        raise NilgenusError(f"point {point} not in the rectangle")

    def representative(self, point: Point) -> Point:
        return min(self.class_of(point))

    def representatives(self) -> tuple[Point, ...]:
        return tuple(sorted(min(cls) for cls in self.partition))


def _partition_at_bound(space: OrbitSpace, bound: int) -> tuple[tuple[Point, ...], ...]:
    pts = space.points
    uf = UnionFind(pts)
    for mat in _integer_matrices(bound, space.k):
        for pt in pts:
            uf.union(pt, apply_dk_matrix(space, pt, mat))
    return uf.classes()


@lru_cache(maxsize=None)
def global_orbit_partition(space: OrbitSpace, window_bound: int = 2) -> GlobalOrbits:
    """Orbit partition under integer matrices of determinant +-1 with
    upper-right entry divisible by k.

    The group has no convenient finite generating set, so the closure uses
    all matrices with entries bounded by a window, doubling the window
    until the partition is unchanged for two consecutive doublings.  Every
    merge is witnessed by a genuine matrix, so the partition can only be
    too fine, never too coarse; the final window is reported.
    """
    if window_bound < 1:
        raise NilgenusError("window bound must be at least 1")
    bound = max(window_bound, space.k)
    history = [_partition_at_bound(space, bound)]
    while len(history) < 3 or not (history[-1] == history[-2] == history[-3]):
        bound *= 2
        history.append(_partition_at_bound(space, bound))
        if bound > 64 * max(space.m1, space.m2, space.k, window_bound):
            break  # safety valve; in practice stability arrives by then
    return GlobalOrbits(history[-1], bound)


def orbit_transversal(
    space: OrbitSpace, start: Point, bound: int
) -> dict[Point, Matrix]:
    """Breadth-first orbit of one point, recording for each reached point a
    witnessing matrix (applied to start).  Used to extract integer
    equivalence witnesses once the partition is known."""
    start = space.reduce(start)
    identity: Matrix = ((1, 0), (0, 1))
    gens = _integer_matrices(bound, space.k)
    seen: dict[Point, Matrix] = {start: identity}
    frontier = [start]
    while frontier:
        new_frontier = []
        for pt in frontier:
            for mat in gens:
                img = apply_dk_matrix(space, pt, mat)
                if img not in seen:
                    seen[img] = _mat_mul(seen[pt], mat)
                    new_frontier.append(img)
        frontier = new_frontier
    return seen


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ),
        (
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ),
    )


def mat_inv_unimodular(mat: Matrix) -> Matrix:
    det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    if det not in (1, -1):
        raise NilgenusError("matrix is not invertible over the integers")
    return (
        (det * mat[1][1], -det * mat[0][1]),
        (-det * mat[1][0], det * mat[0][0]),
    )
