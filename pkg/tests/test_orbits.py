import itertools
import random

import pytest

from nilgenus.arith import NilgenusError
from nilgenus.orbits import (
    apply_dk_matrix,
    build_orbit_space,
    global_orbit_partition,
    local_orbit_equivalent,
    local_orbit_partition,
    mat_inv_unimodular,
    orbit_partition_matrix_closure,
    orbit_transversal,
    _integer_matrices,
    _mat_mul,
)


def test_build_orbit_space_examples():
    space = build_orbit_space(2, 4, 2)
    assert (space.m1, space.m2, space.k) == (2, 2, 2)
    assert set(space.points) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert len(build_orbit_space(1, 1, 1).points) == 1
    assert len(build_orbit_space(5, 5, 5).points) == 25


def test_build_orbit_space_rejects_bad_input():
    with pytest.raises(NilgenusError):
        build_orbit_space(2, 3, 1)  # 2 does not divide 3
    with pytest.raises(NilgenusError):
        build_orbit_space(0, 2, 1)


def test_apply_dk_matrix_examples():
    space = build_orbit_space(2, 4, 2)
    for pt in space.points:
        assert apply_dk_matrix(space, pt, ((1, 0), (0, 1))) == pt
    assert apply_dk_matrix(space, (1, 0), ((1, 2), (0, 1))) == (1, 0)
    swap = build_orbit_space(5, 5, 5)
    assert apply_dk_matrix(swap, (1, 0), ((0, 1), (1, 0))) == (0, 1)


def test_apply_dk_matrix_congruence_enforced():
    space = build_orbit_space(2, 4, 2)  # k = 2
    with pytest.raises(NilgenusError):
        apply_dk_matrix(space, (1, 0), ((1, 1), (0, 1)))


def test_action_respects_matrix_product():
    rng = random.Random(11)
    space = build_orbit_space(4, 8, 6)
    mats = [m for m in _integer_matrices(3, space.k)]
    for _ in range(200):
        a, b = rng.choice(mats), rng.choice(mats)
        pt = rng.choice(space.points)
        one_step = apply_dk_matrix(space, pt, _mat_mul(a, b))
        two_step = apply_dk_matrix(space, apply_dk_matrix(space, pt, a), b)
        assert one_step == two_step


def test_local_orbit_equivalent_examples():
    space = build_orbit_space(2, 4, 2)
    w = local_orbit_equivalent(space, (1, 1), (1, 1), 2)
    assert w is not None
    assert local_orbit_equivalent(space, (1, 0), (1, 1), 2) is None
    # at p = 3 both exponents vanish, so any two points are equivalent
    for pt1 in space.points:
        for pt2 in space.points:
            assert local_orbit_equivalent(space, pt1, pt2, 3) is not None


def test_local_witness_conditions_hold():
    space = build_orbit_space(4, 8, 6)
    for pt1, pt2 in itertools.product(space.points, repeat=2):
        for p in (2, 3):
            w = local_orbit_equivalent(space, pt1, pt2, p)
            if w is None:
                continue
            d, e = pt1
            f, g = pt2
            assert (d * w.alpha + e * w.gamma - f) % p ** w.ell == 0
            assert (d * space.k * w.beta + e * w.delta - g) % p ** w.m == 0
            assert (w.alpha * w.delta - space.k * w.beta * w.gamma) % p != 0


def test_local_is_equivalence_relation():
    space = build_orbit_space(4, 4, 8)
    for p in (2, 3):
        pts = space.points
        rel = {
            (x, y): local_orbit_equivalent(space, x, y, p) is not None
            for x in pts
            for y in pts
        }
        for x in pts:
            assert rel[(x, x)]
            for y in pts:
                assert rel[(x, y)] == rel[(y, x)]
                for z in pts:
                    if rel[(x, y)] and rel[(y, z)]:
                        assert rel[(x, z)]


def test_local_partition_matches_matrix_closure():
    for a in range(1, 5):
        for b in range(a, 5, a):
            for c in range(1, 5):
                space = build_orbit_space(a, b, c)
                for p in (2, 3):
                    local = {frozenset(c_) for c_ in local_orbit_partition(space, p)}
                    closure = {
                        frozenset(c_)
                        for c_ in orbit_partition_matrix_closure(space, p)
                    }
                    assert local == closure, (a, b, c, p)


def test_global_orbit_partition_singleton_space():
    go = global_orbit_partition(build_orbit_space(1, 1, 1))
    assert go.partition == (((0, 0),),)


def test_global_orbit_partition_2_4_2():
    # computed by bounded closure and confirmed by the one-prime analysis:
    # (0,1) ~ (1,1) via ((1,0),(1,1)), while (0,0) and (1,0) are fixed
    go = global_orbit_partition(build_orbit_space(2, 4, 2))
    classes = {frozenset(c) for c in go.partition}
    assert classes == {
        frozenset({(0, 0)}),
        frozenset({(1, 0)}),
        frozenset({(0, 1), (1, 1)}),
    }


def test_global_orbit_partition_5_5_5():
    go = global_orbit_partition(build_orbit_space(5, 5, 5))
    sizes = sorted(len(c) for c in go.partition)
    assert sizes == [1, 24]


def test_global_refines_local():
    # points in one integer orbit are locally equivalent at every prime
    for a, b, c in [(2, 4, 2), (3, 6, 6), (4, 4, 6), (2, 2, 4), (6, 6, 6)]:
        space = build_orbit_space(a, b, c)
        go = global_orbit_partition(space)
        primes = {2, 3, 5}
        for cls in go.partition:
            for pt1, pt2 in itertools.combinations(cls, 2):
                for p in primes:
                    assert local_orbit_equivalent(space, pt1, pt2, p) is not None


def test_orbit_transversal_witnesses():
    space = build_orbit_space(5, 5, 5)
    reached = orbit_transversal(space, (0, 1), 2)
    assert len(reached) == 24
    for pt, mat in reached.items():
        assert apply_dk_matrix(space, (0, 1), mat) == pt
        det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
        assert det in (1, -1)
        inv = mat_inv_unimodular(mat)
        assert _mat_mul(mat, inv) == ((1, 0), (0, 1))
