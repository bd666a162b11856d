import itertools
import random

import pytest

from nilgenus.deciders import decide_same_finite_quotients
from nilgenus.genus import (
    canonicalize,
    enumerate_genus,
    genus_size_table,
    z_equivalent,
)
from nilgenus.params import (
    InvalidParameterError,
    param_tuple,
    validate_membership,
)


def _t211(a, b, c):
    return param_tuple("2,1,1", t123=a, t134=b, t124=c)


# -- canonical forms -------------------------------------------------------------


@pytest.mark.parametrize("c124,expected", [(7, 2), (4, 1), (2, 2), (0, 0), (5, 0)])
def test_canonicalize_211(c124, expected):
    assert canonicalize(_t211(5, 5, c124)).free() == (expected,)


def test_canonicalize_311_recomputes_second_box():
    t = param_tuple("3,1,1", t124=4, t145=6, t235=9, t135=7, t125=5)
    canon = canonicalize(t)
    # d1 = gcd(6, 9) = 3, so 7 -> 1; then d2 = gcd(4, 1, 3) = 1 forces 0
    assert canon.free() == (1, 0)


def test_canonicalize_2111_sweep():
    t = param_tuple("2,1,1,1", t123=2, t134=2, t145=2, t235=0,
                    t124=0, t135=0, t125=3)
    assert canonicalize(t).free() == (0, 0, 1)


def test_canonicalize_212_orbit_representative():
    t = param_tuple("2,1,2", t123=5, t134=5, t235=5, t124=3, t125=2)
    # all nonzero pairs of the 5x5 rectangle form one integer orbit
    assert canonicalize(t).free() == (0, 1)
    zero = t.replace_free((0, 0))
    assert canonicalize(zero).free() == (0, 0)


def _sample(tid, rng):
    if tid == "2,1,1":
        return _t211(rng.randint(1, 8), rng.randint(1, 8), rng.randint(0, 12))
    if tid == "3,1,1":
        return param_tuple(tid, t124=rng.randint(1, 8), t145=rng.randint(1, 8),
                           t235=rng.randint(0, 8), t135=rng.randint(0, 10),
                           t125=rng.randint(0, 10))
    if tid == "2,1,1,1":
        return param_tuple(tid, t123=rng.randint(1, 4), t134=rng.randint(1, 4),
                           t145=rng.randint(1, 4), t235=rng.randint(0, 4),
                           t124=rng.randint(0, 6), t135=rng.randint(0, 6),
                           t125=rng.randint(0, 6))
    c134 = rng.randint(1, 4)
    return param_tuple(tid, t123=rng.randint(1, 6), t134=c134,
                       t235=c134 * rng.randint(1, 3),
                       t124=rng.randint(0, 6), t125=rng.randint(0, 6))


@pytest.mark.parametrize("tid", ["2,1,1", "3,1,1", "2,1,1,1", "2,1,2"])
def test_canonicalize_idempotent_and_canonical(tid):
    rng = random.Random(hash(tid) & 0xFFF)
    for _ in range(40):
        t = _sample(tid, rng)
        canon = canonicalize(t)
        assert canonicalize(canon) == canon
        assert validate_membership(canon, canonical=True).valid, (t, canon)
        # canonical forms present isomorphic groups, hence equal quotients
        assert decide_same_finite_quotients(t, canon).equal, (t, canon)


# -- integer equivalence ----------------------------------------------------------


def test_z_equivalent_211_sign():
    z = z_equivalent(_t211(5, 5, 1), _t211(5, 5, 4))
    assert z.equivalent
    assert z.witness["u"] == -1
    s, t = _t211(5, 5, 1), _t211(5, 5, 4)
    u, x, y = z.witness["u"], z.witness["x"], z.witness["y"]
    assert t.get(1, 2, 4) * u - s.get(1, 2, 4) == s.get(1, 2, 3) * x + s.get(1, 3, 4) * y


def test_z_equivalent_genus_phenomenon():
    # same finite quotients yet not isomorphic: the defining example
    s, t = _t211(5, 5, 1), _t211(5, 5, 2)
    assert decide_same_finite_quotients(s, t).equal
    assert not z_equivalent(s, t).equivalent


def test_z_equivalent_reflexive():
    for tid in ("2,1,1", "3,1,1", "2,1,1,1", "2,1,2"):
        rng = random.Random(5)
        t = _sample(tid, rng)
        assert z_equivalent(t, t).equivalent


def test_z_equivalent_311_witness():
    s = param_tuple("3,1,1", t124=4, t145=6, t235=9, t135=1, t125=0)
    t = s.replace_free((2, 0))
    z = z_equivalent(s, t)
    assert z.equivalent
    w = z.witness
    diff = t.get(1, 3, 5) * w["w"] - s.get(1, 3, 5)
    assert diff == w["coeffs_135"][0] * 6 + w["coeffs_135"][1] * 9


def test_z_equivalent_2111_witness_verifies():
    rng = random.Random(23)
    found = 0
    for _ in range(200):
        s = _sample("2,1,1,1", rng)
        t = s.replace_free(tuple(rng.randint(0, 6) for _ in range(3)))
        z = z_equivalent(s, t)
        if not z.equivalent or z.witness is None:
            continue
        found += 1
        c123, c134, c145, c235 = s.rigid()
        from nilgenus.arith import gcd_all
        d3 = gcd_all(c123, c145, c235)
        s124, s135, s125 = s.free()
        u, v, w, x, y, zz = (z.witness[n] for n in ("u", "v", "w", "x", "y", "z"))
        assert t.get(1, 2, 4) * u == s124 - c123 * w + c134 * v
        assert t.get(1, 3, 5) * u == s135 + c145 * w + c134 * x + c235 * y
        assert t.get(1, 2, 5) * u * u == s125 + s135 * v + s124 * x + c134 * v * x + d3 * zz
    assert found >= 20


def test_z_equivalent_212_witness_matrix():
    s = param_tuple("2,1,2", t123=5, t134=5, t235=5, t124=1, t125=0)
    t = s.replace_free((0, 1))
    z = z_equivalent(s, t)
    assert z.equivalent and z.witness is not None
    (m11, m12), (m21, m22) = z.witness["matrix"]
    assert abs(m11 * m22 - m12 * m21) == 1
    assert (1 * m11 + 0 * m21) % 5 == 0 and (1 * m12 + 0 * m22) % 5 == 1


def test_z_implies_same_quotients():
    rng = random.Random(31)
    for tid in ("2,1,1", "3,1,1", "2,1,1,1", "2,1,2"):
        for _ in range(60):
            s = _sample(tid, rng)
            t = s.replace_free(canonicalize(s).free())
            z = z_equivalent(s, t)
            assert z.equivalent
            assert decide_same_finite_quotients(s, t).equal


# -- genus enumeration --------------------------------------------------------------


def test_enumerate_genus_defining_example():
    result = enumerate_genus(_t211(5, 5, 1))
    assert [m.free() for m in result.members] == [(1,), (2,)]
    assert result.size == 2
    assert result.input in result.members
    for decision in result.witnesses:
        assert decision.equal


def test_enumerate_genus_trivial_cases():
    assert enumerate_genus(_t211(2, 3, 0)).size == 1
    assert [m.free() for m in enumerate_genus(_t211(4, 4, 1)).members] == [(1,)]


def test_enumerate_genus_members_pairwise_consistent():
    result = enumerate_genus(_t211(9, 9, 1))
    assert result.size >= 2
    for a, b in itertools.combinations(result.members, 2):
        assert decide_same_finite_quotients(a, b).equal
        assert not z_equivalent(a, b).equivalent


def test_enumerate_genus_seed_independent():
    reference = None
    for seed in enumerate_genus(_t211(5, 5, 2)).members:
        members = tuple(m.free() for m in enumerate_genus(seed).members)
        if reference is None:
            reference = members
        assert members == reference


def test_enumerate_genus_311():
    base = param_tuple("3,1,1", t124=9, t145=9, t235=0, t135=1, t125=0)
    result = enumerate_genus(base)
    # c135 ranges over units mod 9 in the box {1, 2, 4}; c125 box is trivial
    assert [m.free() for m in result.members] == [(1, 0), (2, 0), (4, 0)]


def test_enumerate_genus_2111():
    base = param_tuple("2,1,1,1", t123=2, t134=2, t145=2, t235=0,
                       t124=0, t135=0, t125=1)
    result = enumerate_genus(base)
    assert base in result.members
    for member in result.members:
        assert decide_same_finite_quotients(base, member).equal
        assert canonicalize(member) == member


def test_enumerate_genus_212():
    base = param_tuple("2,1,2", t123=4, t134=2, t235=4, t124=1, t125=1)
    result = enumerate_genus(base)
    for member in result.members:
        assert decide_same_finite_quotients(base, member).equal
    assert any("window" in c for c in result.caveats)


def test_genus_size_table():
    table = genus_size_table("2,1,1", (3, 5, 7, 11, 13))
    assert table == ((3, 1), (5, 2), (7, 3), (11, 5), (13, 6))
    sizes = [size for _, size in table]
    assert sizes == [p // 2 for p, _ in table]


def test_genus_size_table_other_types_rejected():
    with pytest.raises(InvalidParameterError):
        genus_size_table("3,1,1", (3,))
