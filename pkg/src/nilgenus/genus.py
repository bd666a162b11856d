"""Canonical representatives, integer equivalence, and genus enumeration.

Each family admits a finite box of candidate representatives once the
rigid structure constants are fixed.  Canonicalization picks a unique
element of each integer-equivalence class (closed-form reductions for
families (2,1,1) and (3,1,1); a window sweep iterated to a lexicographic
fixed point for (2,1,1,1); lexicographically least orbit point for
(2,1,2)).  The genus of a tuple is then enumerated by filtering the box
through the finite-quotient decider and deduplicating by canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import NilgenusError, egcd, gcd_all
from .params import (
    T211,
    T311,
    T2111,
    T212,
    InvalidParameterError,
    ParamTuple,
    modulus_profile,
    require_valid,
)
from .deciders import Decision, decide_same_finite_quotients
from . import orbits


# -- the parameter action for family (2,1,1,1) --------------------------------
#
# An integer tuple (u, v, w, x, y, z) with u = +-1 acts on the free entries
# (c124, c135, c125) of a tuple with fixed rigid part by
#
#     c124' * u  = c124 - c123*w + c134*v
#     c135' * u  = c135 + c145*w + c134*x + c235*y
#     c125' * u^2 = c125 + c135*v + c124*x + c134*v*x + d3*z .
#
# Tracking these elements through every reduction step yields exact
# integer witnesses for equivalences without any search over large ranges.

Action = tuple[int, int, int, int, int, int]  # (u, v, w, x, y, z)

_IDENTITY_ACTION: Action = (1, 0, 0, 0, 0, 0)


def _action_apply(rigid: tuple[int, int, int, int], d3: int,
                  free: tuple[int, int, int], g: Action) -> tuple[int, int, int]:
    c123, c134, c145, c235 = rigid
    c124, c135, c125 = free
    u, v, w, x, y, z = g
    t124 = u * (c124 - c123 * w + c134 * v)
    t135 = u * (c135 + c145 * w + c134 * x + c235 * y)
    t125 = c125 + c135 * v + c124 * x + c134 * v * x + d3 * z
    return (t124, t135, t125)


def _action_compose(rigid: tuple[int, int, int, int], d3: int,
                    g1: Action, g2: Action) -> Action:
    c123, c134, c145, c235 = rigid
    u1, v1, w1, x1, y1, z1 = g1
    u2, v2, w2, x2, y2, z2 = g2
    cross = w1 * v2 * (c145 // d3) + y1 * v2 * (c235 // d3) - w1 * x2 * (c123 // d3)
    return (
        u1 * u2,
        v1 + u1 * v2,
        w1 + u1 * w2,
        x1 + u1 * x2,
        y1 + u1 * y2,
        z1 + z2 + u1 * cross,
    )


def _action_invert(rigid: tuple[int, int, int, int], d3: int, g: Action) -> Action:
    c123, c134, c145, c235 = rigid
    u, v, w, x, y, z = g
    cross = w * v * (c145 // d3) + y * v * (c235 // d3) - w * x * (c123 // d3)
    return (u, -u * v, -u * w, -u * x, -u * y, -z + cross)


def _sign_reduce(value: int, modulus: int) -> tuple[int, int, int]:
    """Reduce to the box [0, modulus/2]: returns (reduced, sign, shift) with
    reduced = sign*value + shift*modulus, sign in {1,-1}."""
    if modulus == 0:
        return value, 1, 0
    r = value % modulus
    if 2 * r <= modulus:
        return r, 1, (r - value) // modulus
    return modulus - r, -1, (modulus - r + value) // modulus


# -- canonical forms -----------------------------------------------------------


@lru_cache(maxsize=65536)
def canonicalize(t: ParamTuple) -> ParamTuple:
    """The unique representative of t's integer-equivalence class.

    Idempotent; the output passes validate_membership with the canonical
    flag.  Rigid entries are never changed.
    """
    require_valid(t)
    tid = t.type_id
    if tid == T211:
        d = modulus_profile(t).d
        reduced, _, _ = _sign_reduce(t.get(1, 2, 4), d)
        return t.replace_free((reduced,))
    if tid == T311:
        prof = modulus_profile(t)
        r135, _, _ = _sign_reduce(t.get(1, 3, 5), prof.d1)
        d2 = gcd_all(t.get(1, 2, 4), r135, prof.d1)
        r125, _, _ = _sign_reduce(t.get(1, 2, 5), d2)
        return t.replace_free((r135, r125))
    if tid == T2111:
        canon, _ = _canonicalize_2111(t)
        return canon
    canon, _, _ = _canonicalize_212(t)
    return canon


@lru_cache(maxsize=65536)
def _canonicalize_2111(t: ParamTuple) -> tuple[ParamTuple, Action]:
    rigid = t.rigid()
    c123, c134, c145, c235 = rigid
    d3 = gcd_all(c123, c145, c235)
    g1 = gcd_all(c123, c134)
    h = gcd_all(c134, c235)
    total = _IDENTITY_ACTION
    free = t.free()

    def push(g: Action) -> None:
        nonlocal total, free
        free = _action_apply(rigid, d3, free, g)
        total = _action_compose(rigid, d3, total, g)

    # Rough reduction: bring each free entry into [0, modulus) so the
    # fixed-point sweep below only ever sees small values.
    _, a1, b1 = egcd(c134, c123)          # c134*a1 + c123*b1 = g1
    q = free[0] // g1
    push((1, -q * a1, q * b1, 0, 0, 0))   # c124 -> c124 mod g1
    _, a2, b2 = egcd(c134, c235)          # c134*a2 + c235*b2 = h
    q = free[1] // h
    push((1, 0, 0, -q * a2, -q * b2, 0))  # c135 -> c135 mod h
    push((1, 0, 0, 0, 0, -(free[2] // d3)))  # c125 -> c125 mod d3

    # Window for the sweep: wide enough for every single lattice step,
    # including the c145-carrying moves the rough reduction cannot make.
    _, aw, bw = egcd(c145, h)
    window = max(
        2, g1, h, d3,
        abs(a1), abs(b1), abs(a2), abs(b2),
        abs(aw), abs(a2 * bw), abs(b2 * bw),
    )

    while True:
        best_free, best_action = free, _IDENTITY_ACTION
        for u in (1, -1):
            for w in range(-window, window + 1):
                base124 = free[0] - c123 * w
                base135 = free[1] + c145 * w
                for v in range(-window, window + 1):
                    t124 = u * (base124 + c134 * v)
                    if t124 < 0 or t124 > best_free[0]:
                        continue
                    strict124 = t124 < best_free[0]
                    for x in range(-window, window + 1):
                        mid135 = u * (base135 + c134 * x)
                        # y only shifts c135 by multiples of c235, so its
                        # optimal value is exact, no sweep needed.
                        if c235:
                            t135 = mid135 % c235
                            y = u * ((t135 - mid135) // c235)
                        else:
                            t135 = mid135
                            y = 0
                        if t135 < 0:
                            continue
                        if not strict124 and t135 > best_free[1]:
                            continue
                        raw = free[2] + free[1] * v + free[0] * x + c134 * v * x
                        t125 = raw % d3
                        cand = (t124, t135, t125)
                        if cand < best_free:
                            best_free = cand
                            best_action = (u, v, w, x, y, (t125 - raw) // d3)
        if best_free == free:
            break
        push(best_action)
        # push applied best_action to the previous free; keep both in sync
        assert free == best_free
    return t.replace_free(free), total


@lru_cache(maxsize=65536)
def _canonicalize_212(
    t: ParamTuple, window_bound: int = 2
) -> tuple[ParamTuple, orbits.OrbitSpace, orbits.GlobalOrbits]:
    space = orbits.build_orbit_space(t.get(1, 3, 4), t.get(2, 3, 5), t.get(1, 2, 3))
    go = orbits.global_orbit_partition(space, window_bound)
    rep = go.representative(space.reduce((t.get(1, 2, 4), t.get(1, 2, 5))))
    return t.replace_free(rep), space, go


# -- integer equivalence -------------------------------------------------------


@dataclass(frozen=True)
class ZEquivalence:
    """Outcome of the integer (isomorphism-side) comparison."""

    equivalent: bool
    witness: dict | None = None
    caveats: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.equivalent

    def to_json_dict(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "witness": self.witness,
            "caveats": list(self.caveats),
        }


def z_equivalent(s: ParamTuple, t: ParamTuple) -> ZEquivalence:
    """Whether the two tuples present isomorphic groups, i.e. have equal
    canonical forms; carries an explicit, re-verified integer witness."""
    if s.type_id != t.type_id:
        raise InvalidParameterError(
            f"cannot compare tuples of different types ({s.type_id} vs {t.type_id})"
        )
    require_valid(s)
    require_valid(t)
    if s.rigid() != t.rigid():
        return ZEquivalence(False)
    tid = s.type_id
    if tid == T211:
        return _z_equivalent_211(s, t)
    if tid == T311:
        return _z_equivalent_311(s, t)
    if tid == T2111:
        return _z_equivalent_2111(s, t)
    return _z_equivalent_212(s, t)


def _unit_lattice_witness(
    tval: int, sval: int, lattice: tuple[int, ...]
) -> tuple[int, tuple[int, ...]] | None:
    """Find u in {1,-1} and coefficients q with t*u - s = sum q_i*lattice_i."""
    g = gcd_all(*lattice)
    for u in (1, -1):
        diff = tval * u - sval
        if g == 0:
            if diff == 0:
                return u, tuple(0 for _ in lattice)
            continue
        if diff % g:
            continue
        coeffs = _multi_egcd(lattice)
        scale = diff // g
        return u, tuple(c * scale for c in coeffs)
    return None


def _multi_egcd(values: tuple[int, ...]) -> tuple[int, ...]:
    """Coefficients q with sum q_i*values_i = gcd(values)."""
    coeffs = [0] * len(values)
    g = 0
    for idx, v in enumerate(values):
        g2, a, b = egcd(g, v)
        for j in range(idx):
            coeffs[j] *= a
        coeffs[idx] = b
        g = g2
    return tuple(coeffs)


def _z_equivalent_211(s: ParamTuple, t: ParamTuple) -> ZEquivalence:
    lattice = (s.get(1, 2, 3), s.get(1, 3, 4))
    found = _unit_lattice_witness(t.get(1, 2, 4), s.get(1, 2, 4), lattice)
    if found is None:
        return ZEquivalence(False)
    u, (x, y) = found
    assert t.get(1, 2, 4) * u - s.get(1, 2, 4) == lattice[0] * x + lattice[1] * y
    return ZEquivalence(True, {"u": u, "x": x, "y": y})


def _z_equivalent_311(s: ParamTuple, t: ParamTuple) -> ZEquivalence:
    lat135 = (s.get(1, 4, 5), s.get(2, 3, 5))
    found1 = _unit_lattice_witness(t.get(1, 3, 5), s.get(1, 3, 5), lat135)
    if found1 is None:
        return ZEquivalence(False)
    lat125 = (s.get(1, 2, 4), s.get(1, 3, 5), s.get(1, 4, 5), s.get(2, 3, 5))
    found2 = _unit_lattice_witness(t.get(1, 2, 5), s.get(1, 2, 5), lat125)
    if found2 is None:
        return ZEquivalence(False)
    u1, q1 = found1
    u2, q2 = found2
    return ZEquivalence(
        True,
        {
            "w": u1,
            "coeffs_135": list(q1),
            "v": u2,
            "coeffs_125": list(q2),
        },
    )


def _z_equivalent_2111(s: ParamTuple, t: ParamTuple) -> ZEquivalence:
    canon_s, gs = _canonicalize_2111(s)
    canon_t, gt = _canonicalize_2111(t)
    if canon_s.free() != canon_t.free():
        return ZEquivalence(False)
    rigid = s.rigid()
    d3 = gcd_all(rigid[0], rigid[2], rigid[3])
    g = _action_compose(rigid, d3, gs, _action_invert(rigid, d3, gt))
    if _action_apply(rigid, d3, s.free(), g) != t.free():
        raise NilgenusError("internal error: composed action does not map s to t")
    u, v, w, x, y, z = g
    return ZEquivalence(True, {"u": u, "v": v, "w": w, "x": x, "y": y, "z": z})


def _z_equivalent_212(s: ParamTuple, t: ParamTuple) -> ZEquivalence:
    canon_s, space, go = _canonicalize_212(s)
    canon_t = canonicalize(t)
    if canon_s.free() != canon_t.free():
        return ZEquivalence(False)
    rep = space.reduce(canon_s.free())
    bound = go.final_bound
    transversal = orbits.orbit_transversal(space, rep, bound)
    pt_s = space.reduce(s.free())
    pt_t = space.reduce(t.free())
    caveats: tuple[str, ...] = ()
    witness = None
    if pt_s in transversal and pt_t in transversal:
        mat = orbits._mat_mul(
            orbits.mat_inv_unimodular(transversal[pt_s]), transversal[pt_t]
        )
        if orbits.apply_dk_matrix(space, pt_s, mat) != pt_t:
            raise NilgenusError("internal error: orbit witness does not map s to t")
        witness = {"matrix": [list(mat[0]), list(mat[1])]}
    else:
        caveats = (f"orbit witness not reconstructed within entry window {bound}",)
    return ZEquivalence(True, witness, caveats)


# -- genus enumeration ----------------------------------------------------------


@dataclass(frozen=True)
class GenusResult:
    """All canonical tuples sharing the input's finite quotients."""

    input: ParamTuple
    members: tuple[ParamTuple, ...]
    witnesses: tuple[Decision, ...]  # aligned with members, vs the input
    caveats: tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json_dict(self) -> dict:
        return {
            "input": self.input.to_json_dict(),
            "size": self.size,
            "members": [m.to_json_dict() for m in self.members],
            "witnesses": [d.to_json_dict() for d in self.witnesses],
            "caveats": list(self.caveats),
        }


def _candidate_frees(canon: ParamTuple) -> tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]:
    tid = canon.type_id
    prof = modulus_profile(canon)
    if tid == T211:
        return tuple((c,) for c in range(prof.d // 2 + 1)), ()
    if tid == T311:
        cands = []
        for c135 in range(prof.d1 // 2 + 1):
            d2 = gcd_all(canon.get(1, 2, 4), c135, prof.d1)
            cands.extend((c135, c125) for c125 in range(d2 // 2 + 1))
        return tuple(cands), ()
    if tid == T2111:
        rigid = canon.rigid()
        g1 = gcd_all(rigid[0], rigid[1])
        g2 = gcd_all(rigid[1], rigid[2], rigid[3])
        d3 = gcd_all(rigid[0], rigid[2], rigid[3])
        return (
            tuple(
                (a, b, c)
                for a in range(g1)
                for b in range(g2)
                for c in range(d3)
            ),
            (),
        )
    _, space, go = _canonicalize_212(canon)
    caveat = (
        f"integer orbits computed by bounded closure (final window {go.final_bound})",
    )
    return tuple(go.representatives()), caveat


def enumerate_genus(s: ParamTuple) -> GenusResult:
    """Enumerate the canonical tuples with the same finite quotients as s.

    Candidates range over the family's finite representative box for s's
    rigid entries; each is kept when the per-prime decider accepts it, and
    the survivors are deduplicated by canonical form.
    """
    require_valid(s)
    canon = canonicalize(s)
    candidates, caveats = _candidate_frees(canon)
    members: list[ParamTuple] = []
    decisions: list[Decision] = []
    seen: set[tuple[int, ...]] = set()
    for free in candidates:
        cand = canon.replace_free(free)
        decision = decide_same_finite_quotients(canon, cand)
        if not decision.equal:
            continue
        rep = canonicalize(cand)
        if rep.free() in seen:
            continue
        seen.add(rep.free())
        members.append(rep)
        decisions.append(decide_same_finite_quotients(canon, rep))
    order = sorted(range(len(members)), key=lambda i: members[i].free())
    return GenusResult(
        input=canon,
        members=tuple(members[i] for i in order),
        witnesses=tuple(decisions[i] for i in order),
        caveats=caveats,
    )


def genus_size_table(type_id: str, primes: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """Genus sizes for the one-parameter prime family of type (2,1,1):
    both rigid constants equal to p and free constant 1."""
    from .params import param_tuple, type_descriptor

    if type_descriptor(type_id).type_id != T211:
        raise InvalidParameterError(
            "the size table is defined for type (2,1,1); run the genus "
            "command on individual tuples of other types"
        )
    out = []
    for p in primes:
        base = param_tuple(T211, t123=p, t134=p, t124=1)
        out.append((p, enumerate_genus(base).size))
    return tuple(out)
