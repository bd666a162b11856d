"""Per-prime solvability primitives and the finite-quotient deciders.

Two finitely generated torsion-free nilpotent groups presented by tuples
of the same family have identical sets of finite quotients exactly when
their rigid structure constants agree and, for every prime p dividing
the family's governing modulus, a small residue system is solvable with
a unit leading coefficient.  This module implements those per-prime
checks twice over: a fast valuation-based (or pruned) path used by
decide_same_finite_quotients, and naive exhaustive enumerations kept as
independent oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import (
    NilgenusError,
    invmod,
    is_prime,
    p_valuation,
    vp_cap,
)
from .params import (
    T211,
    T311,
    T2111,
    T212,
    InvalidParameterError,
    ParamTuple,
    modulus_profile,
    require_valid,
    validate_membership,
)


@dataclass(frozen=True)
class PrimeWitness:
    """A verified residue witness for one prime.

    values holds the named residues (w, v, u, x, y, z or alpha..delta),
    moduli the prime-power modulus governing each congruence.
    """

    prime: int
    values: dict[str, int]
    moduli: dict[str, int]

    def to_json_dict(self) -> dict:
        out: dict = {"p": self.prime}
        out.update(self.values)
        out["moduli"] = dict(self.moduli)
        return out


@dataclass(frozen=True)
class PrimeCheck:
    prime: int
    witness: PrimeWitness | None
    reason: str | None = None  # set when the check failed

    @property
    def ok(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class Decision:
    """Verdict of a finite-quotient comparison, with per-prime audit data."""

    equal: bool
    rigid_match: bool
    per_prime: tuple[PrimeCheck, ...]
    caveats: tuple[str, ...] = ()

    def witnesses(self) -> tuple[PrimeWitness, ...]:
        return tuple(c.witness for c in self.per_prime if c.witness is not None)

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.equal,
            "rigid_match": self.rigid_match,
            "witnesses": [c.witness.to_json_dict() for c in self.per_prime if c.witness],
            "failures": [
                {"p": c.prime, "reason": c.reason} for c in self.per_prime if not c.ok
            ],
            "caveats": list(self.caveats),
        }


# -- unit congruences (families (2,1,1) and (3,1,1)) -------------------------


def unit_congruence_solvable(a: int, b: int, p: int, k: int) -> int | None:
    """Smallest-style unit w modulo p**k with a*w = b (mod p**k), or None.

    Fast path: solvable iff min(vp(a), k) == min(vp(b), k); the witness is
    built by unit division of the p-free parts.  k == 0 yields w = 1.
    """
    if not is_prime(p):
        raise NilgenusError(f"{p} is not prime")
    if k < 0:
        raise NilgenusError("modulus exponent must be nonnegative")
    if k == 0:
        return 1
    e = vp_cap(a, p, k)
    if e != vp_cap(b, p, k):
        return None
    q = p ** k
    if e == k:
        return 1
    pe = p ** e
    w = (b // pe) * invmod(a // pe, q) % q
    if w % p == 0:  # cannot happen: b/p^e is a p-unit by construction
        raise NilgenusError("internal error: witness is not a unit")
    return w


def unit_congruence_solvable_bruteforce(a: int, b: int, p: int, k: int) -> int | None:
    """Oracle twin of unit_congruence_solvable: try every unit mod p**k."""
    if k == 0:
        return 1
    q = p ** k
    for w in range(1, q):
        if w % p and (a * w - b) % q == 0:
            return w
    return None


# -- coupled residue system (family (2,1,1,1)) -------------------------------


def _system_2111_data(s: ParamTuple, t: ParamTuple, p: int):
    if s.type_id != T2111 or t.type_id != T2111:
        raise InvalidParameterError("the coupled system is specific to type (2,1,1,1)")
    if s.rigid() != t.rigid():
        raise InvalidParameterError("rigid entries must agree")
    prof = modulus_profile(s)
    alpha, beta = prof.alpha_beta(p)
    return prof, alpha, beta


def coupled_system_solvable_2111(
    s: ParamTuple, t: ParamTuple, p: int
) -> PrimeWitness | None:
    """Solve the three coupled congruences of the (2,1,1,1) comparison.

    Searches u (unit), w, y exhaustively modulo p**(alpha+beta); v and x
    are then pinned by the first two congruences up to multiples of
    p**alpha, and the third congruence is a single divisibility check.
    Returns the lexicographically smallest witness (u, v, w, x, y, z).
    """
    prof, alpha, beta = _system_2111_data(s, t, p)
    k = alpha + beta
    q = p ** k
    if k == 0:
        return PrimeWitness(p, dict(u=1, v=0, w=0, x=0, y=0, z=0), {"all": 1})
    s123, s134, s145, s235 = s.rigid()
    s124, s135, s125 = s.free()
    t124, t135, t125 = t.free()
    d3 = prof.d3
    pa = p ** alpha
    pb = p ** beta
    inv_s134 = invmod(s134 // pb, q)
    inv_d3 = invmod(d3 // pa, pb) if beta else 0
    # residue r -> least v with s134*v = r (mod q), None when unsolvable;
    # solutions come in classes mod p^alpha, so the least one is < p^alpha
    sol: list[int | None] = [None] * q
    for r in range(0, q, pb):
        sol[r] = (r // pb) * inv_s134 % pa if alpha else 0
    s123q, s145q, s235q = s123 % q, s145 % q, s235 % q
    for u in range(1, q):
        if u % p == 0:
            continue
        uu = u * u
        # third congruence: feasibility and least z per (v, x) residue pair
        zz: dict[tuple[int, int], int] = {}
        c125 = t125 * uu - s125
        for v0 in range(pa):
            base_v = c125 - s135 * v0
            for x0 in range(pa):
                rem = base_v - s124 * x0 - s134 * v0 * x0
                if rem % pa == 0:
                    zz[(v0, x0)] = ((rem % q) // pa) * inv_d3 % pb if beta else 0
        if not zz:
            continue
        best: tuple[int, int, int, int, int] | None = None
        r1 = (t124 * u - s124) % q
        a2 = (t135 * u - s135) % q
        for w in range(q):
            v0 = sol[r1]
            if v0 is not None:
                r2 = (a2 - s145q * w) % q
                for y in range(q):
                    x0 = sol[r2]
                    if x0 is not None:
                        z0 = zz.get((v0, x0))
                        if z0 is not None:
                            cand = (v0, w, x0, y, z0)
                            if best is None or cand < best:
                                best = cand
                    r2 = (r2 - s235q) % q
            r1 = (r1 + s123q) % q
        if best is not None:
            v, w, x, y, z = best
            return PrimeWitness(p, dict(u=u, v=v, w=w, x=x, y=y, z=z), {"all": q})
    return None


def coupled_system_solvable_2111_unpruned(
    s: ParamTuple, t: ParamTuple, p: int
) -> PrimeWitness | None:
    """Oracle twin: enumerate every residue tuple (u, v, w, x, y, z)."""
    prof, alpha, beta = _system_2111_data(s, t, p)
    k = alpha + beta
    q = p ** k
    if k == 0:
        return PrimeWitness(p, dict(u=1, v=0, w=0, x=0, y=0, z=0), {"all": 1})
    s123, s134, s145, s235 = s.rigid()
    s124, s135, s125 = s.free()
    t124, t135, t125 = t.free()
    d3 = prof.d3
    rng = range(q)
    for u in range(1, q):
        if u % p == 0:
            continue
        uu = u * u
        for v in rng:
            for w in rng:
                if (t124 * u - (s124 - s123 * w + s134 * v)) % q:
                    continue
                for x in rng:
                    for y in rng:
                        if (t135 * u - (s135 + s145 * w + s134 * x + s235 * y)) % q:
                            continue
                        base = s125 + s135 * v + s124 * x + s134 * v * x
                        for z in rng:
                            if (t125 * uu - (base + d3 * z)) % q == 0:
                                return PrimeWitness(
                                    p, dict(u=u, v=v, w=w, x=x, y=y, z=z), {"all": q}
                                )
    return None


# -- per-prime checks used by the decider ------------------------------------


def check_prime(s: ParamTuple, t: ParamTuple, p: int) -> PrimeCheck:
    """Run the family's residue check at one prime (rigid parts must agree)."""
    tid = s.type_id
    if tid == T211:
        k = int(p_valuation(modulus_profile(s).d, p))
        w = unit_congruence_solvable(t.get(1, 2, 4), s.get(1, 2, 4), p, k)
        if w is None:
            return PrimeCheck(p, None, f"no unit w with c124(t)*w = c124(s) mod {p}^{k}")
        return PrimeCheck(p, PrimeWitness(p, {"w": w}, {"w": p ** k}))
    if tid == T311:
        prof = modulus_profile(s)
        k1 = int(p_valuation(prof.d1, p))
        w = unit_congruence_solvable(t.get(1, 3, 5), s.get(1, 3, 5), p, k1)
        if w is None:
            return PrimeCheck(p, None, f"no unit w with c135(t)*w = c135(s) mod {p}^{k1}")
        k2 = int(p_valuation(prof.d2, p))
        v = unit_congruence_solvable(t.get(1, 2, 5), s.get(1, 2, 5), p, k2)
        if v is None:
            return PrimeCheck(p, None, f"no unit v with c125(t)*v = c125(s) mod {p}^{k2}")
        return PrimeCheck(
            p, PrimeWitness(p, {"w": w, "v": v}, {"w": p ** k1, "v": p ** k2})
        )
    if tid == T2111:
        witness = coupled_system_solvable_2111(s, t, p)
        if witness is None:
            prof = modulus_profile(s)
            alpha, beta = prof.alpha_beta(p)
            return PrimeCheck(
                p, None, f"coupled residue system unsolvable mod {p}^{alpha + beta}"
            )
        return PrimeCheck(p, witness)
    if tid == T212:
        from . import orbits  # local import: orbits sits beside this module

        prof = modulus_profile(s)
        space = orbits.build_orbit_space(
            s.get(1, 3, 4), s.get(2, 3, 5), s.get(1, 2, 3)
        )
        pt_s = (s.get(1, 2, 4) % prof.m1, s.get(1, 2, 5) % prof.m2)
        pt_t = (t.get(1, 2, 4) % prof.m1, t.get(1, 2, 5) % prof.m2)
        witness = orbits.local_orbit_equivalent(space, pt_t, pt_s, p)
        if witness is None:
            return PrimeCheck(
                p, None, f"free pairs lie in different local orbits at p={p}"
            )
        return PrimeCheck(
            p,
            PrimeWitness(
                p,
                {
                    "alpha": witness.alpha,
                    "beta": witness.beta,
                    "gamma": witness.gamma,
                    "delta": witness.delta,
                },
                {"row1": p ** witness.ell, "row2": p ** witness.m},
            ),
        )
    raise InvalidParameterError(f"no per-prime check for type {tid}")


def decide_same_finite_quotients(
    s: ParamTuple, t: ParamTuple, primes: tuple[int, ...] | None = None
) -> Decision:
    """Decide whether the two presented groups have the same finite quotients.

    Checks rigid equality, then runs the per-prime residue check at every
    relevant prime (any others are vacuous).  An explicit primes override
    is recorded as a caveat; so is a non-canonical input, for which the
    arithmetic relation is still computed but the finite-quotient reading
    is only guaranteed on canonical representatives.
    """
    if s.type_id != t.type_id:
        raise InvalidParameterError(
            f"cannot compare tuples of different types ({s.type_id} vs {t.type_id})"
        )
    require_valid(s)
    require_valid(t)
    caveats: list[str] = []
    for name, tup in (("first", s), ("second", t)):
        if not validate_membership(tup, canonical=True).valid:
            caveats.append(f"{name} input is not a canonical representative")
    rigid_match = s.rigid() == t.rigid()
    if not rigid_match:
        return Decision(False, False, (), tuple(caveats))
    if primes is None:
        prime_list = modulus_profile(s).relevant_primes
    else:
        prime_list = tuple(sorted(set(primes)))
        caveats.append("prime set overridden; result may ignore relevant primes")
        for p in prime_list:
            if not is_prime(p):
                raise InvalidParameterError(f"{p} is not prime")
    checks = tuple(check_prime(s, t, p) for p in prime_list)
    return Decision(
        equal=all(c.ok for c in checks),
        rigid_match=True,
        per_prime=checks,
        caveats=tuple(caveats),
    )


# -- witness verification ------------------------------------------------------


def verify_prime_witness(s: ParamTuple, t: ParamTuple, w: PrimeWitness) -> bool:
    """Re-check a returned witness by direct substitution."""
    p = w.prime
    tid = s.type_id
    vals = w.values
    if tid == T211:
        q = w.moduli["w"]
        if vals["w"] % p == 0:
            return False
        return (t.get(1, 2, 4) * vals["w"] - s.get(1, 2, 4)) % q == 0
    if tid == T311:
        q1, q2 = w.moduli["w"], w.moduli["v"]
        if vals["w"] % p == 0 or vals["v"] % p == 0:
            return False
        ok1 = (t.get(1, 3, 5) * vals["w"] - s.get(1, 3, 5)) % q1 == 0
        ok2 = (t.get(1, 2, 5) * vals["v"] - s.get(1, 2, 5)) % q2 == 0
        return ok1 and ok2
    if tid == T2111:
        q = w.moduli["all"]
        if q == 1:
            return True
        u, v, ww, x, y, z = (vals[key] for key in ("u", "v", "w", "x", "y", "z"))
        if u % p == 0:
            return False
        s123, s134, s145, s235 = s.rigid()
        s124, s135, s125 = s.free()
        t124, t135, t125 = t.free()
        d3 = modulus_profile(s).d3
        return (
            (t124 * u - (s124 - s123 * ww + s134 * v)) % q == 0
            and (t135 * u - (s135 + s145 * ww + s134 * x + s235 * y)) % q == 0
            and (t125 * u * u - (s125 + s135 * v + s124 * x + s134 * v * x + d3 * z))
            % q
            == 0
        )
    if tid == T212:
        prof = modulus_profile(s)
        q1, q2 = w.moduli["row1"], w.moduli["row2"]
        a, b, g, d = (vals[key] for key in ("alpha", "beta", "gamma", "delta"))
        k = prof.k
        d_, e_ = t.get(1, 2, 4) % prof.m1, t.get(1, 2, 5) % prof.m2
        f_, g_ = s.get(1, 2, 4) % prof.m1, s.get(1, 2, 5) % prof.m2
        return (
            (d_ * a + e_ * g - f_) % q1 == 0
            and (d_ * k * b + e_ * d - g_) % q2 == 0
            and (a * d - k * b * g) % p != 0
        )
    raise InvalidParameterError(f"no witness verifier for type {tid}")
