"""Shared helpers: lifting per-prime witnesses to integer matrices."""

from __future__ import annotations

import math

from nilgenus.arith import egcd, exact_div, unit_lift
from nilgenus.params import ParamTuple, modulus_profile, type_descriptor
from nilgenus.deciders import PrimeWitness


def log_exp(q: int, p: int) -> int:
    k = 0
    while p ** (k + 1) <= q:
        k += 1
    return k


def multi_egcd(values) -> tuple[int, list[int]]:
    coeffs = [0] * len(values)
    g = 0
    for i, v in enumerate(values):
        g2, a, b = egcd(g, v)
        for j in range(i):
            coeffs[j] *= a
        coeffs[i] = b
        g = g2
    return g, coeffs


def lift_witness_to_rows(s: ParamTuple, w: PrimeWitness):
    """Integer generator-image matrix realizing a per-prime witness, together
    with the modulus each relation residual must vanish under.  Mirrors the
    unit parameterization that produced the witness congruences."""
    p = w.prime
    tid = s.type_id
    if tid == "2,1,1":
        q = w.moduli["w"]
        wh = unit_lift(w.values["w"], p, log_exp(q, p))
        rows = ((wh, 0, 0, 0), (0, 1, 0, 0), (0, 0, wh, 0), (0, 0, 0, wh * wh))
        return rows, {rel: q for rel in ((1, 2), (1, 3), (2, 3))}
    if tid == "3,1,1":
        q1, q2 = w.moduli["w"], w.moduli["v"]
        wh = unit_lift(w.values["w"], p, log_exp(q1, p))
        vh = unit_lift(w.values["v"], p, log_exp(q2, p))
        rows = (
            (vh, 0, 0, 0, 0),
            (0, wh * vh, 0, 0, 0),
            (0, 0, vh * vh, 0, 0),
            (0, 0, 0, wh * vh * vh, 0),
            (0, 0, 0, 0, wh * vh ** 3),
        )
        return rows, {(1, 3): q1, (1, 2): q2}
    if tid == "2,1,1,1":
        q = w.moduli["all"]
        k = log_exp(q, p)
        s123, s134, s145, s235 = s.rigid()
        s124, s135, s125 = s.free()
        d3 = modulus_profile(s).d3
        uh = unit_lift(w.values["u"], p, k)
        v, ww, x, y, z = (w.values[n] for n in ("v", "w", "x", "y", "z"))
        m23 = v - s123 * (uh - 1)
        m34 = uh * (ww - s134 * (uh - 1) // 2)
        m45 = -uh * uh * x
        m12 = uh * y
        g3, lam = multi_egcd((s123, s145, s235))
        assert g3 == d3
        z1, z2, z3 = lam[0] * z, lam[1] * z, lam[2] * z
        m24 = z2 - s124 * (uh - 1) // 2 - s134 * m23 * (uh - 1) // 2
        m13 = m12 * m23 - uh * z3
        sixth = exact_div((uh - 1) * (uh - 2), 6)
        other = (
            s134 * s145 * sixth
            + s134 * (-x) * ((uh - 1) // 2)
            - s135 * ((uh - 1) // 2)
            + s235 * m12
        )
        m35 = -m34 * x - uh * (z1 - other)
        rows = (
            (uh, m12, m13, 0, 0),
            (0, 1, m23, m24, 0),
            (0, 0, uh, m34, m35),
            (0, 0, 0, uh * uh, m45),
            (0, 0, 0, 0, uh ** 3),
        )
        return rows, {rel: q for rel in ((1, 2), (1, 3), (1, 4), (2, 3))}
    # (2,1,2): block matrix from the 2x2 residue witness
    q1, q2 = w.moduli["row1"], w.moduli["row2"]
    kk = modulus_profile(s).k
    al, be, ga, de = (w.values[n] for n in ("alpha", "beta", "gamma", "delta"))
    det = al * de - kk * be * ga
    rows = (
        (al, be, 0, 0, 0),
        (kk * ga, de, 0, 0, 0),
        (0, 0, det, 0, 0),
        (0, 0, 0, det * al, det * kk * be),
        (0, 0, 0, det * ga, det * de),
    )
    return rows, {"pair_relation": (q1, q2)}
