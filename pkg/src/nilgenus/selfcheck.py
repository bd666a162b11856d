"""Oracle cross-validation suites, runnable from the command line.

Each suite compares an optimized code path against an independent, naive
computation of the same quantity: unit congruences against unit
enumeration, the coupled residue solver against full tuple enumeration,
the local orbit criterion against matrix closure, the collection engine
against the closed-form relation systems, and the decider against the
algebraic laws it must satisfy.  A mismatch anywhere is reported with the
suite name; the command exits nonzero.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from . import deciders, equations, genus, orbits
from .arith import gcd_all, p_valuation
from .collection import CandidateMatrix, PCPresentation, check_candidate_map
from .params import ParamTuple, SUPPORTED_TYPES, param_tuple, type_descriptor


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    mismatches: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def record(self, ok: bool, describe) -> None:
        self.cases += 1
        if not ok and len(self.mismatches) < 10:
            self.mismatches.append(describe() if callable(describe) else str(describe))


@dataclass
class SelfcheckReport:
    scale: str
    suites: tuple[SuiteResult, ...]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    def to_json_dict(self) -> dict:
        return {
            "scale": self.scale,
            "ok": self.ok,
            "suites": [
                {
                    "name": s.name,
                    "cases": s.cases,
                    "ok": s.ok,
                    "seconds": round(s.seconds, 3),
                    "mismatches": s.mismatches,
                }
                for s in self.suites
            ],
        }


# -- fully unpruned reachability for the coupled (2,1,1,1) system ---------------


def reachable_2111_table(s: ParamTuple, p: int):
    """Bool array over residue triples (t124, t135, t125) mod p^k marking
    which targets the coupled system reaches from s, built by enumerating
    every witness tuple (u, v, w, x, y, z) without any solvability theory
    (only modular inversion of the unit u, used to tabulate by target).

    Returns (q, table) with table shape (q, q, q); q == 1 means every
    comparison at p is vacuously solvable.
    """
    import numpy as np

    prof_alpha, prof_beta = _alpha_beta(s, p)
    k = prof_alpha + prof_beta
    q = p ** k
    if k == 0:
        return 1, np.ones((1, 1, 1), dtype=bool)
    s123, s134, s145, s235 = s.rigid()
    s124, s135, s125 = (f % q for f in s.free())
    d3 = gcd_all(s123, s145, s235)
    units = np.array([u for u in range(1, q) if u % p], dtype=np.int64)
    uinv = np.array([pow(int(u), -1, q) for u in units], dtype=np.int64)
    rng = np.arange(q, dtype=np.int64)
    # axes: (unit, v, w, x)
    ui = uinv[:, None, None, None]
    v = rng[None, :, None, None]
    w = rng[None, None, :, None]
    x = rng[None, None, None, :]
    t124 = ui * (s124 - s123 * w + s134 * v) % q          # (U, q, q, 1)
    t135_base = ui * (s135 + s145 * w + s134 * x) % q     # (U, 1, q, q)
    t125_base = ui * ui * (s125 + s135 * v + s124 * x + s134 * v * x) % q  # (U, q, 1, q)
    shape = (len(units), q, q, q)
    t124 = np.broadcast_to(t124, shape).ravel()
    table = np.zeros((q, q, q), dtype=bool)
    y_offsets = sorted({int(ui_ * s235 * y % q) for ui_ in uinv for y in range(q)})
    z_offsets = sorted({int(ui_ * ui_ * d3 * z % q) for ui_ in uinv for z in range(q)})
    # y and z sweep independent cosets; applying every offset pair visits
    # exactly the full (u, v, w, x, y, z) product space.
    for oy in y_offsets:
        t135 = np.broadcast_to((t135_base + oy) % q, shape).ravel()
        for oz in z_offsets:
            t125 = np.broadcast_to((t125_base + oz) % q, shape).ravel()
            table[t124, t135, t125] = True
    return q, table


def _alpha_beta(s: ParamTuple, p: int) -> tuple[int, int]:
    rigid = s.rigid()
    d3 = gcd_all(rigid[0], rigid[2], rigid[3])
    return int(p_valuation(d3, p)), int(p_valuation(rigid[1], p))


# -- suites ---------------------------------------------------------------------


def _suite_unit_congruence(scale: str) -> SuiteResult:
    res = SuiteResult("unit-congruence-oracle")
    limit, primes, kmax = (40, (2, 3, 5), 2) if scale == "quick" else (200, (2, 3, 5, 7), 3)
    for p in primes:
        for k in range(kmax + 1):
            q = p ** k
            # brute-force solvability by residue class, then compare the
            # fast path on every pair in range
            table = {}
            for a0 in range(q):
                for b0 in range(q):
                    table[(a0, b0)] = deciders.unit_congruence_solvable_bruteforce(
                        a0, b0, p, k
                    )
            for a in range(limit + 1):
                for b in range(limit + 1):
                    fast = deciders.unit_congruence_solvable(a, b, p, k)
                    brute = table[(a % q, b % q)]
                    ok = (fast is None) == (brute is None)
                    if fast is not None:
                        ok = ok and fast % p != 0 and (a * fast - b) % q == 0
                    res.record(
                        ok, lambda a=a, b=b, p=p, k=k, f=fast, o=brute:
                        f"(a={a}, b={b}, p={p}, k={k}): fast={f} brute={o}"
                    )
    return res


def _coupled_cells(scale: str):
    if scale == "quick":
        rigids = [(1, 1, 1, 1), (2, 2, 2, 2), (2, 4, 2, 4), (1, 2, 4, 2)]
        free_range = range(4)
    else:
        rigids = [r for r in itertools.product((1, 2, 4), repeat=4)]
        free_range = range(8)
    return rigids, free_range


def _suite_coupled_system(scale: str) -> SuiteResult:
    res = SuiteResult("coupled-system-oracle")
    rigids, free_range = _coupled_cells(scale)
    pair_budget = 600 if scale == "quick" else 4096
    for rigid in rigids:
        for p in (2, 3):
            base = param_tuple(
                "2,1,1,1",
                t123=rigid[0], t134=rigid[1], t145=rigid[2], t235=rigid[3],
            )
            alpha, beta = _alpha_beta(base, p)
            q = p ** (alpha + beta)
            frees = sorted({tuple(f % q for f in fs) for fs in
                            itertools.product(free_range, repeat=3)})
            pairs = list(itertools.product(frees, repeat=2))
            if len(pairs) > pair_budget:
                sampler = random.Random(1000 + p + sum(rigid))
                pairs = sampler.sample(pairs, pair_budget)
            cache: dict[tuple, object] = {}
            for sf, tf in pairs:
                if sf not in cache:
                    cache[sf] = reachable_2111_table(base.replace_free(sf), p)
                q_, table = cache[sf]
                s = base.replace_free(sf)
                t = base.replace_free(tf)
                fast = deciders.coupled_system_solvable_2111(s, t, p)
                naive = bool(
                    table[tf[0] % q_, tf[1] % q_, tf[2] % q_]
                )
                ok = (fast is not None) == naive
                if fast is not None:
                    ok = ok and deciders.verify_prime_witness(s, t, fast)
                res.record(
                    ok, lambda rigid=rigid, sf=sf, tf=tf, p=p, f=fast, n=naive:
                    f"rigid={rigid} s={sf} t={tf} p={p}: pruned={f is not None} naive={n}"
                )
    return res


def _suite_pair_orbits(scale: str) -> SuiteResult:
    res = SuiteResult("pair-orbit-oracle")
    top = 4 if scale == "quick" else 8
    for a in range(1, top + 1):
        for b in range(a, top + 1, a):
            for c in range(1, top + 1):
                space = orbits.build_orbit_space(a, b, c)
                for p in (2, 3):
                    local = {
                        frozenset(cls) for cls in orbits.local_orbit_partition(space, p)
                    }
                    closed = {
                        frozenset(cls)
                        for cls in orbits.orbit_partition_matrix_closure(space, p)
                    }
                    res.record(
                        local == closed,
                        lambda a=a, b=b, c=c, p=p:
                        f"space ({a},{b},{c}) at p={p}: partitions differ",
                    )
    return res


def _sample_tuples(tid: str, rng: random.Random, count: int) -> list[ParamTuple]:
    out = []
    while len(out) < count:
        if tid == "2,1,1":
            cand = param_tuple(tid, t123=rng.randint(1, 6), t134=rng.randint(1, 6),
                               t124=rng.randint(0, 6))
        elif tid == "3,1,1":
            cand = param_tuple(tid, t124=rng.randint(1, 6), t145=rng.randint(1, 6),
                               t235=rng.randint(0, 6), t135=rng.randint(0, 6),
                               t125=rng.randint(0, 6))
        elif tid == "2,1,1,1":
            cand = param_tuple(tid, t123=rng.randint(1, 4), t134=rng.randint(1, 4),
                               t145=rng.randint(1, 4), t235=rng.randint(0, 4),
                               t124=rng.randint(0, 4), t135=rng.randint(0, 4),
                               t125=rng.randint(0, 4))
        else:
            c134 = rng.randint(1, 4)
            cand = param_tuple(tid, t123=rng.randint(1, 6), t134=c134,
                               t235=c134 * rng.randint(1, 3),
                               t124=rng.randint(0, 5), t125=rng.randint(0, 5))
        out.append(cand)
    return out


def _random_masked_matrix(desc, rng: random.Random, lo: int = -4, hi: int = 4):
    n = desc.hirsch_length
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(rng.choice((1, -1)))
            elif desc.shape_mask[i][j]:
                row.append(rng.randint(lo, hi))
            else:
                row.append(0)
        rows.append(tuple(row))
    return tuple(rows)


def _solution_matrix(desc, s: ParamTuple, rng: random.Random):
    """A self-map matrix satisfying s's relation system exactly (checked by
    construction), to exercise the residual-free side of the comparison."""
    n = desc.hirsch_length
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    r = rng.randint(-3, 3)
    q = rng.randint(-3, 3)
    if desc.type_id == "2,1,1":
        rows[1][2] = s.get(1, 2, 3) * r  # m23
        rows[2][3] = s.get(1, 3, 4) * r  # m34
    elif desc.type_id == "3,1,1":
        rows[2][3] = s.get(2, 3, 5) * r   # m34
        rows[0][1] = -s.get(1, 4, 5) * r  # m12
    elif desc.type_id == "2,1,1,1":
        rows[1][2] = s.get(1, 2, 3) * r  # m23
        rows[2][3] = s.get(1, 3, 4) * r  # m34
        rows[3][4] = s.get(1, 4, 5) * r  # m45
        rows[1][3] = s.get(1, 2, 4) * r  # m24
        rows[2][4] = s.get(1, 3, 5) * r  # m35
    else:
        rows[1][2] = s.get(1, 2, 3) * r   # m23
        rows[2][3] = s.get(1, 3, 4) * r   # m34
        rows[0][2] = s.get(1, 2, 3) * q   # m13
        rows[2][4] = -s.get(2, 3, 5) * q  # m35
    return tuple(tuple(row) for row in rows)


def _suite_collection_vs_equations(scale: str) -> SuiteResult:
    res = SuiteResult("collection-vs-equations")
    rng = random.Random(31)
    per_type = 25 if scale == "quick" else 200
    for tid in SUPPORTED_TYPES:
        desc = type_descriptor(tid)
        tuples = _sample_tuples(tid, rng, 6)
        for _ in range(per_type):
            s = rng.choice(tuples)
            if rng.random() < 0.8:
                t = s.replace_free(rng.choice(tuples).free())
                rows = _random_masked_matrix(desc, rng)
            else:
                t = s
                rows = _solution_matrix(desc, s, rng)
            matrix = CandidateMatrix(rows, desc, desc)
            report = check_candidate_map(
                PCPresentation.from_params(t), PCPresentation.from_params(s), matrix
            )
            residuals = equations.relation_system_residuals(t, s, rows)
            res.record(
                report.is_homomorphism == (not any(residuals)),
                lambda tid=tid, s=s, t=t, rows=rows:
                f"{tid}: collection and equation system disagree for {rows} "
                f"(s={s}, t={t})",
            )
    return res


def _suite_group_laws(scale: str) -> SuiteResult:
    res = SuiteResult("group-laws")
    rng = random.Random(47)
    triples, bound = (60, 10 ** 3) if scale == "quick" else (250, 10 ** 6)
    for tid in SUPPORTED_TYPES:
        pres = PCPresentation.from_params(_sample_tuples(tid, rng, 1)[0])
        n = pres.n
        for _ in range(triples):
            x, y, z = (
                tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(3)
            )
            assoc = pres.multiply(pres.multiply(x, y), z) == pres.multiply(
                x, pres.multiply(y, z)
            )
            inv_ok = (
                pres.multiply(pres.inverse(x), x)
                == pres.multiply(x, pres.inverse(x))
                == pres.identity
            )
            a, b = rng.randint(-40, 40), rng.randint(-40, 40)
            pow_ok = pres.power(x, a + b) == pres.multiply(
                pres.power(x, a), pres.power(x, b)
            )
            res.record(
                assoc and inv_ok and pow_ok,
                lambda tid=tid, x=x, y=y, z=z: f"{tid}: law violated at {x},{y},{z}",
            )
    return res


def _suite_equivalence_laws(scale: str) -> SuiteResult:
    res = SuiteResult("equivalence-laws")
    rng = random.Random(59)
    per_type = 40 if scale == "quick" else 160
    for tid in SUPPORTED_TYPES:
        pool = _sample_tuples(tid, rng, per_type)
        by_rigid: dict[tuple, list[ParamTuple]] = {}
        for t in pool:
            by_rigid.setdefault(t.rigid(), []).append(t)
        for group in by_rigid.values():
            for s in group:
                res.record(
                    deciders.decide_same_finite_quotients(s, s).equal,
                    lambda s=s: f"reflexivity fails at {s}",
                )
                canon = genus.canonicalize(s)
                res.record(
                    genus.canonicalize(canon).entries == canon.entries,
                    lambda s=s: f"canonicalize not idempotent at {s}",
                )
                res.record(
                    deciders.decide_same_finite_quotients(s, canon).equal,
                    lambda s=s: f"canonical form not decide-equal at {s}",
                )
            for s, t in itertools.combinations(group, 2):
                fwd = deciders.decide_same_finite_quotients(s, t).equal
                bwd = deciders.decide_same_finite_quotients(t, s).equal
                res.record(
                    fwd == bwd, lambda s=s, t=t: f"symmetry fails at {s} vs {t}"
                )
            sample = group[:6]
            for s, t, u in itertools.product(sample, repeat=3):
                if (
                    deciders.decide_same_finite_quotients(s, t).equal
                    and deciders.decide_same_finite_quotients(t, u).equal
                ):
                    res.record(
                        deciders.decide_same_finite_quotients(s, u).equal,
                        lambda s=s, t=t, u=u: f"transitivity fails at {s},{t},{u}",
                    )
    return res


def _suite_witnesses(scale: str) -> SuiteResult:
    res = SuiteResult("witness-verification")
    rng = random.Random(71)
    bases, variants = (6, 6) if scale == "quick" else (16, 10)
    for tid in SUPPORTED_TYPES:
        for base in _sample_tuples(tid, rng, bases):
            group = [base] + [
                base.replace_free(other.free())
                for other in _sample_tuples(tid, rng, variants)
            ]
            for s, t in itertools.combinations(group, 2):
                decision = deciders.decide_same_finite_quotients(s, t)
                if not decision.equal:
                    continue
                for check in decision.per_prime:
                    res.record(
                        deciders.verify_prime_witness(s, t, check.witness),
                        lambda s=s, t=t, c=check:
                        f"witness at p={c.prime} fails verification for {s} vs {t}",
                    )
    return res


_SUITES = (
    _suite_unit_congruence,
    _suite_coupled_system,
    _suite_pair_orbits,
    _suite_collection_vs_equations,
    _suite_group_laws,
    _suite_equivalence_laws,
    _suite_witnesses,
)


def run_selfcheck(scale: str = "quick") -> SelfcheckReport:
    """Run every oracle suite at the given scale ("quick" or "full")."""
    if scale not in ("quick", "full"):
        raise ValueError("scale must be 'quick' or 'full'")
    results = []
    for suite in _SUITES:
        start = time.perf_counter()
        outcome = suite(scale)
        outcome.seconds = time.perf_counter() - start
        results.append(outcome)
    return SelfcheckReport(scale, tuple(results))
