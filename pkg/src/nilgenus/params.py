"""Group families, parameter tuples, validation and derived gcd profiles.

A group is described by a type tag and the structure constants c[i,j,k]
of a presentation on generators g1..gn with relations

    [gj, gi] = g_{j+1}^c[i,j,j+1] * ... * gn^c[i,j,n]   (i < j).

Four families are supported, one per isolator-rank sequence of the
nilpotent groups concerned: (2,1,1), (3,1,1), (2,1,1,1) and (2,1,2).
Every decision procedure downstream consumes the derived gcd/valuation
profile computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import (
    NilgenusError,
    gcd_all,
    p_valuation,
    prime_divisors,
)

Triple = tuple[int, int, int]

T211 = "2,1,1"
T311 = "3,1,1"
T2111 = "2,1,1,1"
T212 = "2,1,2"


class UnsupportedTypeError(NilgenusError):
    """Raised for type tags outside the four supported families."""


class InvalidParameterError(NilgenusError):
    """Raised when an operation requires a valid tuple and got none."""


@lru_cache(maxsize=None)
def _all_triples(n: int) -> tuple[Triple, ...]:
    return tuple(
        (i, j, k)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        for k in range(j + 1, n + 1)
    )


@lru_cache(maxsize=None)
def _triple_index(n: int) -> dict[Triple, int]:
    return {t: i for i, t in enumerate(_all_triples(n))}


def _triangular_mask(n: int, extra: frozenset[tuple[int, int]] = frozenset()):
    return tuple(
        tuple(j >= i or (i, j) in extra for j in range(1, n + 1))
        for i in range(1, n + 1)
    )


@dataclass(frozen=True, eq=False)
class TypeDescriptor:
    """Static description of one supported group family.

    Descriptors are registry singletons (see type_descriptor), so identity
    comparison and hashing are correct and cheap.
    """

    type_id: str
    hirsch_length: int
    isolator_type: tuple[int, ...]
    supported_triples: tuple[Triple, ...]
    positive_triples: tuple[Triple, ...]
    rigid_triples: tuple[Triple, ...]
    free_triples: tuple[Triple, ...]
    shape_mask: tuple[tuple[bool, ...], ...]

    @property
    def all_triples(self) -> tuple[Triple, ...]:
        return _all_triples(self.hirsch_length)


_DESCRIPTORS: dict[str, TypeDescriptor] = {
    T211: TypeDescriptor(
        type_id=T211,
        hirsch_length=4,
        isolator_type=(2, 1, 1),
        supported_triples=((1, 2, 3), (1, 2, 4), (1, 3, 4)),
        positive_triples=((1, 2, 3), (1, 3, 4)),
        rigid_triples=((1, 2, 3), (1, 3, 4)),
        free_triples=((1, 2, 4),),
        shape_mask=_triangular_mask(4),
    ),
    T311: TypeDescriptor(
        type_id=T311,
        hirsch_length=5,
        isolator_type=(3, 1, 1),
        supported_triples=((1, 2, 4), (1, 2, 5), (1, 3, 5), (1, 4, 5), (2, 3, 5)),
        positive_triples=((1, 2, 4), (1, 4, 5)),
        rigid_triples=((1, 2, 4), (1, 4, 5), (2, 3, 5)),
        free_triples=((1, 3, 5), (1, 2, 5)),
        shape_mask=_triangular_mask(5),
    ),
    T2111: TypeDescriptor(
        type_id=T2111,
        hirsch_length=5,
        isolator_type=(2, 1, 1, 1),
        supported_triples=(
            (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 5), (1, 4, 5), (2, 3, 5),
        ),
        positive_triples=((1, 2, 3), (1, 3, 4), (1, 4, 5)),
        rigid_triples=((1, 2, 3), (1, 3, 4), (1, 4, 5), (2, 3, 5)),
        free_triples=((1, 2, 4), (1, 3, 5), (1, 2, 5)),
        shape_mask=_triangular_mask(5),
    ),
    T212: TypeDescriptor(
        type_id=T212,
        hirsch_length=5,
        isolator_type=(2, 1, 2),
        supported_triples=((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4), (2, 3, 5)),
        positive_triples=((1, 2, 3), (1, 3, 4), (2, 3, 5)),
        rigid_triples=((1, 2, 3), (1, 3, 4), (2, 3, 5)),
        free_triples=((1, 2, 4), (1, 2, 5)),
        shape_mask=_triangular_mask(5, frozenset({(2, 1), (5, 4)})),
    ),
}

SUPPORTED_TYPES = tuple(_DESCRIPTORS)


def type_descriptor(type_id: str) -> TypeDescriptor:
    tag = type_id.strip().strip("()").replace(" ", "")
    if tag in _DESCRIPTORS:
        return _DESCRIPTORS[tag]
    raise UnsupportedTypeError(
        f"unsupported type {type_id!r}: groups of class at most 2 and Hirsch "
        f"length at most 5 have a one-element genus and are not handled; "
        f"supported types: {', '.join(SUPPORTED_TYPES)}"
    )


@dataclass(frozen=True)
class ParamTuple:
    """A structure-constant vector together with its type tag.

    Entries for every triple 1 <= i < j < k <= n are stored, including the
    ones the family forces to zero, so that validation can report zero
    pattern violations instead of refusing to represent them.
    """

    type_desc: TypeDescriptor
    entries: tuple[int, ...]  # aligned with type_desc.all_triples

    def get(self, i: int, j: int, k: int) -> int:
        idx = _triple_index(self.type_desc.hirsch_length).get((i, j, k))
        if idx is None:
            raise InvalidParameterError(f"no triple ({i},{j},{k}) for n={self.n}")
        return self.entries[idx]

    @property
    def n(self) -> int:
        return self.type_desc.hirsch_length

    @property
    def type_id(self) -> str:
        return self.type_desc.type_id

    def rigid(self) -> tuple[int, ...]:
        idx = _triple_index(self.type_desc.hirsch_length)
        return tuple(self.entries[idx[t]] for t in self.type_desc.rigid_triples)

    def free(self) -> tuple[int, ...]:
        idx = _triple_index(self.type_desc.hirsch_length)
        return tuple(self.entries[idx[t]] for t in self.type_desc.free_triples)

    def replace_free(self, values: tuple[int, ...]) -> "ParamTuple":
        """Copy of this tuple with the free entries replaced."""
        free = dict(zip(self.type_desc.free_triples, values, strict=True))
        entries = tuple(
            free.get(t, e) for t, e in zip(self.type_desc.all_triples, self.entries)
        )
        return ParamTuple(self.type_desc, entries)

    def as_dict(self) -> dict[Triple, int]:
        return {
            t: e for t, e in zip(self.type_desc.all_triples, self.entries) if e
        }

    def to_json_dict(self) -> dict:
        return {
            "type": self.type_id,
            "t": {"".join(map(str, t)): v for t, v in sorted(self.as_dict().items())},
        }

    def __str__(self) -> str:
        inner = ", ".join(f"{''.join(map(str, t))}={v}" for t, v in sorted(self.as_dict().items()))
        return f"({self.type_id}; {inner})"


def param_tuple(type_id: str, constants: dict | None = None, **by_name: int) -> ParamTuple:
    """Build a ParamTuple from triple keys.

    Keys may be (i, j, k) tuples, strings like "123", or keyword arguments
    like t123=5.  Unlisted triples are zero.
    """
    desc = type_descriptor(type_id)
    table: dict[Triple, int] = {}

    def put(key, value) -> None:
        if isinstance(key, str):
            digits = key.lstrip("t")
            if len(digits) != 3 or not digits.isdigit():
                raise InvalidParameterError(f"bad triple key {key!r}")
            triple = (int(digits[0]), int(digits[1]), int(digits[2]))
        else:
            triple = tuple(key)
        if triple not in desc.all_triples:
            raise InvalidParameterError(
                f"triple {triple} is out of range for Hirsch length {desc.hirsch_length}"
            )
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidParameterError(f"entry for {triple} must be an integer")
        table[triple] = value

    for key, value in (constants or {}).items():
        put(key, value)
    for key, value in by_name.items():
        put(key, value)
    entries = tuple(table.get(t, 0) for t in desc.all_triples)
    return ParamTuple(desc, entries)


def from_json_dict(data: dict) -> ParamTuple:
    """Parse the interchange form {"type": "2,1,1", "t": {"123": 5, ...}}."""
    if not isinstance(data, dict):
        raise InvalidParameterError("parameter JSON must be an object")
    if "type" not in data:
        raise InvalidParameterError('parameter JSON lacks the "type" key')
    raw = data.get("t", {})
    if not isinstance(raw, dict):
        raise InvalidParameterError('"t" must map triple keys to integers')
    constants: dict[str, int] = {}
    for key, value in raw.items():
        if isinstance(value, str):
            try:
                value = int(value)
            except ValueError:
                raise InvalidParameterError(f"entry {key!r} is not an integer")
        constants[str(key)] = value
    return param_tuple(str(data["type"]), constants)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[tuple[str, int], ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [{"constraint": c, "value": v} for c, v in self.violations],
        }


def _tname(triple: Triple) -> str:
    return "c" + "".join(map(str, triple))


@lru_cache(maxsize=65536)
def validate_membership(t: ParamTuple, canonical: bool = False) -> ValidationReport:
    """Check the family constraints; canonical mode also checks the
    representative boxes (closed-form for (2,1,1)/(3,1,1), fixed point of
    the canonicalization for (2,1,1,1)/(2,1,2))."""
    desc = t.type_desc
    bad: list[tuple[str, int]] = []
    supported = set(desc.supported_triples)
    for triple, value in zip(desc.all_triples, t.entries):
        if triple not in supported and value != 0:
            bad.append((f"{_tname(triple)} must be 0 for type ({desc.type_id})", value))
    for triple in desc.positive_triples:
        if t.get(*triple) <= 0:
            bad.append((f"{_tname(triple)} must be positive", t.get(*triple)))
    for triple in desc.supported_triples:
        if triple not in desc.positive_triples and t.get(*triple) < 0:
            bad.append((f"{_tname(triple)} must be nonnegative", t.get(*triple)))
    if desc.type_id == T212:
        a, b = t.get(1, 3, 4), t.get(2, 3, 5)
        if a > 0 and b > 0 and b % a != 0:
            bad.append(("c134 must divide c235", b))

    if canonical and not bad:
        prof = modulus_profile(t)
        if desc.type_id == T211:
            if 2 * t.get(1, 2, 4) > prof.d:
                bad.append(("2*c124 must not exceed d", t.get(1, 2, 4)))
        elif desc.type_id == T311:
            if 2 * t.get(1, 3, 5) > prof.d1:
                bad.append(("2*c135 must not exceed d1", t.get(1, 3, 5)))
            elif 2 * t.get(1, 2, 5) > prof.d2:
                bad.append(("2*c125 must not exceed d2", t.get(1, 2, 5)))
        else:
            from . import genus  # deferred: orbit machinery sits above this module

            canon = genus.canonicalize(t)
            if canon.entries != t.entries:
                for triple in desc.free_triples:
                    if canon.get(*triple) != t.get(*triple):
                        bad.append(
                            (f"{_tname(triple)} is not the canonical representative",
                             t.get(*triple))
                        )
    return ValidationReport(valid=not bad, violations=tuple(bad))


def require_valid(t: ParamTuple, canonical: bool = False) -> None:
    report = validate_membership(t, canonical=canonical)
    if not report.valid:
        name, value = report.violations[0]
        raise InvalidParameterError(f"invalid tuple {t}: {name} (got {value})")


@dataclass(frozen=True)
class ModulusProfile:
    """Derived gcd data; one field set per family, the rest None.

    relevant_primes lists exactly the primes at which the governing
    prime-power modulus is nontrivial; every other prime is vacuous for
    the finite-quotient decision.
    """

    type_id: str
    relevant_primes: tuple[int, ...]
    d: int | None = None            # (2,1,1): gcd(c123, c134)
    d1: int | None = None           # (3,1,1): gcd(c145, c235)
    d2: int | None = None           # (3,1,1): gcd(c124, c135, d1)
    d3: int | None = None           # (2,1,1,1): gcd(c123, c145, c235)
    c134: int | None = None         # (2,1,1,1): second modulus factor
    m1: int | None = None           # (2,1,2): gcd(c134, c123)
    m2: int | None = None           # (2,1,2): gcd(c235, c123)
    k: int | None = None            # (2,1,2): c235 // c134

    def alpha_beta(self, p: int) -> tuple[int, int]:
        """(2,1,1,1) only: exponents of p in d3 and in c134."""
        if self.type_id != T2111:
            raise InvalidParameterError("alpha_beta is specific to type (2,1,1,1)")
        return int(p_valuation(self.d3, p)), int(p_valuation(self.c134, p))

    def to_json_dict(self) -> dict:
        out: dict = {"type": self.type_id, "relevant_primes": list(self.relevant_primes)}
        for name in ("d", "d1", "d2", "d3", "m1", "m2", "k"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


@lru_cache(maxsize=65536)
def modulus_profile(t: ParamTuple) -> ModulusProfile:
    """Compute the gcd moduli and relevant primes for a valid tuple."""
    require_valid(t)
    tid = t.type_id
    if tid == T211:
        d = gcd_all(t.get(1, 2, 3), t.get(1, 3, 4))
        return ModulusProfile(tid, prime_divisors(d), d=d)
    if tid == T311:
        d1 = gcd_all(t.get(1, 4, 5), t.get(2, 3, 5))
        d2 = gcd_all(t.get(1, 2, 4), t.get(1, 3, 5), d1)
        return ModulusProfile(tid, prime_divisors(d1), d1=d1, d2=d2)
    if tid == T2111:
        d3 = gcd_all(t.get(1, 2, 3), t.get(1, 4, 5), t.get(2, 3, 5))
        c134 = t.get(1, 3, 4)
        return ModulusProfile(
            tid, prime_divisors(c134 * d3), d3=d3, c134=c134
        )
    m1 = gcd_all(t.get(1, 3, 4), t.get(1, 2, 3))
    m2 = gcd_all(t.get(2, 3, 5), t.get(1, 2, 3))
    return ModulusProfile(
        tid,
        prime_divisors(m1 * m2),
        m1=m1,
        m2=m2,
        k=t.get(2, 3, 5) // t.get(1, 3, 4),
    )
