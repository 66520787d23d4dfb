"""Finite-basis star differential graded algebras and their graded tensor.

A StarDGA here is a graded algebra presented by structure constants over
an explicit finite basis, together with an antilinear star map and a
degree-raising differential, both given as matrices over the basis. The
axioms are checked exhaustively over basis tuples:

    degree:   |ab| = |a| + |b|  wherever the product is nonzero
    star:     (a*)* = a,   (ab)* = (-1)^{|a||b|} b* a*
    diff:     d^2 = 0,     d[ab] = d[a] b + (-1)^{|a|} a d[b]
    compat:   d[a*] = s d[a]*  for one global sign s

The graded tensor product of two such algebras multiplies componentwise
with a crossing sign, (a1 (x) b1)(a2 (x) b2) = +/- (a1 a2 (x) b1 b2),
where the sign weighs |b1||a2| (first convention) or |a1||b2| (second).
Star passes through factorwise (it is a degree-0 map, so the graded
action contributes no sign); the differential acts as d (x) I + I (x) d
with the crossing sign of the chosen convention. The product of two valid
algebras with equal global signs is again valid, and that is checked, not
assumed.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .arith import EC_ONE, EC_ZERO, ExactComplex
from .products import KozulConvention

__all__ = [
    "StarDGA",
    "GradedElement",
    "AxiomCheck",
    "DGAReport",
    "SignMismatchError",
    "validate_dga",
    "dga_tensor",
    "exterior_example",
    "trivial_example",
    "reassociation_matches",
    "dga_to_json",
]

Coeffs = dict[int, ExactComplex]


class SignMismatchError(Exception):
    """Tensor factors with different global differential-star signs."""


def _clean(c: Coeffs) -> Coeffs:
    return {k: v for k, v in c.items() if not v.is_zero()}


@dataclass(frozen=True)
class StarDGA:
    basis: tuple[str, ...]
    degrees: tuple[int, ...]
    unit: int
    mult: dict[tuple[int, int], Coeffs]
    star: dict[int, Coeffs]
    diff: dict[int, Coeffs]

    @property
    def size(self) -> int:
        return len(self.basis)

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def element(self, coeffs: Coeffs) -> "GradedElement":
        return GradedElement(self, _clean(dict(coeffs)))

    def basis_element(self, i: int) -> "GradedElement":
        return self.element({i: EC_ONE})

    def zero(self) -> "GradedElement":
        return self.element({})


@dataclass(frozen=True)
class GradedElement:
    """A vector over a StarDGA basis; operations follow (anti)linearity."""

    algebra: StarDGA
    coeffs: Coeffs = field(default_factory=dict)

    def __add__(self, other: "GradedElement") -> "GradedElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, EC_ZERO) + v
        return self.algebra.element(out)

    def scale(self, s: ExactComplex) -> "GradedElement":
        return self.algebra.element({k: s * v for k, v in self.coeffs.items()})

    def __neg__(self) -> "GradedElement":
        return self.scale(ExactComplex(-1))

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def __mul__(self, other: "GradedElement") -> "GradedElement":
        out: Coeffs = {}
        for i, ci in self.coeffs.items():
            for j, cj in other.coeffs.items():
                for k, c in self.algebra.mult.get((i, j), {}).items():
                    out[k] = out.get(k, EC_ZERO) + ci * cj * c
        return self.algebra.element(out)

    def star(self) -> "GradedElement":
        out: Coeffs = {}
        for i, ci in self.coeffs.items():
            for j, c in self.algebra.star.get(i, {}).items():
                out[j] = out.get(j, EC_ZERO) + ci.conjugate() * c
        return self.algebra.element(out)

    def d(self) -> "GradedElement":
        out: Coeffs = {}
        for i, ci in self.coeffs.items():
            for j, c in self.algebra.diff.get(i, {}).items():
                out[j] = out.get(j, EC_ZERO) + ci * c
        return self.algebra.element(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.algebra is other.algebra and _clean(self.coeffs) == _clean(other.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({v}) {self.algebra.basis[k]}" for k, v in sorted(self.coeffs.items())
        )


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class DGAReport:
    checks: tuple[AxiomCheck, ...]
    global_sign: int | None   # the s in d[a*] = s d[a]*, when determined

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _sign(k: int) -> ExactComplex:
    return EC_ONE if k % 2 == 0 else ExactComplex(-1)


def validate_dga(a: StarDGA) -> DGAReport:
    """Exhaustively check every axiom over the basis; report each.

    Violations become report entries, never exceptions. The global sign s
    is the one consistent with every basis element; when no element
    constrains it (all differentials of starred elements vanish) it is
    reported as None.
    """
    checks: list[AxiomCheck] = []

    def basis_el(i):
        return a.basis_element(i)

    # unit
    unit_ok = a.degrees[a.unit] == 0 and all(
        basis_el(a.unit) * basis_el(i) == basis_el(i)
        and basis_el(i) * basis_el(a.unit) == basis_el(i)
        for i in range(a.size)
    )
    checks.append(AxiomCheck("unit", unit_ok))

    # degree additivity of the product
    bad = [
        (i, j, k)
        for (i, j), cs in a.mult.items()
        for k, c in cs.items()
        if not c.is_zero() and a.degrees[k] != a.degrees[i] + a.degrees[j]
    ]
    checks.append(AxiomCheck(
        "degree_additivity", not bad,
        "" if not bad else f"first failure at basis triple {bad[0]}",
    ))

    # associativity of the product
    assoc_ok = all(
        (basis_el(i) * basis_el(j)) * basis_el(k) == basis_el(i) * (basis_el(j) * basis_el(k))
        for i, j, k in itertools.product(range(a.size), repeat=3)
    )
    checks.append(AxiomCheck("mult_associative", assoc_ok))

    # star: degree-preserving, involutive, graded-antimultiplicative
    star_deg_ok = all(
        a.degrees[j] == a.degrees[i]
        for i, cs in a.star.items()
        for j, c in cs.items()
        if not c.is_zero()
    )
    checks.append(AxiomCheck("star_preserves_degree", star_deg_ok))
    checks.append(AxiomCheck(
        "star_involutive",
        all(basis_el(i).star().star() == basis_el(i) for i in range(a.size)),
    ))
    anti_ok = all(
        (basis_el(i) * basis_el(j)).star()
        == (basis_el(j).star() * basis_el(i).star()).scale(_sign(a.degrees[i] * a.degrees[j]))
        for i in range(a.size)
        for j in range(a.size)
    )
    checks.append(AxiomCheck("star_graded_antimultiplicative", anti_ok))

    # differential: degree +1, d^2 = 0, graded Leibniz
    diff_deg_ok = all(
        a.degrees[j] == a.degrees[i] + 1
        for i, cs in a.diff.items()
        for j, c in cs.items()
        if not c.is_zero()
    )
    checks.append(AxiomCheck("diff_raises_degree", diff_deg_ok))
    checks.append(AxiomCheck(
        "d_squared_zero",
        all(basis_el(i).d().d().is_zero() for i in range(a.size)),
    ))
    leibniz_ok = all(
        (basis_el(i) * basis_el(j)).d()
        == basis_el(i).d() * basis_el(j)
        + (basis_el(i) * basis_el(j).d()).scale(_sign(a.degrees[i]))
        for i in range(a.size)
        for j in range(a.size)
    )
    checks.append(AxiomCheck("graded_leibniz", leibniz_ok))

    # compatibility d[a*] = s d[a]*
    possible = {+1, -1}
    compat_ok = True
    for i in range(a.size):
        lhs = basis_el(i).star().d()
        rhs = basis_el(i).d().star()
        local = {s for s in (+1, -1) if lhs == rhs.scale(ExactComplex(s))}
        if not local:
            compat_ok = False
            break
        possible &= local
        if not possible:
            compat_ok = False
            break
    checks.append(AxiomCheck("diff_star_compatible", compat_ok))
    if not compat_ok:
        sign: int | None = None
    elif possible == {+1, -1}:
        sign = None   # unconstrained: every d[a*] vanished
    else:
        sign = next(iter(possible))
    return DGAReport(tuple(checks), sign)


def dga_tensor(a: StarDGA, b: StarDGA, convention: KozulConvention) -> StarDGA:
    """Graded tensor product; factors must validate with equal global signs.

    Basis elements are ordered pairs (itertools.product order), degrees
    add, and the crossing sign follows the chosen convention uniformly in
    the multiplication and the differential.
    """
    ra, rb = validate_dga(a), validate_dga(b)
    if not ra.all_ok:
        raise ValueError("left tensor factor fails the star-DGA axioms")
    if not rb.all_ok:
        raise ValueError("right tensor factor fails the star-DGA axioms")
    if ra.global_sign is not None and rb.global_sign is not None \
            and ra.global_sign != rb.global_sign:
        raise SignMismatchError(
            f"global signs differ: {ra.global_sign:+d} vs {rb.global_sign:+d}"
        )

    pairs = list(itertools.product(range(a.size), range(b.size)))
    index = {p: n for n, p in enumerate(pairs)}
    basis = tuple(f"{a.basis[i]}(x){b.basis[j]}" for i, j in pairs)
    degrees = tuple(a.degrees[i] + b.degrees[j] for i, j in pairs)
    unit = index[(a.unit, b.unit)]

    mult: dict[tuple[int, int], Coeffs] = {}
    for (i1, j1), (i2, j2) in itertools.product(pairs, pairs):
        if convention is KozulConvention.FIRST:
            crossing = _sign(b.degrees[j1] * a.degrees[i2])
        else:
            crossing = _sign(a.degrees[i1] * b.degrees[j2])
        out: Coeffs = {}
        for ka, ca in a.mult.get((i1, i2), {}).items():
            for kb, cb in b.mult.get((j1, j2), {}).items():
                out[index[(ka, kb)]] = out.get(index[(ka, kb)], EC_ZERO) + crossing * ca * cb
        out = _clean(out)
        if out:
            mult[(index[(i1, j1)], index[(i2, j2)])] = out

    star: dict[int, Coeffs] = {}
    for i, j in pairs:
        out = {}
        for ka, ca in a.star.get(i, {}).items():
            for kb, cb in b.star.get(j, {}).items():
                out[index[(ka, kb)]] = out.get(index[(ka, kb)], EC_ZERO) + ca * cb
        out = _clean(out)
        if out:
            star[index[(i, j)]] = out

    diff: dict[int, Coeffs] = {}
    for i, j in pairs:
        out = {}
        # d (x) I term
        left_sign = EC_ONE if convention is KozulConvention.FIRST else _sign(b.degrees[j])
        for ka, ca in a.diff.get(i, {}).items():
            key = index[(ka, j)]
            out[key] = out.get(key, EC_ZERO) + left_sign * ca
        # I (x) d term
        right_sign = _sign(a.degrees[i]) if convention is KozulConvention.FIRST else EC_ONE
        for kb, cb in b.diff.get(j, {}).items():
            key = index[(i, kb)]
            out[key] = out.get(key, EC_ZERO) + right_sign * cb
        out = _clean(out)
        if out:
            diff[index[(i, j)]] = out

    return StarDGA(basis, degrees, unit, mult, star, diff)


def exterior_example() -> StarDGA:
    """Basis {1, x, dx}: x^2 = 0, x dx = dx x = 0, d(x) = dx, star fixes
    the basis. Valid with global sign +1."""
    one = {0: EC_ONE}
    return StarDGA(
        basis=("1", "x", "dx"),
        degrees=(0, 0, 1),
        unit=0,
        mult={
            (0, 0): dict(one),
            (0, 1): {1: EC_ONE}, (1, 0): {1: EC_ONE},
            (0, 2): {2: EC_ONE}, (2, 0): {2: EC_ONE},
            # x^2 = x dx = dx x = dx dx = 0
        },
        star={0: {0: EC_ONE}, 1: {1: EC_ONE}, 2: {2: EC_ONE}},
        diff={1: {2: EC_ONE}},
    )


def trivial_example() -> StarDGA:
    """The one-element unit algebra."""
    return StarDGA(
        basis=("1",), degrees=(0,), unit=0,
        mult={(0, 0): {0: EC_ONE}},
        star={0: {0: EC_ONE}},
        diff={},
    )


def reassociation_matches(a: StarDGA, b: StarDGA, c: StarDGA,
                          convention: KozulConvention) -> bool:
    """Structure constants of (a(x)b)(x)c equal those of a(x)(b(x)c).

    Both products enumerate basis triples in the same flattened order, so
    the canonical reassociation bijection is the identity on indices and
    equality of the constant tables is the whole isomorphism check.
    """
    left = dga_tensor(dga_tensor(a, b, convention), c, convention)
    right = dga_tensor(a, dga_tensor(b, c, convention), convention)
    return (
        left.degrees == right.degrees
        and left.unit == right.unit
        and left.mult == right.mult
        and left.star == right.star
        and left.diff == right.diff
    )


def dga_to_json(a: StarDGA) -> dict:
    def coeffs_json(cs: Coeffs) -> dict[str, str]:
        return {str(k): v.to_string() for k, v in cs.items()}

    return {
        "basis": list(a.basis),
        "degrees": list(a.degrees),
        "unit": a.unit,
        "mult": {f"{i},{j}": coeffs_json(cs) for (i, j), cs in sorted(a.mult.items())},
        "star": {str(i): coeffs_json(cs) for i, cs in sorted(a.star.items())},
        "diff": {str(i): coeffs_json(cs) for i, cs in sorted(a.diff.items())},
    }


def dumps(a: StarDGA, **kwargs) -> str:
    return json.dumps(dga_to_json(a), **kwargs)
