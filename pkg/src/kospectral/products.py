"""Operator-level products of real spectral triples.

The graded product is implemented in its resolved, ungraded-tensor form.
For two even triples the two graded sign conventions give the two
equivalent operator pairs

    convention 1:  D = D_i (x) I  +  g_i (x) D_j
                   J linear part = M_i conj(g_i)^a (x) M_j,   a = (1-eps''_j)/2
    convention 2:  D = D_i (x) g_j  +  I (x) D_j
                   J linear part = M_i (x) M_j conj(g_j)^b,   b = (1-eps''_i)/2

(the grading factor rides through the conjugation that J carries, hence
conj(g); all gradings in this package are real matrices, for which the
distinction vanishes). A mixed-parity product uses the pair matching its
order -- even first takes convention 1 with the odd factor's label as
eps''_j, odd first takes convention 2 -- and produces an odd triple. The
odd-odd product doubles the space with a C^2 factor:

    H = H_i (x) H_j (x) C^2,  gamma = I (x) I (x) Z,
    D = D_i (x) I (x) X  +  I (x) D_j (x) Y,
    J linear part = M_i (x) M_j (x) X^(1-eps''_i)/2 (iY)^(1+eps''_j)/2.

The traditional (ungraded) product is kept alongside, grading-factor-free
in J, precisely so its failure matrix can be reproduced.

The connecting involution U = (I + g_i (x) I + I (x) g_j - g_i (x) g_j)/2
maps the convention-1 Dirac to the convention-2 one exactly. For the real
structures it maps J onto J-tilde up to a unit scalar which is -1 exactly
when eps''_i = eps''_j = -1 and +1 otherwise; the scalar is forced (a
short computation with the grading projectors (1 +/- g_i)/2 shows it), and
both phases implement the same real structure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .arith import (
    CMatrix,
    EC_I,
    ExactComplex,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    conj_entrywise,
    kron,
)
from .kosigns import (
    KOClass,
    KOSigns,
    Parity,
    VariantMismatchError,
    classify,
    predict,
    traditional_constraint_holds,
)
from .triples import (
    AntiUnitary,
    Grading,
    RealSpectralTriple,
    extract_signs,
    validate_with_signs,
)

__all__ = [
    "KozulConvention",
    "DiracChoice",
    "ProductReport",
    "UnsupportedConventionError",
    "OddFirstFactorError",
    "OddSecondFactorError",
    "UndefinedProductOperatorError",
    "graded_product",
    "traditional_product",
    "product_unitary",
    "ConventionEquivalence",
    "check_convention_equivalence",
    "check_dirac_square",
    "OperatorAssociativity",
    "check_operator_associativity",
]


class KozulConvention(enum.Enum):
    FIRST = "first"
    SECOND = "second"


class DiracChoice(enum.Enum):
    D = "D"
    D_TILDE = "Dtilde"


class UnsupportedConventionError(Exception):
    """A mixed-parity product was requested with the wrong convention."""


class OddFirstFactorError(Exception):
    """Traditional choice D needs a graded first factor."""


class OddSecondFactorError(Exception):
    """Traditional choice D-tilde needs a graded second factor."""


class UndefinedProductOperatorError(Exception):
    """A traditional product whose operators violate a sign relation.

    Carries the violated relation and, where a definite sign exists on
    each side separately, what the two sides wanted.
    """

    def __init__(self, relation: str, detail: str):
        self.relation = relation
        self.detail = detail
        super().__init__(f"traditional product undefined: {relation} fails ({detail})")


@dataclass(frozen=True)
class ProductReport:
    result: RealSpectralTriple
    predicted: KOSigns
    extracted: KOSigns
    ko_class: KOClass
    convention: KozulConvention | None

    def to_json(self) -> dict:
        return {
            "class": str(self.ko_class),
            "hilbert_dim": self.result.hilbert_dim,
            "convention": self.convention.value if self.convention else None,
            "predicted": self.predicted.to_json(),
            "extracted": self.extracted.to_json(),
        }


def _signs_with_label(t: RealSpectralTriple) -> KOSigns:
    reading = extract_signs(t)
    if reading.eps_prime is None:
        raise VariantMismatchError(0, 0, "factor has indeterminate eps'")
    return KOSigns(reading.eps, reading.eps_prime, reading.eps_dprime)


def _product_gens(ti: RealSpectralTriple, tj: RealSpectralTriple,
                  tail: CMatrix | None = None) -> tuple[CMatrix, ...]:
    gens = []
    for gi in ti.algebra_gens:
        for gj in tj.algebra_gens:
            g = kron(gi, gj)
            gens.append(kron(g, tail) if tail is not None else g)
    return tuple(gens)


def _graded_even_even(ti, tj, si, sj, convention):
    ni, nj = ti.hilbert_dim, tj.hilbert_dim
    gi, gj = ti.grading.matrix, tj.grading.matrix
    mi, mj = ti.real_structure.matrix, tj.real_structure.matrix
    if convention is KozulConvention.FIRST:
        dirac = kron(ti.dirac, CMatrix.identity(nj)) + kron(gi, tj.dirac)
        left = mi if sj.eps_dprime == +1 else mi @ conj_entrywise(gi)
        m = kron(left, mj)
    else:
        dirac = kron(ti.dirac, gj) + kron(CMatrix.identity(ni), tj.dirac)
        right = mj if si.eps_dprime == +1 else mj @ conj_entrywise(gj)
        m = kron(mi, right)
    return RealSpectralTriple(
        hilbert_dim=ni * nj,
        algebra_gens=_product_gens(ti, tj),
        dirac=dirac,
        real_structure=AntiUnitary(m),
        grading=Grading.nontrivial(kron(gi, gj)),
    )


def _graded_even_odd(ti, tj, si, sj, label):
    # even factor first: the convention-1 resolved pair, with the odd
    # factor's label playing eps''_j
    ni, nj = ti.hilbert_dim, tj.hilbert_dim
    gi = ti.grading.matrix
    mi, mj = ti.real_structure.matrix, tj.real_structure.matrix
    dirac = kron(ti.dirac, CMatrix.identity(nj)) + kron(gi, tj.dirac)
    left = mi if sj.eps_dprime == +1 else mi @ conj_entrywise(gi)
    return RealSpectralTriple(
        hilbert_dim=ni * nj,
        algebra_gens=_product_gens(ti, tj),
        dirac=dirac,
        real_structure=AntiUnitary(kron(left, mj)),
        grading=Grading.trivial(label),
    )


def _graded_odd_even(ti, tj, si, sj, label):
    # odd factor first: the convention-2 resolved pair, eps''_i the label
    ni, nj = ti.hilbert_dim, tj.hilbert_dim
    gj = tj.grading.matrix
    mi, mj = ti.real_structure.matrix, tj.real_structure.matrix
    dirac = kron(ti.dirac, gj) + kron(CMatrix.identity(ni), tj.dirac)
    right = mj if si.eps_dprime == +1 else mj @ conj_entrywise(gj)
    return RealSpectralTriple(
        hilbert_dim=ni * nj,
        algebra_gens=_product_gens(ti, tj),
        dirac=dirac,
        real_structure=AntiUnitary(kron(mi, right)),
        grading=Grading.trivial(label),
    )


_PAULI_IY = PAULI_Y.scale(EC_I)   # real matrix [[0, 1], [-1, 0]]


def _graded_odd_odd(ti, tj, si, sj):
    ni, nj = ti.hilbert_dim, tj.hilbert_dim
    mi, mj = ti.real_structure.matrix, tj.real_structure.matrix
    ident_i, ident_j = CMatrix.identity(ni), CMatrix.identity(nj)
    dirac = kron(kron(ti.dirac, ident_j), PAULI_X) + kron(
        kron(ident_i, tj.dirac), PAULI_Y
    )
    tail = CMatrix.identity(2)
    if si.eps_dprime == -1:
        tail = tail @ PAULI_X
    if sj.eps_dprime == +1:
        tail = tail @ _PAULI_IY
    m = kron(kron(mi, mj), tail)
    grading = Grading.nontrivial(kron(kron(ident_i, ident_j), PAULI_Z))
    return RealSpectralTriple(
        hilbert_dim=ni * nj * 2,
        algebra_gens=_product_gens(ti, tj, tail=CMatrix.identity(2)),
        dirac=dirac,
        real_structure=AntiUnitary(m),
        grading=grading,
    )


def graded_product(
    ti: RealSpectralTriple,
    tj: RealSpectralTriple,
    convention: KozulConvention = KozulConvention.FIRST,
) -> ProductReport:
    """Graded product of two triples, validated against the sign law.

    Raises :class:`kosigns.VariantMismatchError` when the factors mix the
    upper and lower variants, and :class:`UnsupportedConventionError` when
    a mixed-parity pair is asked for the convention its order does not
    define (even-first is a convention-1 construction, odd-first a
    convention-2 one). The odd-odd construction is single-form; the
    convention argument is accepted and ignored there.

    The report carries the built triple, the sign-law prediction, the
    operator-extracted signs and the resulting class; prediction and
    extraction agreeing is asserted, not assumed.
    """
    si, sj = _signs_with_label(ti), _signs_with_label(tj)
    pi, pj = ti.parity, tj.parity
    predicted, out_parity = predict(si, pi, sj, pj)

    if pi is Parity.EVEN and pj is Parity.EVEN:
        result = _graded_even_even(ti, tj, si, sj, convention)
    elif pi is Parity.EVEN and pj is Parity.ODD:
        if convention is not KozulConvention.FIRST:
            raise UnsupportedConventionError(
                "even-odd products resolve with convention 1 only"
            )
        result = _graded_even_odd(ti, tj, si, sj, predicted.eps_dprime)
    elif pi is Parity.ODD and pj is Parity.EVEN:
        if convention is not KozulConvention.SECOND:
            raise UnsupportedConventionError(
                "odd-even products resolve with convention 2 only"
            )
        result = _graded_odd_even(ti, tj, si, sj, predicted.eps_dprime)
    else:
        result = _graded_odd_odd(ti, tj, si, sj)

    ko_class, extracted = validate_with_signs(result)
    if extracted != predicted:
        raise AssertionError(
            f"extracted {extracted} != predicted {predicted} for graded product"
        )
    expected_class = classify(predicted, out_parity)
    if ko_class != expected_class:
        raise AssertionError(f"classified {ko_class}, expected {expected_class}")
    return ProductReport(result, predicted, extracted, ko_class,
                         convention if (pi is Parity.EVEN and pj is Parity.EVEN) else None)


def mixed_parity_convention(ti: RealSpectralTriple, tj: RealSpectralTriple) -> KozulConvention:
    """The convention a mixed-parity ordered pair resolves with."""
    if ti.parity is Parity.EVEN and tj.parity is Parity.ODD:
        return KozulConvention.FIRST
    if ti.parity is Parity.ODD and tj.parity is Parity.EVEN:
        return KozulConvention.SECOND
    return KozulConvention.FIRST


# --------------------------------------------------------------------------
# Traditional product.
# --------------------------------------------------------------------------


def _two_sided_sign(lhs: CMatrix, rhs: CMatrix) -> int | None:
    if lhs == rhs:
        return +1
    if lhs == -rhs:
        return -1
    return None


def traditional_product(
    ti: RealSpectralTriple,
    tj: RealSpectralTriple,
    choice: DiracChoice = DiracChoice.D,
) -> ProductReport:
    """Ungraded-prescription product: J = J_i (x) J_j with no grading factors.

    Choice D needs an even first factor (its Dirac uses gamma_i); choice
    D-tilde an even second factor. When the built operators violate the
    eps' relation the raised :class:`UndefinedProductOperatorError` names
    the relation; that happens exactly when the classic sign constraint
    fails, which the caller can cross-check.

    The result's grading exists only if both factors are even. An odd
    result is classified by its (eps, eps') pair against the classic
    columns; the report's class uses the representative upper label.
    """
    if choice is DiracChoice.D and ti.parity is Parity.ODD:
        raise OddFirstFactorError("choice D undefined: first factor has no grading")
    if choice is DiracChoice.D_TILDE and tj.parity is Parity.ODD:
        raise OddSecondFactorError("choice Dtilde undefined: second factor has no grading")

    ni, nj = ti.hilbert_dim, tj.hilbert_dim
    mi, mj = ti.real_structure.matrix, tj.real_structure.matrix
    if choice is DiracChoice.D:
        dirac = kron(ti.dirac, CMatrix.identity(nj)) + kron(ti.grading.matrix, tj.dirac)
    else:
        dirac = kron(ti.dirac, tj.grading.matrix) + kron(CMatrix.identity(ni), tj.dirac)
    m = kron(mi, mj)

    both_even = ti.parity is Parity.EVEN and tj.parity is Parity.EVEN
    si, sj = _signs_with_label(ti), _signs_with_label(tj)

    eps = _two_sided_sign(m @ conj_entrywise(m), CMatrix.identity(ni * nj))
    eps_prime = _two_sided_sign(m @ conj_entrywise(dirac), dirac @ m)
    if eps is None:
        raise UndefinedProductOperatorError("J^2 = eps I", "no definite sign")
    if eps_prime is None:
        lhs = si.eps_prime if choice is DiracChoice.D else si.eps_prime * sj.eps_dprime
        rhs = si.eps_dprime * sj.eps_prime if choice is DiracChoice.D else sj.eps_prime
        raise UndefinedProductOperatorError(
            "JD = eps' DJ",
            f"the two Dirac terms demand {lhs:+d} and {rhs:+d}",
        )

    if both_even:
        grading = Grading.nontrivial(kron(ti.grading.matrix, tj.grading.matrix))
        parity = Parity.EVEN
        gm = grading.matrix
        eps_dprime = _two_sided_sign(m @ conj_entrywise(gm), gm @ m)
        if eps_dprime is None:
            raise UndefinedProductOperatorError("Jg = eps'' gJ", "no definite sign")
    else:
        parity = Parity.ODD
        # classic odd columns carry no label; classify by (eps, eps') with
        # the upper representative
        eps_dprime = _classic_odd_label(eps, eps_prime)
        grading = Grading.trivial(eps_dprime)

    extracted = KOSigns(eps, eps_prime, eps_dprime)
    result = RealSpectralTriple(
        hilbert_dim=ni * nj,
        algebra_gens=_product_gens(ti, tj),
        dirac=dirac,
        real_structure=AntiUnitary(m),
        grading=grading,
    )
    ko_class = classify(extracted, parity)
    return ProductReport(result, extracted, extracted, ko_class, None)


def _classic_odd_label(eps: int, eps_prime: int) -> int:
    # upper representative: label = eps'
    return eps_prime


def traditional_expected_defined(ti: RealSpectralTriple, tj: RealSpectralTriple,
                                 choice: DiracChoice) -> bool:
    """The classic eps' constraint for this ordered pair and choice."""
    si, sj = _signs_with_label(ti), _signs_with_label(tj)
    epp_i = si.eps_dprime if ti.parity is Parity.EVEN else None
    epp_j = sj.eps_dprime if tj.parity is Parity.EVEN else None
    return traditional_constraint_holds(
        si.eps_prime, epp_i, sj.eps_prime, epp_j,
        "D" if choice is DiracChoice.D else "Dtilde",
    )


# --------------------------------------------------------------------------
# The connecting unitary and the equivalence / squaring checks.
# --------------------------------------------------------------------------


def product_unitary(gamma_i: CMatrix, gamma_j: CMatrix) -> CMatrix:
    """U = (I + g_i (x) I + I (x) g_j - g_i (x) g_j) / 2; a hermitian
    involution, hence unitary, with half-integer entries."""
    ni, nj = gamma_i.n, gamma_j.n
    ident = kron(CMatrix.identity(ni), CMatrix.identity(nj))
    u = ident + kron(gamma_i, CMatrix.identity(nj)) + kron(CMatrix.identity(ni), gamma_j) \
        - kron(gamma_i, gamma_j)
    return u.scale(ExactComplex("1/2"))


@dataclass(frozen=True)
class ConventionEquivalence:
    unitary_ok: bool
    dirac_exact: bool
    j_scalar: ExactComplex | None   # U N conj(U^dagger) = j_scalar * N-tilde
    expected_scalar: int            # -1 iff eps''_i = eps''_j = -1

    @property
    def holds(self) -> bool:
        return (
            self.unitary_ok
            and self.dirac_exact
            and self.j_scalar is not None
            and self.j_scalar == ExactComplex(self.expected_scalar)
        )


def check_convention_equivalence(ti: RealSpectralTriple,
                                 tj: RealSpectralTriple) -> ConventionEquivalence:
    """Verify U maps the convention-1 pair onto the convention-2 pair.

    The Dirac map U D U^dagger = D-tilde is exact. The antiunitary map
    U J U^(-1) (linear part U N conj(U^dagger)) lands on the convention-2
    real structure times a forced unit scalar: -1 when both factors have
    eps'' = -1, +1 otherwise. Both facts are checked exactly.
    """
    if ti.parity is not Parity.EVEN or tj.parity is not Parity.EVEN:
        raise UnsupportedConventionError("convention equivalence is an even-even check")
    r1 = graded_product(ti, tj, KozulConvention.FIRST)
    r2 = graded_product(ti, tj, KozulConvention.SECOND)
    u = product_unitary(ti.grading.matrix, tj.grading.matrix)
    unitary_ok = u.is_unitary()
    dirac_exact = (u @ r1.result.dirac @ u.dagger()) == r2.result.dirac
    transformed = u @ r1.result.real_structure.matrix @ conj_entrywise(u.dagger())
    j_scalar = transformed.scalar_ratio(r2.result.real_structure.matrix)
    si, sj = _signs_with_label(ti), _signs_with_label(tj)
    expected = -1 if (si.eps_dprime == -1 and sj.eps_dprime == -1) else +1
    return ConventionEquivalence(unitary_ok, dirac_exact, j_scalar, expected)


def check_dirac_square(ti: RealSpectralTriple, tj: RealSpectralTriple,
                       report: ProductReport) -> bool:
    """D_{i,j}^2 = D_i^2 (x) I + I (x) D_j^2, exactly."""
    d = report.result.dirac
    ni, nj = ti.hilbert_dim, tj.hilbert_dim
    want = kron(ti.dirac @ ti.dirac, CMatrix.identity(nj)) + kron(
        CMatrix.identity(ni), tj.dirac @ tj.dirac
    )
    return d @ d == want


# --------------------------------------------------------------------------
# Operator-level associativity (even-even-even).
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OperatorAssociativity:
    dirac_equal: bool
    grading_equal: bool
    j_scalar: ExactComplex | None   # unit scalar relating the two J linear parts

    @property
    def holds(self) -> bool:
        return (
            self.dirac_equal
            and self.grading_equal
            and self.j_scalar is not None
            and self.j_scalar.is_unit_modulus()
        )


def check_operator_associativity(
    ti: RealSpectralTriple,
    tj: RealSpectralTriple,
    tk: RealSpectralTriple,
    convention: KozulConvention = KozulConvention.FIRST,
) -> OperatorAssociativity:
    """Compare (ti x tj) x tk against ti x (tj x tk) operator by operator.

    D and gamma agree exactly under the canonical Kronecker reassociation;
    the J linear parts are compared up to one unit scalar (they come out
    equal, scalar 1, for these resolved forms, but the real-structure
    relations only ever see the phase squared).

    Builds the nested products without validating the intermediate triples;
    the constituents are assumed validated by the caller.
    """
    for t in (ti, tj, tk):
        if t.parity is not Parity.EVEN:
            raise UnsupportedConventionError("operator associativity is an even-even-even check")
    si, sj, sk = map(_signs_with_label, (ti, tj, tk))
    left_inner = _graded_even_even(ti, tj, si, sj, convention)
    sij, _ = predict(si, Parity.EVEN, sj, Parity.EVEN)
    left = _graded_even_even(left_inner, tk, sij, sk, convention)
    right_inner = _graded_even_even(tj, tk, sj, sk, convention)
    sjk, _ = predict(sj, Parity.EVEN, sk, Parity.EVEN)
    right = _graded_even_even(ti, right_inner, si, sjk, convention)
    scalar = left.real_structure.matrix.scalar_ratio(right.real_structure.matrix)
    return OperatorAssociativity(
        dirac_equal=left.dirac == right.dirac,
        grading_equal=left.grading.matrix == right.grading.matrix,
        j_scalar=scalar,
    )
