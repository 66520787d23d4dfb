"""Minimal concrete triples realizing all 16 KO classes.

The Hilbert spaces are Clifford modules: hermitian generators with
gamma_a gamma_b + gamma_b gamma_a = 2 delta_ab, built by the usual qubit
recursion. The Dirac operator is a fixed-coefficient combination of the
generators, the grading (even case) is the phase-normalized product of all
generators, and the real structure is found by exhaustive search over
Pauli strings composed with conjugation, first match wins. The catalog is
therefore fully constructive: nothing in it depends on a hand-derived
operator.

Which module carries which class is pinned by how entrywise conjugation
acts on the generators: with all squares +1, the sign pair a module can
support sits at minus the generator count mod 8, so the dimension-2 and
dimension-6 classes trade modules, dimension-7 classes share the
one-generator module, and odd counts need the doubled (reducible) module
rather than the irreducible one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    CMatrix,
    EC_I,
    EC_ONE,
    ExactComplex,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    RationalLike,
    kron,
    pauli_string,
)
from .kosigns import KOClass, KOSigns, Parity, signs_of_class
from .triples import (
    AntiUnitary,
    Grading,
    RealSpectralTriple,
    SignReading,
    extract_signs,
)

__all__ = [
    "CliffordRep",
    "clifford_gammas",
    "chirality_grading",
    "NoRealStructureFoundError",
    "ZeroMomentumError",
    "ExemplarInfo",
    "build_exemplar",
    "build_exemplar_info",
    "exemplar_catalog",
    "flat_dirac_4d",
    "GAMMA_COUNTS",
]


class NoRealStructureFoundError(Exception):
    """The Pauli-string search found no J with the target signs."""

    def __init__(self, target: KOClass):
        self.target = target
        super().__init__(f"no Pauli-string real structure realizes {target}")


class ZeroMomentumError(Exception):
    """Zero momentum gives D = 0 and an indeterminate eps'."""


@dataclass(frozen=True)
class CliffordRep:
    """d hermitian anticommuting involutions on a 2^ceil(d/2) space."""

    d: int
    gammas: tuple[CMatrix, ...]

    @property
    def side(self) -> int:
        return self.gammas[0].n

    def relations_hold(self) -> bool:
        n = self.side
        two_ident = CMatrix.identity(n).scale(2)
        for a, ga in enumerate(self.gammas):
            if not ga.is_hermitian():
                return False
            for b, gb in enumerate(self.gammas):
                anti = ga @ gb + gb @ ga
                want = two_ident if a == b else CMatrix.zeros(n)
                if anti != want:
                    return False
        return True


def clifford_gammas(d: int) -> CliffordRep:
    """Generators by recursion: base {X, Y}; step g -> {g (x) Z} + {I (x) X, I (x) Y}.

    An odd count takes the first d generators of the even d+1 set, which
    keeps the side at 2^ceil(d/2); the doubled space is what lets a single
    module carry both eps' signs.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if d % 2 == 1:
        return CliffordRep(d, clifford_gammas(d + 1).gammas[:d])
    if d == 2:
        return CliffordRep(2, (PAULI_X, PAULI_Y))
    prev = clifford_gammas(d - 2)
    ident = CMatrix.identity(prev.side)
    gammas = tuple(kron(g, PAULI_Z) for g in prev.gammas) + (
        kron(ident, PAULI_X),
        kron(ident, PAULI_Y),
    )
    return CliffordRep(d, gammas)


def chirality_grading(gammas: tuple[CMatrix, ...]) -> tuple[CMatrix, ExactComplex]:
    """Product of all generators times the unique phase in {1, i} making it
    a hermitian involution; returns (grading, phase)."""
    prod = gammas[0]
    for g in gammas[1:]:
        prod = prod @ g
    ident = CMatrix.identity(prod.n)
    for phase in (EC_ONE, EC_I):
        cand = prod.scale(phase)
        if cand.is_hermitian() and cand @ cand == ident:
            return cand, phase
    raise AssertionError("no phase in {1, i} normalizes the chirality product")


def _dirac(gammas: tuple[CMatrix, ...], coeffs) -> CMatrix:
    out = CMatrix.zeros(gammas[0].n)
    for c, g in zip(coeffs, gammas):
        out = out + g.scale(c)
    return out


# Generator count per class dimension. Dimension 0 is the special
# two-dimensional triple (D = X, gamma = Z). See the module docstring for
# why 2 <-> 6 swap and 7 shares the d = 1 module.
GAMMA_COUNTS: dict[int, int | None] = {0: None, 1: 1, 2: 6, 3: 3, 4: 4, 5: 5, 6: 2, 7: 1}

# Second, independent coefficient vector used to re-test eps'; guards
# against a candidate satisfying the relation by numeric coincidence.
_RETEST_COEFFS = (3, 5, 7, 11, 13, 17)


@dataclass(frozen=True)
class ExemplarInfo:
    """Construction record for one catalog entry."""

    ko_class: KOClass
    gamma_count: int
    pauli_name: str
    pauli_phase: str            # "1" or "i"
    chirality_phase: str | None  # even triples only


def _signs_match(reading: SignReading, target: KOSigns, parity: Parity) -> bool:
    if reading.eps_prime is None:
        return False
    if parity is Parity.EVEN:
        return reading.to_kosigns() == target
    return (reading.eps, reading.eps_prime) == (target.eps, target.eps_prime)


def build_exemplar_info(c: KOClass) -> tuple[RealSpectralTriple, ExemplarInfo]:
    """Construct a triple realizing class ``c`` plus its construction record.

    Deterministic: Pauli strings are enumerated lexicographically (I, X, Y,
    Z per factor), phase 1 before i, and the first candidate matching the
    target signs for both coefficient vectors wins.
    """
    target = signs_of_class(c)
    parity = c.parity
    chirality_phase: str | None = None

    if c.dim == 0:
        gamma_count = 0
        dirac = PAULI_X
        grading_matrix: CMatrix | None = PAULI_Z
        retest_dirac = None
        chirality_phase = "1"
    else:
        gamma_count = GAMMA_COUNTS[c.dim]
        rep = clifford_gammas(gamma_count)
        dirac = _dirac(rep.gammas, range(1, gamma_count + 1))
        retest_dirac = _dirac(rep.gammas, _RETEST_COEFFS[:gamma_count])
        if parity is Parity.EVEN:
            grading_matrix, phase = chirality_grading(rep.gammas)
            chirality_phase = "i" if phase == EC_I else "1"
        else:
            grading_matrix = None

    n = dirac.n
    qubits = n.bit_length() - 1
    grading = (
        Grading.nontrivial(grading_matrix)
        if grading_matrix is not None
        else Grading.trivial(target.eps_dprime)
    )

    for letters in itertools.product("IXYZ", repeat=qubits):
        name = "".join(letters)
        base = pauli_string(name)
        for phase_name, phase in (("1", EC_ONE), ("i", EC_I)):
            m = base.scale(phase)
            candidate = RealSpectralTriple(
                hilbert_dim=n,
                algebra_gens=(CMatrix.identity(n),),
                dirac=dirac,
                real_structure=AntiUnitary(m),
                grading=grading,
            )
            try:
                reading = extract_signs(candidate)
            except Exception:
                continue
            if not _signs_match(reading, target, parity):
                continue
            if retest_dirac is not None:
                try:
                    retest = extract_signs(
                        RealSpectralTriple(n, candidate.algebra_gens, retest_dirac,
                                           candidate.real_structure, grading)
                    )
                except Exception:
                    continue
                if not _signs_match(retest, target, parity):
                    continue
            info = ExemplarInfo(
                ko_class=c,
                gamma_count=gamma_count,
                pauli_name=name,
                pauli_phase=phase_name,
                chirality_phase=chirality_phase,
            )
            return candidate, info
    raise NoRealStructureFoundError(c)


def build_exemplar(c: KOClass) -> RealSpectralTriple:
    return build_exemplar_info(c)[0]


def exemplar_catalog() -> dict[KOClass, RealSpectralTriple]:
    """One exemplar per class; every entry validates back to its key."""
    from .kosigns import all_classes

    return {c: build_exemplar(c) for c in all_classes()}


# --------------------------------------------------------------------------
# The four-dimensional flat-Dirac check.
# --------------------------------------------------------------------------

# Hermitian basis ordered so the entrywise-imaginary generators sit at
# slots 0 and 2; the product of those two is the conjugation matrix that
# realizes the signs {-1, +1, +1}.
_FLAT_GAMMAS = (
    kron(PAULI_Y, PAULI_Z),
    kron(PAULI_X, PAULI_Z),
    kron(CMatrix.identity(2), PAULI_Y),
    kron(CMatrix.identity(2), PAULI_X),
)


def flat_dirac_4d(p: tuple[RationalLike, ...]) -> RealSpectralTriple:
    """Momentum-space flat Dirac triple: D = sum_a p_a gamma^a on C^4,
    J = gamma^0 gamma^2 o cc, grading the normalized product of all four
    gammas. Extracts {-1, +1, +1} for every nonzero rational momentum."""
    if len(p) != 4:
        raise ValueError("momentum must have 4 components")
    coeffs = [Fraction(c) if not isinstance(c, Fraction) else c for c in p]
    if all(c == 0 for c in coeffs):
        raise ZeroMomentumError("p = 0 gives D = 0 and indeterminate eps'")
    dirac = _dirac(_FLAT_GAMMAS, coeffs)
    grading, _phase = chirality_grading(_FLAT_GAMMAS)
    return RealSpectralTriple(
        hilbert_dim=4,
        algebra_gens=(CMatrix.identity(4),),
        dirac=dirac,
        real_structure=AntiUnitary(_FLAT_GAMMAS[0] @ _FLAT_GAMMAS[2]),
        grading=Grading.nontrivial(grading),
    )
