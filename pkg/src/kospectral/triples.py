"""Finite real spectral triples: data model, validation, sign extraction.

A triple bundles a represented algebra (hermitian generators), a hermitian
Dirac matrix, an antiunitary real structure J = M o cc (a unitary linear
part composed with entrywise conjugation), and a grading: a nontrivial
hermitian involution for even triples, or a bare sign label for odd ones.

Sign extraction evaluates the three real-structure relations as exact
matrix identities in the linear-part picture:

    J^2 = eps          <->  M conj(M)     = eps I
    J D = eps' D J     <->  M conj(D)     = eps' D M
    J g = eps'' g J    <->  M conj(gamma) = eps'' gamma M
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Sequence

from .arith import CMatrix, ExactComplex, conj_entrywise
from .kosigns import KOClass, KOSigns, Parity, classify

__all__ = [
    "AntiUnitary",
    "Grading",
    "RealSpectralTriple",
    "SignReading",
    "StructuralViolationError",
    "NotASignRelationError",
    "AmbiguousClassError",
    "OddTripleError",
    "extract_signs",
    "validate",
    "validate_with_signs",
    "flip_real_structure",
    "triple_to_json",
    "triple_from_json",
]


class StructuralViolationError(Exception):
    """A named structural invariant of a triple failed."""

    def __init__(self, invariant: str):
        self.invariant = invariant
        super().__init__(f"structural violation: {invariant}")


class NotASignRelationError(Exception):
    """A real-structure relation holds with neither sign."""

    def __init__(self, relation: str):
        self.relation = relation
        super().__init__(f"{relation} holds with neither sign; not a real spectral triple")


class AmbiguousClassError(Exception):
    """eps' is indeterminate (D = 0), so two classes match."""

    def __init__(self, candidates: tuple[KOClass, KOClass]):
        self.candidates = candidates
        super().__init__(
            "eps' indeterminate (zero Dirac operator); matches "
            + " and ".join(str(c) for c in candidates)
        )


class OddTripleError(Exception):
    """An operation needing a nontrivial grading met an odd triple."""


@dataclass(frozen=True)
class AntiUnitary:
    """An antiunitary operator stored as its unitary linear part.

    The operator acts as v -> matrix . conj(v); composing two antiunitaries
    yields the plain unitary M1 . conj(M2).
    """

    matrix: CMatrix

    def apply(self, vec: Sequence[ExactComplex]) -> list[ExactComplex]:
        return self.matrix.apply([v.conjugate() for v in vec])

    def compose(self, other: "AntiUnitary") -> CMatrix:
        return self.matrix @ conj_entrywise(other.matrix)

    def is_unitary(self) -> bool:
        return self.matrix.is_unitary()


@dataclass(frozen=True)
class Grading:
    """Either a nontrivial grading matrix (even) or an odd sign label."""

    matrix: CMatrix | None = None
    label: int | None = None

    def __post_init__(self):
        if (self.matrix is None) == (self.label is None):
            raise ValueError("grading carries exactly one of matrix, label")
        if self.label is not None and self.label not in (+1, -1):
            raise ValueError("odd grading label must be +1 or -1")

    @classmethod
    def nontrivial(cls, matrix: CMatrix) -> "Grading":
        return cls(matrix=matrix)

    @classmethod
    def trivial(cls, label: int) -> "Grading":
        return cls(label=label)

    @property
    def parity(self) -> Parity:
        return Parity.EVEN if self.matrix is not None else Parity.ODD


@dataclass(frozen=True)
class RealSpectralTriple:
    hilbert_dim: int
    algebra_gens: tuple[CMatrix, ...]
    dirac: CMatrix
    real_structure: AntiUnitary
    grading: Grading

    @property
    def parity(self) -> Parity:
        return self.grading.parity


@dataclass(frozen=True)
class SignReading:
    """Extracted signs; eps_prime is None when D = 0 leaves it open."""

    eps: int
    eps_prime: int | None
    eps_dprime: int

    def to_kosigns(self) -> KOSigns:
        if self.eps_prime is None:
            raise ValueError("eps' is indeterminate")
        return KOSigns(self.eps, self.eps_prime, self.eps_dprime)


def _relation_sign(lhs: CMatrix, rhs: CMatrix, relation: str) -> int:
    if lhs == rhs:
        return +1
    if lhs == -rhs:
        return -1
    raise NotASignRelationError(relation)


def extract_signs(t: RealSpectralTriple) -> SignReading:
    """Evaluate the three sign relations on a structurally valid triple.

    eps' comes back as None for a zero Dirac matrix, which commutes and
    anticommutes at once. For odd triples eps'' is the stored label; there
    is no operator content to measure.
    """
    m = t.real_structure.matrix
    n = t.hilbert_dim
    eps = _relation_sign(m @ conj_entrywise(m), CMatrix.identity(n), "J^2 = eps I")
    if t.dirac.is_zero():
        eps_prime: int | None = None
    else:
        eps_prime = _relation_sign(m @ conj_entrywise(t.dirac), t.dirac @ m, "JD = eps' DJ")
    if t.grading.matrix is not None:
        g = t.grading.matrix
        eps_dprime = _relation_sign(m @ conj_entrywise(g), g @ m, "Jg = eps'' gJ")
    else:
        eps_dprime = t.grading.label
    return SignReading(eps, eps_prime, eps_dprime)


def _check_structure(t: RealSpectralTriple) -> None:
    n = t.hilbert_dim
    mats = [("dirac", t.dirac), ("real structure", t.real_structure.matrix)]
    mats += [(f"algebra generator {i}", g) for i, g in enumerate(t.algebra_gens)]
    if t.grading.matrix is not None:
        mats.append(("grading", t.grading.matrix))
    for name, m in mats:
        if m.n != n:
            raise StructuralViolationError(f"{name} is not {n}x{n}")
    if not t.dirac.is_hermitian():
        raise StructuralViolationError("D = dagger(D)")
    if not t.real_structure.is_unitary():
        raise StructuralViolationError("J linear part unitary")
    for i, g in enumerate(t.algebra_gens):
        if not g.is_hermitian():
            raise StructuralViolationError(f"algebra generator {i} hermitian")
    if t.grading.matrix is not None:
        g = t.grading.matrix
        ident = CMatrix.identity(n)
        if not g.is_hermitian():
            raise StructuralViolationError("gamma hermitian")
        if g @ g != ident:
            raise StructuralViolationError("gamma^2 = I")
        if g == ident or g == -ident:
            raise StructuralViolationError("gamma != +/-I (trivial gradings are odd)")
        if t.dirac @ g != -(g @ t.dirac):
            raise StructuralViolationError("{D, gamma} = 0")
        for i, a in enumerate(t.algebra_gens):
            if a == ident:
                continue  # identity commutes; skip two full products
            if a @ g != g @ a:
                raise StructuralViolationError(f"[pi(a_{i}), gamma] = 0")


def validate_with_signs(t: RealSpectralTriple) -> tuple[KOClass, KOSigns]:
    """Check all structural invariants, extract signs once, classify.

    Raises :class:`StructuralViolationError` naming the failed invariant,
    :class:`NotASignRelationError` if a relation has no definite sign, or
    :class:`AmbiguousClassError` when a zero Dirac leaves eps' open (the
    reading then matches both variant-consistent classes).
    """
    _check_structure(t)
    reading = extract_signs(t)
    parity = t.parity
    if reading.eps_prime is None:
        cands = tuple(
            classify(KOSigns(reading.eps, ep, reading.eps_dprime), parity)
            for ep in (+1, -1)
        )
        raise AmbiguousClassError(cands)  # type: ignore[arg-type]
    signs = reading.to_kosigns()
    return classify(signs, parity), signs


def validate(t: RealSpectralTriple) -> KOClass:
    """Structural checks plus sign extraction; returns the KO class."""
    return validate_with_signs(t)[0]


def flip_real_structure(t: RealSpectralTriple) -> RealSpectralTriple:
    """Replace J by gamma*J, swapping the triple's variant at fixed dim."""
    if t.grading.matrix is None:
        raise OddTripleError("odd triples have no grading to compose with J")
    flipped = AntiUnitary(t.grading.matrix @ t.real_structure.matrix)
    return replace(t, real_structure=flipped)


# --------------------------------------------------------------------------
# JSON serialization (lossless: exact rational strings).
# --------------------------------------------------------------------------


def _matrix_to_json(m: CMatrix) -> list[list[str]]:
    return [[e.to_string() for e in row] for row in m.rows()]


def _matrix_from_json(rows: list[list[str]]) -> CMatrix:
    return CMatrix.from_rows([[ExactComplex.from_string(e) for e in row] for row in rows])


def triple_to_json(t: RealSpectralTriple) -> dict:
    if t.grading.matrix is not None:
        grading = {"kind": "nontrivial", "matrix": _matrix_to_json(t.grading.matrix)}
    else:
        grading = {"kind": "trivial", "label": "%+d" % t.grading.label}
    return {
        "hilbert_dim": t.hilbert_dim,
        "algebra_gens": [_matrix_to_json(g) for g in t.algebra_gens],
        "dirac": _matrix_to_json(t.dirac),
        "real_structure": _matrix_to_json(t.real_structure.matrix),
        "grading": grading,
    }


def triple_from_json(doc: dict) -> RealSpectralTriple:
    g = doc["grading"]
    if g["kind"] == "nontrivial":
        grading = Grading.nontrivial(_matrix_from_json(g["matrix"]))
    elif g["kind"] == "trivial":
        grading = Grading.trivial(int(g["label"]))
    else:
        raise ValueError(f"unknown grading kind {g['kind']!r}")
    return RealSpectralTriple(
        hilbert_dim=int(doc["hilbert_dim"]),
        algebra_gens=tuple(_matrix_from_json(m) for m in doc["algebra_gens"]),
        dirac=_matrix_from_json(doc["dirac"]),
        real_structure=AntiUnitary(_matrix_from_json(doc["real_structure"])),
        grading=grading,
    )


def dumps(t: RealSpectralTriple, **kwargs) -> str:
    return json.dumps(triple_to_json(t), **kwargs)


def loads(s: str) -> RealSpectralTriple:
    return triple_from_json(json.loads(s))
