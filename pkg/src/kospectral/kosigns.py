"""The KO-dimension sign calculus.

A real structure on a spectral triple satisfies three sign relations,

    J^2 = eps,    J D = eps' D J,    J gamma = eps'' gamma J,

and the triple of signs {eps, eps', eps''} pins down a dimension mod 8
together with one of two variants, written here as ``0_U`` ... ``7_L``.
Even triples carry a nontrivial grading; an even triple's two real
structures J and gamma*J realize the upper and lower variant of the same
dimension. Odd triples carry eps'' only as an assigned label, chosen so
that the lower label in dimension n+1 equals the upper value in dimension
n; that choice is what makes mixed-parity and odd-odd products land in
the right class.

Everything in this module is pure arithmetic on the sign triples: the
complete 16-class table, classification, the upper/lower flip, the product
sign laws for every parity combination, the traditional (ungraded) product
law with its failure analysis, a three-step re-derivation of the table
from the product laws alone, and the full 16x16 product table.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

__all__ = [
    "Parity",
    "KOSigns",
    "KOClass",
    "VariantMismatchError",
    "UndefinedProductError",
    "InternalInconsistencyError",
    "CLASS_SIGNS",
    "CLASSIC_SIGNS",
    "CLASSIC_CLASS",
    "EXTENDED_COLUMNS",
    "all_classes",
    "signs_of_class",
    "classify",
    "flip_variant",
    "flip_class",
    "predict_even_even",
    "predict_even_odd",
    "predict_odd_odd",
    "predict",
    "traditional_predict",
    "traditional_constraint_holds",
    "derive_table_mnemonic",
    "MnemonicTrace",
    "product_table",
]


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


def _check_sign(value: int, name: str) -> None:
    if value not in (+1, -1):
        raise ValueError(f"{name} must be +1 or -1, got {value!r}")


@dataclass(frozen=True)
class KOSigns:
    """A sign triple {eps, eps', eps''}; for odd parity eps'' is the label."""

    eps: int
    eps_prime: int
    eps_dprime: int

    def __post_init__(self):
        _check_sign(self.eps, "eps")
        _check_sign(self.eps_prime, "eps_prime")
        _check_sign(self.eps_dprime, "eps_dprime")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.eps, self.eps_prime, self.eps_dprime)

    def __str__(self):
        return "{%+d,%+d,%+d}" % self.as_tuple()

    def to_json(self) -> dict:
        return {"eps": self.eps, "eps_prime": self.eps_prime, "eps_dprime": self.eps_dprime}


@dataclass(frozen=True)
class KOClass:
    """A KO-dimension mod 8 with its upper/lower variant, e.g. ``2_U``."""

    dim: int
    variant: str

    def __post_init__(self):
        if self.dim not in range(8):
            raise ValueError(f"dim must be in 0..7, got {self.dim}")
        if self.variant not in ("U", "L"):
            raise ValueError(f"variant must be 'U' or 'L', got {self.variant!r}")

    @property
    def parity(self) -> Parity:
        return Parity.EVEN if self.dim % 2 == 0 else Parity.ODD

    def __str__(self):
        return f"{self.dim}_{self.variant}"

    @staticmethod
    def parse(name: str) -> "KOClass":
        try:
            dim_s, var = name.strip().split("_")
            return KOClass(int(dim_s), var.upper())
        except (ValueError, AttributeError):
            raise ValueError(
                f"not a KO class name: {name!r} (expected e.g. '2_U' or '7_L')"
            ) from None


class VariantMismatchError(Exception):
    """Raised when a product mixes upper with lower real structures.

    The consistency condition relating the two equivalent expressions for
    the product eps' fails exactly in that case, so the product has no
    well-defined KO-dimension.
    """

    def __init__(self, lhs: int, rhs: int, detail: str = ""):
        self.lhs = lhs
        self.rhs = rhs
        msg = f"product eps' is inconsistent ({lhs:+d} vs {rhs:+d}); no well-defined KO-dimension"
        if detail:
            msg += f" [{detail}]"
        super().__init__(msg)


class UndefinedProductError(Exception):
    """An ungraded-prescription product whose sign constraint fails."""

    def __init__(self, relation: str, lhs: int, rhs: int):
        self.relation = relation
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(
            f"ungraded product undefined: {relation} requires {lhs:+d} = {rhs:+d}"
        )


class InternalInconsistencyError(Exception):
    """A table-derivation step admitted zero or multiple solutions."""


# --------------------------------------------------------------------------
# The complete 16-class table.
#
# Even dimensions share eps'' between variants and stack eps/eps'.
# Odd dimensions share eps/eps' and stack the eps'' label (upper on top).
# Stored literally here and re-derived by derive_table_mnemonic(); the
# equality of the two is a test, not an assumption.
# --------------------------------------------------------------------------

CLASS_SIGNS: dict[KOClass, KOSigns] = {
    KOClass(0, "U"): KOSigns(+1, +1, +1),
    KOClass(0, "L"): KOSigns(+1, -1, +1),
    KOClass(1, "U"): KOSigns(+1, -1, -1),
    KOClass(1, "L"): KOSigns(+1, -1, +1),
    KOClass(2, "U"): KOSigns(+1, -1, -1),
    KOClass(2, "L"): KOSigns(-1, +1, -1),
    KOClass(3, "U"): KOSigns(-1, +1, +1),
    KOClass(3, "L"): KOSigns(-1, +1, -1),
    KOClass(4, "U"): KOSigns(-1, +1, +1),
    KOClass(4, "L"): KOSigns(-1, -1, +1),
    KOClass(5, "U"): KOSigns(-1, -1, -1),
    KOClass(5, "L"): KOSigns(-1, -1, +1),
    KOClass(6, "U"): KOSigns(-1, -1, -1),
    KOClass(6, "L"): KOSigns(+1, +1, -1),
    KOClass(7, "U"): KOSigns(+1, +1, +1),
    KOClass(7, "L"): KOSigns(+1, +1, -1),
}

# Classic presentation: one sign set per dimension, no eps'' in odd columns.
CLASSIC_SIGNS: dict[int, tuple[int, int, int | None]] = {
    0: (+1, +1, +1),
    1: (+1, -1, None),
    2: (-1, +1, -1),
    3: (-1, +1, None),
    4: (-1, +1, +1),
    5: (-1, -1, None),
    6: (+1, +1, -1),
    7: (+1, +1, None),
}

# Where each classic column sits in the 16-class table. Odd classic columns
# carry no eps'' label, so they match both variants; the upper class is
# listed as representative.
CLASSIC_CLASS: dict[int, KOClass] = {
    0: KOClass(0, "U"),
    1: KOClass(1, "U"),
    2: KOClass(2, "L"),
    3: KOClass(3, "U"),
    4: KOClass(4, "U"),
    5: KOClass(5, "U"),
    6: KOClass(6, "L"),
    7: KOClass(7, "U"),
}

# The 12-column extended presentation: even sign sets grouped by eps',
# then the four odd columns without eps''.
EXTENDED_COLUMNS: list[tuple[int, KOClass | None]] = (
    [(d, KOClass(d, "L") if CLASS_SIGNS[KOClass(d, "L")].eps_prime == -1 else KOClass(d, "U"))
     for d in (0, 2, 4, 6)]
    + [(d, KOClass(d, "U") if CLASS_SIGNS[KOClass(d, "U")].eps_prime == +1 else KOClass(d, "L"))
       for d in (0, 2, 4, 6)]
    + [(d, None) for d in (1, 3, 5, 7)]
)


def all_classes() -> list[KOClass]:
    """The 16 classes in dimension-then-variant order."""
    return [KOClass(d, v) for d in range(8) for v in ("U", "L")]


def signs_of_class(c: KOClass) -> KOSigns:
    return CLASS_SIGNS[c]


_INVERSE: dict[tuple[tuple[int, int, int], Parity], KOClass] = {}
for _c, _s in CLASS_SIGNS.items():
    _key = (_s.as_tuple(), _c.parity)
    assert _key not in _INVERSE, f"sign table is not injective at {_key}"
    _INVERSE[_key] = _c
assert len(_INVERSE) == 16, "the 16 classes must exhaust all (signs, parity) pairs"


def classify(s: KOSigns, parity: Parity) -> KOClass:
    """The unique class with the given signs and parity.

    Total: each parity's eight sign triples hit all eight classes of that
    parity exactly once (asserted at import time).
    """
    return _INVERSE[(s.as_tuple(), parity)]


def flip_variant(s: KOSigns) -> KOSigns:
    """Sign action of replacing J by gamma*J on an even triple.

    Maps {eps, eps', eps''} to {eps''*eps, -eps', eps''}; an involution
    that swaps the upper and lower class at fixed dimension.
    """
    return KOSigns(s.eps_dprime * s.eps, -s.eps_prime, s.eps_dprime)


def flip_class(c: KOClass) -> KOClass:
    return KOClass(c.dim, "L" if c.variant == "U" else "U")


def _consistency(si: KOSigns, sj: KOSigns, odd_odd: bool = False) -> None:
    # Both expressions for the product eps' must agree; they differ exactly
    # when one factor is upper and the other lower.
    lhs = si.eps_prime * sj.eps_dprime
    rhs = si.eps_dprime * sj.eps_prime
    if odd_odd:
        lhs, rhs = -lhs, -rhs
    if lhs != rhs:
        raise VariantMismatchError(lhs, rhs)


def predict_even_even(si: KOSigns, sj: KOSigns) -> KOSigns:
    """Product signs of two even triples under the graded product.

    eps   = (-1)^((1-eps''_i)(1-eps''_j)/4) * eps_i * eps_j
    eps'  = eps'_i * eps''_j  ( = eps''_i * eps'_j when defined )
    eps'' = eps''_i * eps''_j

    Identical under both graded sign conventions. Raises
    :class:`VariantMismatchError` when the two eps' expressions disagree,
    i.e. when an upper triple is paired with a lower one.
    """
    _consistency(si, sj)
    minus = -1 if (si.eps_dprime == -1 and sj.eps_dprime == -1) else +1
    return KOSigns(
        minus * si.eps * sj.eps,
        si.eps_prime * sj.eps_dprime,
        si.eps_dprime * sj.eps_dprime,
    )


def predict_even_odd(si: KOSigns, sj: KOSigns) -> KOSigns:
    """Product signs for one even and one odd factor (either order).

    Uses the even-even law with the odd factor's eps'' label standing in
    for a grading sign; the result is an odd triple whose eps'' is again a
    label. Symmetric in its arguments.
    """
    return predict_even_even(si, sj)


def predict_odd_odd(si: KOSigns, sj: KOSigns) -> KOSigns:
    """Product signs of two odd triples (the result is even).

    eps   = (-1)^((1+eps''_i)(1+eps''_j)/4) * eps_i * eps_j
    eps'  = -eps'_i * eps''_j  ( = -eps''_i * eps'_j when defined )
    eps'' = -eps''_i * eps''_j
    """
    _consistency(si, sj, odd_odd=True)
    minus = -1 if (si.eps_dprime == +1 and sj.eps_dprime == +1) else +1
    return KOSigns(
        minus * si.eps * sj.eps,
        -si.eps_prime * sj.eps_dprime,
        -si.eps_dprime * sj.eps_dprime,
    )


def predict(si: KOSigns, pi: Parity, sj: KOSigns, pj: Parity) -> tuple[KOSigns, Parity]:
    """Parity-dispatching product predictor; returns signs and result parity."""
    if pi is Parity.ODD and pj is Parity.ODD:
        return predict_odd_odd(si, sj), Parity.EVEN
    if pi is Parity.EVEN and pj is Parity.EVEN:
        return predict_even_even(si, sj), Parity.EVEN
    return predict_even_odd(si, sj), Parity.ODD


def predict_class(ci: KOClass, cj: KOClass) -> KOClass:
    s, p = predict(signs_of_class(ci), ci.parity, signs_of_class(cj), cj.parity)
    return classify(s, p)


# --------------------------------------------------------------------------
# Traditional (ungraded) product law.
# --------------------------------------------------------------------------

DIRAC_CHOICES = ("D", "Dtilde")


def traditional_constraint_holds(
    eps_prime_i: int, eps_dprime_i: int | None,
    eps_prime_j: int, eps_dprime_j: int | None,
    choice: str,
) -> bool:
    """Whether the ungraded product's eps' constraint is satisfiable.

    Choice ``D`` needs eps'_i = eps''_i * eps'_j (first factor even);
    choice ``Dtilde`` needs eps'_i * eps''_j = eps'_j (second factor even).
    """
    if choice == "D":
        if eps_dprime_i is None:
            raise ValueError("choice D requires an even (graded) first factor")
        return eps_prime_i == eps_dprime_i * eps_prime_j
    if choice == "Dtilde":
        if eps_dprime_j is None:
            raise ValueError("choice Dtilde requires an even (graded) second factor")
        return eps_prime_i * eps_dprime_j == eps_prime_j
    raise ValueError(f"unknown Dirac choice {choice!r}")


def traditional_predict(si: KOSigns, sj: KOSigns, choice: str = "D") -> KOSigns:
    """Product signs under the traditional ungraded prescription.

    Both inputs are even-parity sign triples. For choice ``D`` the product
    signs are {eps_i*eps_j, eps'_i, eps''_i*eps''_j} provided
    eps'_i = eps''_i*eps'_j; for ``Dtilde`` the eps' slot is eps'_j with
    the mirrored constraint. Raises :class:`UndefinedProductError` when the
    constraint fails; that failure matrix is the point of keeping the
    routine around.
    """
    if choice == "D":
        if not traditional_constraint_holds(si.eps_prime, si.eps_dprime,
                                            sj.eps_prime, sj.eps_dprime, "D"):
            raise UndefinedProductError(
                "eps'_{i,j} = eps'_i = eps''_i*eps'_j",
                si.eps_prime, si.eps_dprime * sj.eps_prime,
            )
        eps_prime = si.eps_prime
    elif choice == "Dtilde":
        if not traditional_constraint_holds(si.eps_prime, si.eps_dprime,
                                            sj.eps_prime, sj.eps_dprime, "Dtilde"):
            raise UndefinedProductError(
                "eps'_{i,j} = eps'_i*eps''_j = eps'_j",
                si.eps_prime * sj.eps_dprime, sj.eps_prime,
            )
        eps_prime = sj.eps_prime
    else:
        raise ValueError(f"unknown Dirac choice {choice!r}")
    return KOSigns(si.eps * sj.eps, eps_prime, si.eps_dprime * sj.eps_dprime)


# --------------------------------------------------------------------------
# Three-step re-derivation of the complete table.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MnemonicTrace:
    """Intermediate data from the three-step table derivation."""

    pairs: list[tuple[KOSigns, KOSigns]]         # step 1: flip-partner pairs
    dim0_pair: tuple[KOSigns, KOSigns]           # step 2: the idempotent pair
    dim4_pair: tuple[KOSigns, KOSigns]           # step 2: squares into dim 0
    table: dict[KOClass, KOSigns]                # step 3: the filled table


def derive_table_mnemonic() -> MnemonicTrace:
    """Recover the full 16-class table from the product laws alone.

    Step 1 matches the 8 even sign triples into 4 pairs under the
    upper/lower flip. Step 2 finds the unique pair closed under the
    even-even product (dimension 0) and the unique pair squaring into it
    (dimension 4). Step 3 assigns the remaining dimensions through the
    staircase relation -- the lower signs {eps, eps'} of dimension 2n
    reappear as the upper (and lower) signs of dimension 2n+1 and the upper
    signs of dimension 2n+2 -- resolving upper vs lower inside each pair by
    eps' = eps''. Odd eps'' labels come from the same staircase.

    Raises :class:`InternalInconsistencyError` if any step has zero or
    multiple solutions (that would mean the product laws are broken).
    """
    evens = [KOSigns(e, ep, epp) for e in (+1, -1) for ep in (+1, -1) for epp in (+1, -1)]

    # Step 1: flip-partner pairs.
    pairs: list[tuple[KOSigns, KOSigns]] = []
    seen: set[KOSigns] = set()
    for s in evens:
        if s in seen:
            continue
        f = flip_variant(s)
        if f == s or flip_variant(f) != s:
            raise InternalInconsistencyError("flip is not a fixed-point-free involution")
        pairs.append((s, f))
        seen.update((s, f))
    if len(pairs) != 4:
        raise InternalInconsistencyError(f"expected 4 flip pairs, got {len(pairs)}")

    def upper_of(pair: tuple[KOSigns, KOSigns]) -> KOSigns:
        ups = [s for s in pair if s.eps_prime == s.eps_dprime]
        if len(ups) != 1:
            raise InternalInconsistencyError("pair without a unique upper member")
        return ups[0]

    def lower_of(pair: tuple[KOSigns, KOSigns]) -> KOSigns:
        up = upper_of(pair)
        return pair[0] if pair[1] == up else pair[1]

    # Step 2: dimension 0 is the unique self-closed pair; dimension 4 the
    # unique other pair squaring into it.
    idem = [p for p in pairs if all(predict_even_even(s, s) == s for s in p)]
    if len(idem) != 1:
        raise InternalInconsistencyError(f"expected one idempotent pair, got {len(idem)}")
    dim0 = idem[0]
    sq0 = [p for p in pairs if p != dim0 and all(predict_even_even(s, s) in dim0 for s in p)]
    if len(sq0) != 1:
        raise InternalInconsistencyError(f"expected one pair squaring to dim 0, got {len(sq0)}")
    dim4 = sq0[0]

    # Step 3: the staircase {eps, eps'} of (2n)_L equals that of (2n+2)_U.
    by_dim: dict[int, tuple[KOSigns, KOSigns]] = {0: dim0, 4: dim4}
    remaining = [p for p in pairs if p not in (dim0, dim4)]
    for d in (0, 2, 4, 6):
        if d not in by_dim:
            continue
        lo = lower_of(by_dim[d])
        succ = [
            p for p in remaining
            if (upper_of(p).eps, upper_of(p).eps_prime) == (lo.eps, lo.eps_prime)
        ]
        if len(succ) == 1:
            by_dim[(d + 2) % 8] = succ[0]
            remaining.remove(succ[0])
    if sorted(by_dim) != [0, 2, 4, 6] or remaining:
        raise InternalInconsistencyError("staircase did not assign all even dimensions")
    # the staircase must close back onto dimension 0
    lo6 = lower_of(by_dim[6])
    up0 = upper_of(by_dim[0])
    if (lo6.eps, lo6.eps_prime) != (up0.eps, up0.eps_prime):
        raise InternalInconsistencyError("staircase does not close at dimension 0")

    table: dict[KOClass, KOSigns] = {}
    for d in (0, 2, 4, 6):
        table[KOClass(d, "U")] = upper_of(by_dim[d])
        table[KOClass(d, "L")] = lower_of(by_dim[d])
    for d in (1, 3, 5, 7):
        prev_lo = lower_of(by_dim[(d - 1) % 8])
        # lower label of dim n+1 = upper value of dim n; and upper label of
        # dim n = shared eps'' of dim n+1 (even eps'' is variant-independent)
        label_lower = table[KOClass((d - 1) % 8, "U")].eps_dprime
        label_upper = table[KOClass((d + 1) % 8, "U")].eps_dprime
        table[KOClass(d, "U")] = KOSigns(prev_lo.eps, prev_lo.eps_prime, label_upper)
        table[KOClass(d, "L")] = KOSigns(prev_lo.eps, prev_lo.eps_prime, label_lower)

    return MnemonicTrace(pairs=pairs, dim0_pair=dim0, dim4_pair=dim4, table=table)


# --------------------------------------------------------------------------
# The full product table.
# --------------------------------------------------------------------------


def product_table() -> dict[tuple[KOClass, KOClass], KOClass | None]:
    """The 16x16 product grid; None marks a mixed-variant (undefined) cell.

    Same-variant blocks are shift tables (dimensions add mod 8, variant
    preserved); the mixed blocks are entirely undefined.
    """
    grid: dict[tuple[KOClass, KOClass], KOClass | None] = {}
    for ci in all_classes():
        for cj in all_classes():
            try:
                grid[(ci, cj)] = predict_class(ci, cj)
            except VariantMismatchError:
                grid[(ci, cj)] = None
    return grid
