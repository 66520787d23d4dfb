"""Exact complex-rational scalars and dense square matrices.

Every operator in this package lives over the Gaussian rationals, so all
equality checks are exact and no tolerance policy exists anywhere. Matrices
are stored as a pair of numpy object arrays (real and imaginary parts) whose
entries are ``gmpy2.mpq`` rationals; matrix products go through ``np.dot`` on
those arrays, which keeps 128x128 exact products well under a second.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np
from gmpy2 import mpq

RationalLike = Union[int, str, Fraction, type(mpq(0))]

_MPQ_ZERO = mpq(0)
_MPQ_ONE = mpq(1)


def _as_mpq(x: RationalLike) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class ExactComplex:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", _as_mpq(re))
        object.__setattr__(self, "im", _as_mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __truediv__(self, other: "ExactComplex") -> "ExactComplex":
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero ExactComplex")
        return ExactComplex(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit_modulus(self) -> bool:
        return self.re * self.re + self.im * self.im == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactComplex):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"ExactComplex({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        return self.to_string()

    def to_string(self) -> str:
        """Render as ``a/b+c/di``, e.g. ``3/4-1/2i``. Lossless."""
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    @staticmethod
    def from_string(s: str) -> "ExactComplex":
        m = _re.fullmatch(
            r"\s*(?P<re>[+-]?\d+(?:/\d+)?)\s*"
            r"(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*i\s*",
            s,
        )
        if m is None:
            raise ValueError(f"not an exact complex literal: {s!r}")
        im = mpq(m.group("im"))
        if m.group("sign") == "-":
            im = -im
        return ExactComplex(mpq(m.group("re")), im)


EC_ZERO = ExactComplex(0)
EC_ONE = ExactComplex(1)
EC_I = ExactComplex(0, 1)

EntryLike = Union[ExactComplex, RationalLike]


def _entry_parts(x: EntryLike) -> tuple[mpq, mpq]:
    if isinstance(x, ExactComplex):
        return x.re, x.im
    if isinstance(x, str) and ("i" in x):
        c = ExactComplex.from_string(x)
        return c.re, c.im
    return _as_mpq(x), _MPQ_ZERO


class CMatrix:
    """A dense square matrix over :class:`ExactComplex`.

    Equality is exact entrywise equality. All operations return new
    matrices; instances are never mutated after construction.
    """

    __slots__ = ("n", "_re", "_im")

    def __init__(self, re: np.ndarray, im: np.ndarray):
        # internal constructor; use the from_* classmethods in client code
        if re.shape != im.shape or re.ndim != 2 or re.shape[0] != re.shape[1]:
            raise ValueError("CMatrix requires matching square arrays")
        object.__setattr__(self, "n", re.shape[0])
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)

    def __setattr__(self, name, value):
        raise AttributeError("CMatrix is immutable")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[EntryLike]]) -> "CMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        re = np.empty((n, n), dtype=object)
        im = np.empty((n, n), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                re[i, j], im[i, j] = _entry_parts(x)
        return cls(re, im)

    @classmethod
    def identity(cls, n: int) -> "CMatrix":
        re = np.full((n, n), _MPQ_ZERO, dtype=object)
        im = np.full((n, n), _MPQ_ZERO, dtype=object)
        for i in range(n):
            re[i, i] = _MPQ_ONE
        return cls(re, im)

    @classmethod
    def zeros(cls, n: int) -> "CMatrix":
        re = np.full((n, n), _MPQ_ZERO, dtype=object)
        im = np.full((n, n), _MPQ_ZERO, dtype=object)
        return cls(re, im)

    # -- entry access --------------------------------------------------------

    def entry(self, i: int, j: int) -> ExactComplex:
        return ExactComplex(self._re[i, j], self._im[i, j])

    def rows(self) -> list[list[ExactComplex]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    # -- algebra -------------------------------------------------------------

    def __add__(self, other: "CMatrix") -> "CMatrix":
        return CMatrix(self._re + other._re, self._im + other._im)

    def __sub__(self, other: "CMatrix") -> "CMatrix":
        return CMatrix(self._re - other._re, self._im - other._im)

    def __neg__(self) -> "CMatrix":
        return CMatrix(-self._re, -self._im)

    def __matmul__(self, other: "CMatrix") -> "CMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch in matrix product")
        # three real products instead of four (Karatsuba-style split)
        t1 = self._re.dot(other._re)
        t2 = self._im.dot(other._im)
        t3 = (self._re + self._im).dot(other._re + other._im)
        return CMatrix(t1 - t2, t3 - t1 - t2)

    def scale(self, s: EntryLike) -> "CMatrix":
        sr, si = _entry_parts(s)
        return CMatrix(sr * self._re - si * self._im, sr * self._im + si * self._re)

    def transpose(self) -> "CMatrix":
        return CMatrix(self._re.T.copy(), self._im.T.copy())

    def conj(self) -> "CMatrix":
        return CMatrix(self._re.copy(), -self._im)

    def dagger(self) -> "CMatrix":
        return CMatrix(self._re.T.copy(), -self._im.T)

    def apply(self, vec: Sequence[ExactComplex]) -> list[ExactComplex]:
        out = []
        for i in range(self.n):
            acc = EC_ZERO
            for j, v in enumerate(vec):
                acc = acc + self.entry(i, j) * v
            out.append(acc)
        return out

    # -- predicates ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, CMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and bool((self._re == other._re).all())
            and bool((self._im == other._im).all())
        )

    def __hash__(self):
        return hash((self.n, tuple(map(tuple, self._re)), tuple(map(tuple, self._im))))

    def is_zero(self) -> bool:
        return bool((self._re == 0).all() and (self._im == 0).all())

    def is_hermitian(self) -> bool:
        return self == self.dagger()

    def is_unitary(self) -> bool:
        return self @ self.dagger() == CMatrix.identity(self.n)

    def is_scalar_multiple_of_identity(self) -> bool:
        ident = CMatrix.identity(self.n)
        return self == ident.scale(self.entry(0, 0))

    def scalar_ratio(self, other: "CMatrix") -> ExactComplex | None:
        """Return s with ``self == other.scale(s)``, or None."""
        for i in range(self.n):
            for j in range(self.n):
                if not other.entry(i, j).is_zero():
                    s = self.entry(i, j) / other.entry(i, j)
                    return s if self == other.scale(s) else None
        return None if not self.is_zero() else EC_ONE

    def __repr__(self):
        return f"CMatrix({self.n}x{self.n})"

    def __str__(self):
        return "\n".join("  ".join(str(self.entry(i, j)) for j in range(self.n)) for i in range(self.n))


# -- module-level operations -------------------------------------------------


def kron(a: CMatrix, b: CMatrix) -> CMatrix:
    """Kronecker product; block (p, q) equals a[p, q] * b."""
    return CMatrix(
        np.kron(a._re, b._re) - np.kron(a._im, b._im),
        np.kron(a._re, b._im) + np.kron(a._im, b._re),
    )


def kron_all(ms: Iterable[CMatrix]) -> CMatrix:
    ms = list(ms)
    out = ms[0]
    for m in ms[1:]:
        out = kron(out, m)
    return out


def dagger(a: CMatrix) -> CMatrix:
    """Conjugate transpose."""
    return a.dagger()


def conj_entrywise(a: CMatrix) -> CMatrix:
    """Entrywise complex conjugate."""
    return a.conj()


# -- Pauli matrices and strings ----------------------------------------------

PAULI_I = CMatrix.identity(2)
PAULI_X = CMatrix.from_rows([[0, 1], [1, 0]])
PAULI_Y = CMatrix.from_rows([[EC_ZERO, -EC_I], [EC_I, EC_ZERO]])
PAULI_Z = CMatrix.from_rows([[1, 0], [0, -1]])

PAULIS = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}


def pauli_string(letters: str) -> CMatrix:
    """Kronecker chain of Pauli matrices, e.g. ``pauli_string("XYZ")``."""
    return kron_all(PAULIS[c] for c in letters)
