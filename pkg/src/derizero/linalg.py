"""Dense exact linear algebra over Q and GF(p).

Everything reduces to `rref`, which uses deterministic pivoting (first
nonzero entry in the leftmost unfinished column) so that reduced forms are
canonical and reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import Field


class DimensionMismatch(ValueError):
    pass


class ExactMatrix:
    """A rows x cols matrix over an exact field.

    Thin wrapper around a numpy array (`int64` mod p or `object` with
    Fractions).  Instances are treated as immutable by the rest of the
    toolkit; operations return fresh matrices.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data: np.ndarray):
        if data.ndim != 2:
            raise DimensionMismatch(f"expected 2D data, got shape {data.shape}")
        self.field = field
        self.data = data

    # ---- constructors ----

    @classmethod
    def from_rows(cls, field: Field, rows) -> "ExactMatrix":
        rows = list(rows)
        if not rows:
            return cls(field, field.zeros(0, 0))
        arr = field.zeros(len(rows), len(rows[0]))
        for i, row in enumerate(rows):
            if len(row) != arr.shape[1]:
                raise DimensionMismatch("ragged rows")
            for j, x in enumerate(row):
                arr[i, j] = field.scalar(x)
        return cls(field, arr)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "ExactMatrix":
        return cls(field, field.zeros(rows, cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        return cls(field, field.eye(n))

    # ---- basics ----

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.data.copy())

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.data.T.copy())

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        return ExactMatrix(self.field, self.field.matmul(self.data, other.data))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return ExactMatrix(self.field, self.field.normalize(self.data + other.data))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return ExactMatrix(self.field, self.field.normalize(self.data - other.data))

    def scale(self, c) -> "ExactMatrix":
        c = self.field.scalar(c)
        return ExactMatrix(self.field, self.field.normalize(self.data * c))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.data == other.data))
        )

    def __hash__(self):
        return hash((self.field, self.canonical_bytes()))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.data)

    def canonical_bytes(self) -> bytes:
        return repr(self.data.tolist()).encode()

    def __repr__(self):
        return f"ExactMatrix({self.field}, {self.data.tolist()})"


@dataclass
class RrefResult:
    reduced: ExactMatrix
    pivot_columns: list
    rank: int
    transform: ExactMatrix  # transform @ m == reduced, invertible


def rref(m: ExactMatrix) -> RrefResult:
    """Reduced row-echelon form with the invertible row transform."""
    field = m.field
    a = m.data.copy()
    rows, cols = a.shape
    t = field.eye(rows)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if a[i, c] != field.zero()), None)
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
            t[[r, pivot]] = t[[pivot, r]]
        inv = field.inv(a[r, c])
        if inv != field.one():
            a[r] = field.normalize(a[r] * inv)
            t[r] = field.normalize(t[r] * inv)
        for i in range(rows):
            if i != r and a[i, c] != field.zero():
                coef = a[i, c]
                a[i] = field.normalize(a[i] - coef * a[r])
                t[i] = field.normalize(t[i] - coef * t[r])
        pivots.append(c)
        r += 1
    return RrefResult(ExactMatrix(field, a), pivots, len(pivots),
                      ExactMatrix(field, t))


def rank(m: ExactMatrix) -> int:
    return rref(m).rank


def solve(a: ExactMatrix, b) -> ExactMatrix | None:
    """One solution of a @ x = b, or None when the system is inconsistent.

    `b` may be a column ExactMatrix or a flat sequence; returns a column.
    """
    field = a.field
    if not isinstance(b, ExactMatrix):
        b = ExactMatrix.from_rows(field, [[x] for x in b])
    if b.rows != a.rows:
        raise DimensionMismatch(f"solve: {a.shape} vs {b.shape}")
    aug = ExactMatrix(field, np.concatenate([a.data, b.data], axis=1))
    res = rref(aug)
    x = field.zeros(a.cols, b.cols)
    for r, c in enumerate(res.pivot_columns):
        if c >= a.cols:
            return None  # pivot in the augmented column: inconsistent
        x[c] = res.reduced.data[r, a.cols:]
    return ExactMatrix(field, x)


def kernel_basis(a: ExactMatrix) -> list[ExactMatrix]:
    """Basis of {v : a @ v = 0}, as column matrices; empty when injective."""
    field = a.field
    res = rref(a)
    pivots = set(res.pivot_columns)
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = field.zeros(a.cols, 1)
        v[fc, 0] = field.one()
        for r, pc in enumerate(res.pivot_columns):
            v[pc, 0] = field.neg(res.reduced.data[r, fc])
        basis.append(ExactMatrix(field, v))
    return basis


def kernel_matrix(a: ExactMatrix) -> ExactMatrix:
    """Kernel basis vectors stacked as the ROWS of a matrix."""
    vecs = kernel_basis(a)
    field = a.field
    if not vecs:
        return ExactMatrix(field, field.zeros(0, a.cols))
    return ExactMatrix(field, np.concatenate([v.data.T for v in vecs], axis=0))


def inverse(a: ExactMatrix) -> ExactMatrix:
    if a.rows != a.cols:
        raise DimensionMismatch("inverse of non-square matrix")
    res = rref(a)
    if res.rank != a.rows:
        raise ZeroDivisionError("matrix is singular")
    return res.transform


def row_space_basis(m: ExactMatrix) -> ExactMatrix:
    """Canonical basis (rref nonzero rows) of the row space."""
    res = rref(m)
    return ExactMatrix(m.field, res.reduced.data[: res.rank].copy())


def stack_rows(field: Field, mats) -> ExactMatrix:
    mats = [m for m in mats if m.rows > 0] if mats else []
    if not mats:
        return ExactMatrix(field, field.zeros(0, 0))
    return ExactMatrix(field, np.concatenate([m.data for m in mats], axis=0))


def in_row_space(basis_rref: ExactMatrix, vec: np.ndarray) -> bool:
    """Membership test against an rref row basis."""
    field = basis_rref.field
    v = vec.copy()
    data = basis_rref.data
    for r in range(basis_rref.rows):
        c = next((j for j in range(data.shape[1]) if data[r, j] != field.zero()),
                 None)
        if c is None:
            continue
        if v[c] != field.zero():
            v = field.normalize(v - v[c] * data[r])
    return field.is_zero(v)
