"""Idempotent machinery shared by module and complex decomposition.

The engine works on a finite-dimensional algebra of matrices (an
endomorphism ring acting faithfully on some space): it finds an exact
nontrivial idempotent, or certifies that the ring is local.  Splitting
candidates come from minimal-polynomial coprime factorizations; when the
basis and a bounded seeded random search produce none, the certified
radical and its semisimple quotient take over, with Newton lifting back to
an exact idempotent.

The radical is computed from the trace form, refined in characteristic p
by characteristic-polynomial coefficient conditions, and always CERTIFIED:
the result is accepted only when it is a nilpotent two-sided ideal, which
together with the containment rad <= kernel (automatic, since every
characteristic-polynomial coefficient vanishes on products with radical
elements) pins it to exactly rad.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .field import Field
from .linalg import (ExactMatrix, in_row_space, kernel_basis,
                     row_space_basis, rref)
from .polys import (char_polynomial, factor_poly, minimal_polynomial,
                    poly_divmod, poly_eval_matrix, poly_mul, poly_xgcd)


class DecompositionError(RuntimeError):
    pass


class RadicalError(RuntimeError):
    pass


SEARCH_TRIES = 24
DIVISION_RING_TRIES = 64


@dataclass
class LocalCertificate:
    """Evidence that an endomorphism ring is local.

    quotient_dim == 1 means End/rad is the ground field; a larger value
    flags a division ring over the working field (the module may split
    after a field extension).
    """

    radical_dim: int
    quotient_dim: int
    field_relative: bool


class EndRing:
    """A unital algebra of matrices with a distinguished basis."""

    def __init__(self, field: Field, basis_mats: list):
        if not basis_mats:
            raise DecompositionError("empty endomorphism ring")
        self.field = field
        self.mats = list(basis_mats)
        self.n = basis_mats[0].shape[0]
        self.dim = len(basis_mats)
        flat = [m.reshape(self.n * self.n) for m in self.mats]
        self._flat = ExactMatrix.from_rows(field, flat)
        self._flat_rref = rref(self._flat)

    def coords(self, mat: np.ndarray):
        """Coefficients of mat in the basis, or None if outside the ring."""
        f = self.field
        target = mat.reshape(self.n * self.n)
        from .linalg import solve

        x = solve(self._flat.transpose(),
                  ExactMatrix(f, target.reshape(-1, 1)))
        if x is None:
            return None
        return x.data[:, 0]

    def from_coords(self, coeffs) -> np.ndarray:
        f = self.field
        out = f.zeros(self.n, self.n)
        for c, m in zip(coeffs, self.mats):
            if c != f.zero():
                out = f.normalize(out + c * m)
        return out

    def identity(self) -> np.ndarray:
        return self.field.eye(self.n)

    # ---- radical ----

    def _span_is_nilpotent(self, rows: ExactMatrix) -> tuple[bool, int]:
        """(nilpotent?, degree): degree = least d with span^d = 0."""
        f = self.field
        if rows.rows == 0:
            return True, 1
        base = [rows.data[r].reshape(self.n, self.n) for r in range(rows.rows)]
        power = base
        for d in range(2, self.dim + 3):
            prods = []
            for x in power:
                for y in base:
                    p = f.matmul(x, y)
                    if not f.is_zero(p):
                        prods.append(p.reshape(self.n * self.n))
            if not prods:
                return True, d
            span = row_space_basis(ExactMatrix.from_rows(f, prods))
            power = [span.data[r].reshape(self.n, self.n)
                     for r in range(span.rows)]
        return False, 0

    def _is_ideal(self, rows: ExactMatrix) -> bool:
        f = self.field
        for r in range(rows.rows):
            x = rows.data[r].reshape(self.n, self.n)
            for y in self.mats:
                for prod in (f.matmul(x, y), f.matmul(y, x)):
                    if not in_row_space(rows, prod.reshape(self.n * self.n)):
                        return False
        return True

    def radical(self) -> ExactMatrix:
        """Row basis (flattened matrices) of rad, certified exactly."""
        f = self.field
        # stage 0: kernel of the trace form of the faithful action
        gram = f.zeros(self.dim, self.dim)
        for j, y in enumerate(self.mats):
            for i, x in enumerate(self.mats):
                prod = f.matmul(x, y)
                tr = f.zero()
                for d in range(self.n):
                    tr = f.add(tr, prod[d, d])
                gram[j, i] = tr
        coeff_rows = [k.data[:, 0] for k in kernel_basis(ExactMatrix(f, gram))]
        candidate = self._rows_from_coeffs(coeff_rows)
        nil, _ = self._span_is_nilpotent(candidate)
        if nil and self._is_ideal(candidate):
            return candidate
        if f.p == 0:
            raise RadicalError("trace-form radical failed over Q")
        # characteristic p: refine with char-poly coefficient conditions
        p = f.p
        pk = p
        while pk <= self.n and candidate.rows > 0:
            cand_mats = [candidate.data[r].reshape(self.n, self.n)
                         for r in range(candidate.rows)]
            rows = []
            for y in cand_mats:
                row = []
                for x in cand_mats:
                    coeffs = char_polynomial(f, f.matmul(x, y))
                    row.append(coeffs[self.n - pk])
                rows.append(row)
            system = ExactMatrix.from_rows(f, rows)
            kers = kernel_basis(system)
            new_rows = []
            for k in kers:
                vec = f.zeros(self.n * self.n)
                for c, r in zip(k.data[:, 0], range(candidate.rows)):
                    if c != f.zero():
                        vec = f.normalize(vec + c * candidate.data[r])
                if not f.is_zero(vec):
                    new_rows.append(vec)
            candidate = (row_space_basis(ExactMatrix.from_rows(f, new_rows))
                         if new_rows else ExactMatrix(f, f.zeros(0, self.n ** 2)))
            nil, _ = self._span_is_nilpotent(candidate)
            if nil and self._is_ideal(candidate):
                return candidate
            pk *= p
        nil, _ = self._span_is_nilpotent(candidate)
        if nil and self._is_ideal(candidate):
            return candidate
        raise RadicalError("could not certify the radical")

    def _rows_from_coeffs(self, coeff_rows) -> ExactMatrix:
        f = self.field
        vecs = []
        for coeffs in coeff_rows:
            vec = f.zeros(self.n * self.n)
            for c, m in zip(coeffs, self.mats):
                if c != f.zero():
                    vec = f.normalize(vec + c * m.reshape(self.n * self.n))
            if not f.is_zero(vec):
                vecs.append(vec)
        if not vecs:
            return ExactMatrix(f, f.zeros(0, self.n * self.n))
        return row_space_basis(ExactMatrix.from_rows(f, vecs))


class QuotientRing:
    """E / N for a flat row basis N of an ideal; elements are coefficient
    vectors over a subset of E's basis (the non-pivot complement)."""

    def __init__(self, ring: EndRing, nil_rows: ExactMatrix):
        f = ring.field
        self.ring = ring
        self.field = f
        self.nil_rows = rref(nil_rows).reduced
        self.nil_rows = ExactMatrix(
            f, self.nil_rows.data[:rref(nil_rows).rank].copy())
        # complement: reduce each E basis matrix, keep an independent set
        reps = []
        rep_mats = []
        seen = self.nil_rows
        for m in ring.mats:
            flat = m.reshape(ring.n * ring.n)
            if in_row_space(seen, flat):
                continue
            reps.append(flat)
            rep_mats.append(m)
            seen = row_space_basis(ExactMatrix(
                f, np.concatenate([seen.data, flat.reshape(1, -1)], axis=0)))
        self.rep_mats = rep_mats
        self.dim = len(rep_mats)
        self._mult = {}
        rows = [m.reshape(ring.n ** 2) for m in rep_mats]
        a = ExactMatrix.from_rows(f, rows).transpose()
        self._solve_matrix = ExactMatrix(
            f, np.concatenate([a.data, self.nil_rows.data.T], axis=1)
            if self.nil_rows.rows else a.data)

    def reduce(self, mat: np.ndarray):
        """Coordinates of mat's class in the representative basis."""
        f = self.field
        vec = mat.reshape(self.ring.n ** 2)
        from .linalg import solve
        x = solve(self._solve_matrix, ExactMatrix(f, vec.reshape(-1, 1)))
        if x is None:
            raise DecompositionError("element outside E + nil span")
        return x.data[:self.dim, 0]

    def mul(self, a_coeffs, b_coeffs):
        f = self.field
        key_cache = self._mult
        out = np.array([f.zero()] * self.dim, dtype=f.dtype)
        for i, ca in enumerate(a_coeffs):
            if ca == f.zero():
                continue
            for j, cb in enumerate(b_coeffs):
                if cb == f.zero():
                    continue
                got = key_cache.get((i, j))
                if got is None:
                    got = self.reduce(f.matmul(self.rep_mats[i],
                                               self.rep_mats[j]))
                    key_cache[(i, j)] = got
                out = f.normalize(out + f.mul(ca, cb) * got)
        return out

    def one(self):
        return self.reduce(self.ring.identity())

    def regular_matrix(self, coeffs) -> np.ndarray:
        """Left multiplication by the element, on quotient coordinates."""
        f = self.field
        cols = []
        for j in range(self.dim):
            unit = np.array([f.zero()] * self.dim, dtype=f.dtype)
            unit[j] = f.one()
            cols.append(self.mul(coeffs, unit))
        m = f.zeros(self.dim, self.dim)
        for j, col in enumerate(cols):
            m[:, j] = col
        return m

    def lift(self, coeffs) -> np.ndarray:
        return self.field.normalize(sum(
            (c * m for c, m in zip(coeffs, self.rep_mats)
             if c != self.field.zero()),
            self.field.zeros(self.ring.n, self.ring.n)))

    def is_commutative(self) -> bool:
        f = self.field
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                a = np.array([f.zero()] * self.dim, dtype=f.dtype)
                b = np.array([f.zero()] * self.dim, dtype=f.dtype)
                a[i] = f.one()
                b[j] = f.one()
                if not np.array_equal(self.mul(a, b), self.mul(b, a)):
                    return False
        return True


def _coprime_idempotent(field: Field, minpoly: list, element: np.ndarray):
    """Exact idempotent from a coprime factor split of the minimal
    polynomial, or None when the polynomial is primary."""
    factors = factor_poly(field, minpoly)
    if len(factors) < 2:
        return None
    g = factors[0][0]
    for _ in range(factors[0][1] - 1):
        g = poly_mul(field, g, factors[0][0])
    h, rem = poly_divmod(field, minpoly, g)
    if rem:
        raise DecompositionError("factorization inconsistency")
    gg, u, v = poly_xgcd(field, g, h)
    if len(gg) != 1:
        return None
    e = poly_eval_matrix(field, poly_mul(field, u, g), element)
    return e


def _is_trivial_idempotent(field: Field, e: np.ndarray) -> bool:
    n = e.shape[0]
    return field.is_zero(e) or np.array_equal(e, field.eye(n))


def _candidate_coeff_vectors(field: Field, dim: int, rng):
    """Basis vectors first, then bounded seeded random combinations."""
    for i in range(dim):
        unit = [field.zero()] * dim
        unit[i] = field.one()
        yield unit
    for _ in range(SEARCH_TRIES):
        if field.p == 0:
            yield [field.scalar(rng.randint(-2, 2)) for _ in range(dim)]
        else:
            yield [field.scalar(rng.randrange(field.p)) for _ in range(dim)]


def find_splitting_idempotent(ring: EndRing, rng: random.Random):
    """(idempotent, None) when the ring splits, else (None, certificate)."""
    field = ring.field
    if ring.dim == 1:
        return None, LocalCertificate(0, 1, False)
    # stage 1: direct splits inside the ring
    for coeffs in _candidate_coeff_vectors(field, ring.dim, rng):
        x = ring.from_coords(coeffs)
        mp = minimal_polynomial(field, x)
        e = _coprime_idempotent(field, mp, x)
        if e is not None and not _is_trivial_idempotent(field, e):
            assert np.array_equal(field.matmul(e, e), e)
            return e, None
    # stage 2: certified radical, then the semisimple quotient
    rad_rows = ring.radical()
    quot = QuotientRing(ring, rad_rows)
    if quot.dim == 1:
        return None, LocalCertificate(rad_rows.rows, 1, False)
    nil_deg = ring._span_is_nilpotent(rad_rows)[1]
    for coeffs in _candidate_coeff_vectors(field, quot.dim, rng):
        xq = np.array([field.scalar(c) for c in coeffs], dtype=field.dtype)
        reg = quot.regular_matrix(xq)
        mp = minimal_polynomial(field, reg)
        eq_poly = _coprime_idempotent(field, mp, reg)
        if eq_poly is None:
            continue
        # read the idempotent of the quotient off its regular action on 1
        e_coeffs = field.matmul(eq_poly, quot.one().reshape(-1, 1))[:, 0]
        f0 = quot.lift(e_coeffs)
        e = lift_idempotent_matrix(ring, f0, rad_rows, nil_deg)
        if not _is_trivial_idempotent(field, e):
            return e, None
    # stage 3: division-ring certification over the working field
    if quot.is_commutative():
        for coeffs in _candidate_coeff_vectors(field, quot.dim, rng):
            xq = np.array([field.scalar(c) for c in coeffs], dtype=field.dtype)
            reg = quot.regular_matrix(xq)
            mp = minimal_polynomial(field, reg)
            facs = factor_poly(field, mp)
            if len(mp) - 1 == quot.dim and len(facs) == 1 and facs[0][1] == 1:
                return None, LocalCertificate(rad_rows.rows, quot.dim, True)
    raise DecompositionError(
        "idempotent search exhausted without a certificate "
        f"(ring dim {ring.dim}, quotient dim {quot.dim})")


def lift_idempotent_matrix(ring: EndRing, f0: np.ndarray,
                           nil_rows: ExactMatrix, nil_degree: int | None = None
                           ) -> np.ndarray:
    """Newton refinement e <- 3e^2 - 2e^3 from an idempotent mod nil."""
    field = ring.field
    err = field.normalize(field.matmul(f0, f0) - f0)
    if not in_row_space(nil_rows, err.reshape(-1)):
        raise DecompositionError("element is not idempotent modulo nil")
    if nil_degree is None:
        nil, nil_degree = ring._span_is_nilpotent(nil_rows)
        if not nil:
            raise DecompositionError("nil span is not nilpotent")
    import math

    steps = max(1, math.ceil(math.log2(max(2, nil_degree)))) + 1
    e = f0
    for _ in range(steps):
        e2 = field.matmul(e, e)
        if np.array_equal(e2, e):
            return e
        e3 = field.matmul(e2, e)
        e = field.normalize(3 * e2 - 2 * e3)
    if np.array_equal(field.matmul(e, e), e):
        return e
    raise DecompositionError("idempotent lifting did not converge")
