"""Trivial extension algebras A + D(A), graded with A in degree 0 and the
dual bimodule in degree 1, together with the self-injectivity check.

The basis is A's basis followed by the dual basis in matching order, so
the embedding of A is the identity on indices and the canonical pairing
<(a,f),(b,g)> = f(b) + g(a) is the swap form.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, AlgebraError, dual_bimodule
from .field import Field
from .graded import GradedAlgebra
from .linalg import ExactMatrix, in_row_space, row_space_basis, rref
from .modules import (injective_module, module_isomorphic, projective_module)


class TrivextError(ValueError):
    pass


@dataclass
class TrivialExtension:
    """T(A) = A + D(A) with the canonical grading and pairing."""

    base: Algebra
    algebra: Algebra
    graded_algebra: GradedAlgebra
    pairing: ExactMatrix

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def embed(self, coeffs: np.ndarray) -> np.ndarray:
        """Coefficient vector of A into T(A) (identity on indices)."""
        f = self.algebra.field
        out = f.zeros(self.algebra.dim)
        out[: self.base.dim] = coeffs
        return out

    def pairing_value(self, x: np.ndarray, y: np.ndarray):
        f = self.algebra.field
        return f.normalize(np.dot(x, np.dot(self.pairing.data, y)))


def trivial_extension(a: Algebra, check: bool = True) -> TrivialExtension:
    """Assemble T(A) from the structure constants and the dual bimodule."""
    f = a.field
    n = a.dim
    dual = dual_bimodule(a)
    mult = {}
    for (i, j), entries in a.mult.items():
        mult[(i, j)] = tuple(entries)
    for i in range(n):
        li, ri = dual.left[i], dual.right[i]
        for j in range(n):
            ent = tuple((n + m, li[m, j]) for m in range(n)
                        if li[m, j] != f.zero())
            if ent:
                mult[(i, n + j)] = ent
            ent = tuple((n + m, ri[m, j]) for m in range(n)
                        if ri[m, j] != f.zero())
            if ent:
                mult[(n + j, i)] = ent
    names = list(a.basis_names) + [s + "*" for s in a.basis_names]
    unit = [a.unit[i] for i in range(n)] + [f.zero()] * n
    if a.radical_indices is not None:
        rad_idx = list(a.radical_indices) + list(range(n, 2 * n))
        rad_vecs = None
    else:
        rad_idx = None
        base_rows = a.radical_row_basis()
        rad_vecs = []
        for r in range(base_rows.rows):
            v = f.zeros(2 * n)
            v[:n] = base_rows.data[r]
            rad_vecs.append(v)
        for j in range(n):
            v = f.zeros(2 * n)
            v[n + j] = f.one()
            rad_vecs.append(v)
    src = tgt = None
    if a.is_path_like():
        src = list(a.src) + [a.tgt[j] for j in range(n)]
        tgt = list(a.tgt) + [a.src[j] for j in range(n)]
    generators, gen_words = _trivext_generators(a, mult, f, n)
    t_alg = Algebra(f, names, mult, unit, list(a.idempotents),
                    radical_indices=rad_idx, radical_vectors=rad_vecs,
                    src=src, tgt=tgt,
                    generators=generators, gen_words=gen_words,
                    name=f"T({a.name})", check=check)
    # canonical pairing: the swap form
    pair = f.zeros(2 * n, 2 * n)
    for i in range(n):
        pair[i, n + i] = f.one()
        pair[n + i, i] = f.one()
    pairing = ExactMatrix(f, pair)
    degrees = [0] * n + [1] * n
    ga = GradedAlgebra(t_alg, degrees, degree_zero=a, check=check)
    te = TrivialExtension(a, t_alg, ga, pairing)
    if check:
        _verify(te)
    return te


def _trivext_generators(a: Algebra, mult, f: Field, n: int):
    """Generators of T(A): A's generators plus dual elements lifting the
    top of the dual part, with factorization words when products stay
    monomial; falls back to all dual basis elements otherwise."""
    if a.gen_words is None:
        return None, None
    # span of rad(A).DA + DA.rad(A) inside the dual coordinates
    rows = []
    rad = a.radical_row_basis()
    dual = dual_bimodule(a)
    for r in range(rad.rows):
        vec = rad.data[r]
        for j in range(n):
            for mats in (dual.left, dual.right):
                img = f.zeros(n)
                for i in range(n):
                    if vec[i] != f.zero():
                        img = f.normalize(img + vec[i] * mats[i][:, j])
                if not f.is_zero(img):
                    rows.append(img)
    span = (row_space_basis(ExactMatrix.from_rows(f, rows)) if rows
            else ExactMatrix(f, f.zeros(0, n)))
    dual_gens = []
    cur = span
    for j in range(n):
        v = f.zeros(n)
        v[j] = f.one()
        if not in_row_space(cur, v):
            dual_gens.append(n + j)
            cur = row_space_basis(ExactMatrix(
                f, np.concatenate([cur.data, v.reshape(1, -1)], axis=0)))
    generators = list(a.generators) + dual_gens
    # factorization words by closure under single-term coefficient-1 products
    words = {i: tuple(a.gen_words[i]) for i in range(n)}
    for g in dual_gens:
        words[g] = (g,)
    frontier = list(words)
    while frontier:
        nxt = []
        for k in frontier:
            for g in generators:
                for pair, word in (((g, k), words[k] + (g,)),
                                   ((k, g), (g,) + words[k])):
                    entries = mult.get(pair, ())
                    if len(entries) == 1 and entries[0][1] == f.one():
                        m = entries[0][0]
                        if m not in words:
                            words[m] = word
                            nxt.append(m)
        frontier = nxt
    if len(words) < 2 * n:
        # some dual element is not a monomial product: keep correctness by
        # declaring every unreached dual element a generator
        for j in range(2 * n):
            if j not in words:
                generators.append(j)
                words[j] = (j,)
    return generators, {i: words[i] for i in range(2 * n)}


def _verify(te: TrivialExtension):
    """Pairing symmetry/associativity/nondegeneracy and the degree-0
    subalgebra comparison, exact on the basis."""
    t = te.algebra
    a = te.base
    f = t.field
    n = a.dim
    pair = te.pairing
    if rref(pair).rank != t.dim:
        raise TrivextError("pairing is degenerate")
    if not np.array_equal(pair.data, pair.data.T):
        raise TrivextError("pairing is not symmetric")
    dim = t.dim
    if dim <= 40:
        triples = itertools.product(range(dim), repeat=3)
    else:
        rng = random.Random(0)
        triples = ((rng.randrange(dim), rng.randrange(dim), rng.randrange(dim))
                   for _ in range(4000))
    # the pairing is the swap form, so <u, b_k> reads off one coefficient
    def pair_with_basis(u, k):
        swap = k - n if k >= n else k + n
        return u[swap]

    for i, j, k in triples:
        left = f.zero()
        for m, c in t.mult.get((i, j), ()):
            left = f.add(left, f.mul(c, pair_with_basis(t.elem(k), m)))
        right = f.zero()
        for m, c in t.mult.get((j, k), ()):
            right = f.add(right, f.mul(c, pair_with_basis(t.elem(i), m)))
        if left != right:
            raise TrivextError(f"pairing not associative at ({i},{j},{k})")
    # degree-0 subalgebra must be A on the nose
    for (i, j), entries in a.mult.items():
        if tuple(entries) != t.mult.get((i, j), ()):
            raise TrivextError("degree-0 part differs from the base algebra")
    for (i, j), entries in t.mult.items():
        if i < n and j < n and tuple(entries) != tuple(a.mult.get((i, j), ())):
            raise TrivextError("degree-0 part has extra products")


@dataclass
class SelfInjectivityReport:
    self_injective: bool
    witness_vertex: int | None = None  # simple with non-projective hull
    matching: list | None = None  # pairs (v, j): I_v isomorphic to P_j

    def __bool__(self):
        return self.self_injective


def check_selfinjective(a) -> SelfInjectivityReport:
    """Test whether every indecomposable injective is projective.

    Accepts an Algebra or a TrivialExtension (for which the pairing
    invariants are re-verified first).
    """
    if isinstance(a, TrivialExtension):
        _verify(a)
        a = a.algebra
    projs = [projective_module(a, v) for v in range(a.n_vertices)]
    matching = []
    witness = None
    for v in range(a.n_vertices):
        inj = injective_module(a, v)
        hit = None
        for j, p in enumerate(projs):
            if module_isomorphic(inj, p) is not None:
                hit = j
                break
        if hit is None:
            witness = v
            break
        matching.append((v, hit))
    if witness is not None:
        return SelfInjectivityReport(False, witness_vertex=witness)
    return SelfInjectivityReport(True, matching=matching)
