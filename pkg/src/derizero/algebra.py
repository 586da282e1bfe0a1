"""Finite-dimensional algebras with a chosen basis and structure constants.

The main frontend is a quiver with relations: `build_algebra` computes an
irreducible-path basis by noncommutative rewriting (degree-lex order on
arrows, overlap completion up to a length cap) and assembles the sparse
multiplication table.  Trivial extensions and raw structure-constant input
produce the same `Algebra` type.

Conventions.  A path is stored as the tuple of its arrows in travel order
(source to target).  As an algebra element a path q satisfies
q = e_target . q . e_source, and the product x*y means "apply y, then x",
so word(x*y) = word(y) + word(x).  Consequently e_i*A*e_j is spanned by the
paths from j to i, and Hom(Ae_i, Ae_j) is identified with e_i*A*e_j acting
by right multiplication.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import Field
from .linalg import ExactMatrix, in_row_space, row_space_basis, rref
from .polys import char_polynomial

FULL_ASSOC_CHECK_DIM = 50
DEFAULT_LENGTH_CAP = 12


class AlgebraError(ValueError):
    pass


class CoxeterUndefinedError(AlgebraError):
    """Cartan matrix not invertible over the integers."""


@dataclass
class QuiverPresentation:
    """A quiver with relations over an exact field.

    relations: list of linear combinations, each combination a list of
    (coefficient, path) pairs where a path is a tuple of arrow names in
    travel order.  All paths in one relation must be parallel and of
    length >= 2.
    """

    field: Field
    vertices: list
    arrows: list  # (name, source, target)
    relations: list = dc_field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise AlgebraError(f"duplicate vertex {v!r}")
            seen.add(v)
        vset = set(self.vertices)
        names = set()
        for name, s, t in self.arrows:
            if name in names or name in vset:
                raise AlgebraError(f"duplicate name {name!r}")
            names.add(name)
            if s not in vset or t not in vset:
                raise AlgebraError(f"arrow {name!r} references unknown vertex")


class Algebra:
    """A finite-dimensional unital algebra with distinguished data.

    Attributes:
        field: coefficient field
        dim: vector space dimension
        basis_names: printable name per basis element
        mult: sparse table, (i, j) -> tuple of (k, coeff) with
              b_i * b_j = sum coeff * b_k; absent keys mean zero
        unit: coefficient vector of 1
        idempotents: basis indices of the orthogonal primitive idempotents
        src, tgt: vertex index per basis element when the basis is
              "path-like" (b = e_tgt * b * e_src), else None
        radical_indices: basis indices spanning rad(A) when the radical is
              spanned by a basis subset, else None
        generators: basis indices generating A as an algebra (with unit);
              defaults to all of them
        gen_words: for each basis index, a factorization as a product of
              generators (tuple applied left to right in travel order), or
              None when unavailable
    """

    def __init__(self, field, basis_names, mult, unit, idempotents,
                 radical_indices=None, radical_vectors=None,
                 src=None, tgt=None, generators=None, gen_words=None,
                 name="", check=True, check_seed=0):
        self.field = field
        self.dim = len(basis_names)
        self.basis_names = list(basis_names)
        self.mult = dict(mult)
        self.unit = np.array(unit, dtype=field.dtype)
        self.idempotents = list(idempotents)
        self.src = list(src) if src is not None else None
        self.tgt = list(tgt) if tgt is not None else None
        self.radical_indices = (list(radical_indices)
                                if radical_indices is not None else None)
        self.name = name or "algebra"
        if radical_vectors is not None:
            self._radical_rows = row_space_basis(
                ExactMatrix.from_rows(field, radical_vectors))
        elif radical_indices is not None:
            vecs = []
            for i in radical_indices:
                v = [0] * self.dim
                v[i] = 1
                vecs.append(v)
            self._radical_rows = row_space_basis(
                ExactMatrix.from_rows(field, vecs)) if vecs else \
                ExactMatrix.zeros(field, 0, self.dim)
        else:
            raise AlgebraError("radical data required")
        self.generators = (list(generators) if generators is not None
                           else list(range(self.dim)))
        self.gen_words = gen_words
        self._left_mult_cache = {}
        self._right_mult_cache = {}
        self._corner_cache = {}
        if check:
            self._check(check_seed)

    # ---- construction checks ----

    def _check(self, seed):
        f = self.field
        one = self.unit
        for i in range(self.dim):
            ei = self.elem(i)
            if not np.array_equal(self.mul(one, ei), ei) or \
               not np.array_equal(self.mul(ei, one), ei):
                raise AlgebraError(f"unit fails on basis element {i}")
        if self.dim <= FULL_ASSOC_CHECK_DIM:
            triples = itertools.product(range(self.dim), repeat=3)
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(self.dim), rng.randrange(self.dim),
                        rng.randrange(self.dim)) for _ in range(2000))
        for i, j, k in triples:
            left = {}
            for m, c in self.mult.get((i, j), ()):
                for t, d in self.mult.get((m, k), ()):
                    left[t] = f.add(left.get(t, f.zero()), f.mul(c, d))
            right = {}
            for m, c in self.mult.get((j, k), ()):
                for t, d in self.mult.get((i, m), ()):
                    right[t] = f.add(right.get(t, f.zero()), f.mul(c, d))
            for t in set(left) | set(right):
                if left.get(t, f.zero()) != right.get(t, f.zero()):
                    raise AlgebraError(f"associativity fails at ({i},{j},{k})")
        # orthogonal idempotents summing to the unit
        total = self.field.zeros(self.dim)
        for a in self.idempotents:
            ea = self.elem(a)
            if not np.array_equal(self.mul(ea, ea), ea):
                raise AlgebraError(f"basis element {a} is not idempotent")
            for b in self.idempotents:
                if a != b and not f.is_zero(self.mul(ea, self.elem(b))):
                    raise AlgebraError("idempotents not orthogonal")
            total = f.normalize(total + ea)
        if not np.array_equal(total, one):
            raise AlgebraError("idempotents do not sum to 1")
        self._check_radical()

    def _check_radical(self):
        rows = self._radical_rows
        if rows.rows == 0:
            return
        f = self.field
        # two-sided ideal
        for r in range(rows.rows):
            v = rows.data[r]
            for i in range(self.dim):
                for prod in (self.mul(self.elem(i), v), self.mul(v, self.elem(i))):
                    if not in_row_space(rows, prod):
                        raise AlgebraError("radical is not a two-sided ideal")
        # nilpotent
        if self.loewy_length() >= self.dim + 1:
            raise AlgebraError("radical is not nilpotent")

    # ---- multiplication ----

    def elem(self, i) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one()
        return v

    def left_mult(self, i) -> np.ndarray:
        """Matrix of x -> b_i * x on coefficient columns."""
        m = self._left_mult_cache.get(i)
        if m is None:
            f = self.field
            m = f.zeros(self.dim, self.dim)
            for j in range(self.dim):
                for k, c in self.mult.get((i, j), ()):
                    m[k, j] = f.add(m[k, j], c)
            self._left_mult_cache[i] = m
        return m

    def right_mult(self, i) -> np.ndarray:
        """Matrix of x -> x * b_i on coefficient columns."""
        m = self._right_mult_cache.get(i)
        if m is None:
            f = self.field
            m = f.zeros(self.dim, self.dim)
            for j in range(self.dim):
                for k, c in self.mult.get((j, i), ()):
                    m[k, j] = f.add(m[k, j], c)
            self._right_mult_cache[i] = m
        return m

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of two coefficient vectors."""
        f = self.field
        out = f.zeros(self.dim)
        zero = f.zero()
        for i in range(self.dim):
            xi = x[i]
            if xi == zero:
                continue
            for j in range(self.dim):
                yj = y[j]
                if yj == zero:
                    continue
                for k, c in self.mult.get((i, j), ()):
                    out[k] = f.add(out[k], f.mul(f.mul(xi, yj), c))
        return out

    # ---- structure queries ----

    @property
    def n_vertices(self) -> int:
        return len(self.idempotents)

    def vertex_of_idempotent(self, basis_index) -> int:
        return self.idempotents.index(basis_index)

    def is_path_like(self) -> bool:
        return self.src is not None and self.tgt is not None

    def corner_indices(self, t: int, s: int) -> list:
        """Basis indices spanning e_t * A * e_s (paths from vertex s to t)."""
        key = (t, s)
        got = self._corner_cache.get(key)
        if got is None:
            if not self.is_path_like():
                raise AlgebraError("corner data requires a path-like basis")
            got = [b for b in range(self.dim)
                   if self.tgt[b] == t and self.src[b] == s]
            self._corner_cache[key] = got
        return got

    def radical_contains(self, vec: np.ndarray) -> bool:
        return in_row_space(self._radical_rows, vec)

    @property
    def radical_rank(self) -> int:
        return self._radical_rows.rows

    def radical_row_basis(self) -> ExactMatrix:
        return self._radical_rows

    def loewy_length(self) -> int:
        """Smallest l >= 0 with rad^{l+1} = 0."""
        f = self.field
        power = self._radical_rows
        rad = self._radical_rows
        length = 0
        while power.rows > 0:
            length += 1
            if length > self.dim:
                return length  # not nilpotent; caller treats as an error
            prods = []
            for r in range(power.rows):
                for s in range(rad.rows):
                    prods.append(self.mul(power.data[r], rad.data[s]))
            nxt = ExactMatrix.from_rows(f, prods) if prods else \
                ExactMatrix.zeros(f, 0, self.dim)
            power = row_space_basis(nxt)
        return length

    def is_semisimple(self) -> bool:
        return self.radical_rank == 0

    def opposite(self) -> "Algebra":
        """The opposite algebra on the same basis (cached; the opposite of
        the opposite is this very instance)."""
        cached = getattr(self, "_opposite_cache", None)
        if cached is not None:
            return cached
        mult_op = {(j, i): v for (i, j), v in self.mult.items()}
        op = Algebra(
            self.field, self.basis_names, mult_op, self.unit,
            self.idempotents,
            radical_indices=self.radical_indices,
            radical_vectors=None if self.radical_indices is not None
            else [self._radical_rows.data[r] for r in range(self._radical_rows.rows)],
            src=self.tgt, tgt=self.src,
            generators=self.generators, gen_words=None,
            name=self.name + "^op", check=False)
        self._opposite_cache = op
        op._opposite_cache = self
        return op

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim}, field={self.field})"


# ---------------------------------------------------------------------------
# quiver presentation -> algebra, by path rewriting
# ---------------------------------------------------------------------------


def _deglex_key(word):
    return (len(word), word)


class _Rewriter:
    """Noncommutative rewriting system on path words (arrow index tuples)."""

    def __init__(self, field, arrow_src, arrow_tgt, cap):
        self.field = field
        self.arrow_src = arrow_src
        self.arrow_tgt = arrow_tgt
        self.cap = cap
        self.rules = {}  # lead word -> list of (word, coeff)

    def _reduce_once(self, word):
        """Find the leftmost, longest rule application; None when irreducible."""
        n = len(word)
        for start in range(n):
            for stop in range(n, start + 1, -1):
                sub = word[start:stop]
                tail = self.rules.get(sub)
                if tail is not None:
                    return start, stop, tail
        return None

    def normal_form(self, combo):
        """Fully reduce a dict word->coeff."""
        f = self.field
        work = dict(combo)
        out = {}
        guard = 0
        while work:
            guard += 1
            if guard > 100000:
                raise AlgebraError("rewriting does not terminate")
            word, coeff = work.popitem()
            if coeff == f.zero():
                continue
            hit = self._reduce_once(word)
            if hit is None:
                out[word] = f.add(out.get(word, f.zero()), coeff)
                continue
            start, stop, tail = hit
            for tword, tcoeff in tail:
                new = word[:start] + tword + word[stop:]
                if len(new) > self.cap:
                    raise AlgebraError(
                        f"length cap {self.cap} exceeded during reduction")
                c = f.mul(coeff, tcoeff)
                if new in work:
                    work[new] = f.add(work[new], c)
                    if work[new] == f.zero():
                        del work[new]
                else:
                    prev = out.pop(new, None)
                    if prev is not None:
                        c = f.add(c, prev)
                    if c != f.zero():
                        work[new] = c
        return {w: c for w, c in out.items() if c != f.zero()}

    def add_rule(self, combo) -> bool:
        """Insert a reduced relation; returns True if a new rule appeared."""
        f = self.field
        combo = self.normal_form(combo)
        if not combo:
            return False
        lead = max(combo, key=_deglex_key)
        if len(lead) < 2:
            raise AlgebraError(
                "relations produced a rule on a path of length < 2 "
                "(ideal not admissible)")
        lead_coeff = combo.pop(lead)
        inv = f.inv(lead_coeff)
        tail = [(w, f.mul(f.neg(c), inv)) for w, c in sorted(combo.items())]
        self.rules[lead] = tail
        return True

    def complete(self):
        """Overlap (diamond) completion; deterministic processing order."""
        changed = True
        rounds = 0
        while changed:
            changed = False
            rounds += 1
            if rounds > 200:
                raise AlgebraError("overlap completion did not converge")
            leads = sorted(self.rules, key=_deglex_key)
            for u in leads:
                for v in leads:
                    if u not in self.rules or v not in self.rules:
                        continue
                    # suffix of u == prefix of v (proper overlap)
                    for k in range(1, min(len(u), len(v))):
                        if u[-k:] == v[:k]:
                            amb = u + v[k:]
                            if len(amb) > self.cap:
                                raise AlgebraError(
                                    f"length cap {self.cap} exceeded during "
                                    "completion")
                            left = {u[: len(u) - k] + w: c
                                    for w, c in self.rules[v]}
                            right = {w + v[k:]: c for w, c in self.rules[u]}
                            diff = dict(left)
                            f = self.field
                            for w, c in right.items():
                                diff[w] = f.sub(diff.get(w, f.zero()), c)
                            for w in [w for w, c in diff.items() if c == f.zero()]:
                                del diff[w]
                            if diff and self.add_rule(diff):
                                changed = True
                    # v strictly inside u
                    if len(v) < len(u):
                        for start in range(len(u) - len(v) + 1):
                            if u[start:start + len(v)] == v:
                                repl = {u[:start] + w + u[start + len(v):]: c
                                        for w, c in self.rules[v]}
                                tail = dict(self.rules[u])
                                f = self.field
                                diff = dict(repl)
                                for w, c in tail.items():
                                    diff[w] = f.sub(diff.get(w, f.zero()), c)
                                del self.rules[u]
                                if self.add_rule(diff):
                                    changed = True
                                break
                        else:
                            continue

    def is_irreducible(self, word) -> bool:
        return self._reduce_once(word) is None


def build_algebra(pres: QuiverPresentation,
                  length_cap: int = DEFAULT_LENGTH_CAP,
                  name: str = "") -> Algebra:
    """Compute the irreducible-path basis and structure constants.

    Raises AlgebraError when the relations do not admit a finite confluent
    reduction system within the cap, or when irreducible paths reach the
    cap (finiteness cannot be certified).
    """
    f = pres.field
    v_index = {v: i for i, v in enumerate(pres.vertices)}
    arrow_names = [a[0] for a in pres.arrows]
    a_index = {a: i for i, a in enumerate(arrow_names)}
    arrow_src = [v_index[a[1]] for a in pres.arrows]
    arrow_tgt = [v_index[a[2]] for a in pres.arrows]

    def path_endpoints(word):
        if not all(arrow_tgt[word[i]] == arrow_src[word[i + 1]]
                   for i in range(len(word) - 1)):
            raise AlgebraError(f"path not composable: {word}")
        return arrow_src[word[0]], arrow_tgt[word[-1]]

    rewriter = _Rewriter(f, arrow_src, arrow_tgt, length_cap)
    for rel in pres.relations:
        combo = {}
        endpoints = None
        for coeff, path in rel:
            word = tuple(a_index[a] for a in path)
            if len(word) < 2:
                raise AlgebraError("relation term of length < 2")
            ends = path_endpoints(word)
            if endpoints is None:
                endpoints = ends
            elif ends != endpoints:
                raise AlgebraError("relation terms are not parallel")
            c = f.scalar(coeff)
            combo[word] = f.add(combo.get(word, f.zero()), c)
        rewriter.add_rule(combo)
    rewriter.complete()

    # enumerate irreducible words by BFS over arrow extensions; prefixes of
    # irreducible words are irreducible, so extending level by level is safe
    basis_words = [((), v, v) for v in range(len(pres.vertices))]
    level = [((), v) for v in range(len(pres.vertices))]
    while level:
        nxt = []
        for word, endv in level:
            for ai in range(len(pres.arrows)):
                if arrow_src[ai] != endv:
                    continue
                new = word + (ai,)
                if rewriter.is_irreducible(new):
                    if len(new) >= length_cap:
                        raise AlgebraError(
                            f"irreducible path of length {length_cap} found; "
                            "cannot certify finite dimension within the cap")
                    basis_words.append(
                        (new, arrow_src[new[0]], arrow_tgt[new[-1]]))
                    nxt.append((new, arrow_tgt[new[-1]]))
        level = nxt

    basis_words.sort(key=lambda t: (_deglex_key(t[0]), t[1]))
    word_to_index = {}
    names, src, tgt = [], [], []
    for i, (word, s, t) in enumerate(basis_words):
        word_to_index[(word, s)] = i
        names.append(pres.vertices[s] if not word
                     else ".".join(arrow_names[a] for a in word))
        src.append(s)
        tgt.append(t)

    mult = {}
    for i, (wi, si, ti) in enumerate(basis_words):
        for j, (wj, sj, tj) in enumerate(basis_words):
            if si != tj:
                continue  # b_i * b_j needs src(b_i) == tgt(b_j)
            concat = wj + wi
            combo = rewriter.normal_form({concat: f.one()})
            entries = []
            for w, c in sorted(combo.items(), key=lambda t: _deglex_key(t[0])):
                s = sj if not w else arrow_src[w[0]]
                entries.append((word_to_index[(w, s)], c))
            if entries:
                mult[(i, j)] = tuple(entries)

    n_v = len(pres.vertices)
    idempotents = list(range(n_v))
    unit = [f.one()] * n_v + [f.zero()] * (len(basis_words) - n_v)
    radical_indices = list(range(n_v, len(basis_words)))
    arrows_idx = [word_to_index[((ai,), arrow_src[ai])]
                  for ai in range(len(pres.arrows))]
    generators = idempotents + arrows_idx
    gen_words = {}
    for i, (word, s, t) in enumerate(basis_words):
        if not word:
            gen_words[i] = (i,)
        else:
            gen_words[i] = tuple(word_to_index[((a,), arrow_src[a])]
                                 for a in word)

    alg = Algebra(f, names, mult, unit, idempotents,
                  radical_indices=radical_indices, src=src, tgt=tgt,
                  generators=generators, gen_words=gen_words,
                  name=name or "quiver algebra", check=True)
    alg.presentation = pres
    return alg


# ---------------------------------------------------------------------------
# duality and derived-invariant data
# ---------------------------------------------------------------------------


@dataclass
class DualBimodule:
    """D(A) = Hom_k(A, k) on the dual basis, as an A-bimodule.

    left[i] is the matrix of f -> b_i . f  (i.e. (b_i.f)(y) = f(y * b_i)),
    right[i] of f -> f . b_i (i.e. (f.b_i)(y) = f(b_i * y)), both acting on
    dual-basis coefficient columns.
    """

    dim: int
    left: list
    right: list


def dual_bimodule(a: Algebra) -> DualBimodule:
    f = a.field
    left, right = [], []
    for i in range(a.dim):
        li = f.zeros(a.dim, a.dim)
        ri = f.zeros(a.dim, a.dim)
        for m in range(a.dim):
            for k, c in a.mult.get((m, i), ()):  # b_m * b_i
                li[m, k] = f.add(li[m, k], c)
            for k, c in a.mult.get((i, m), ()):  # b_i * b_m
                ri[m, k] = f.add(ri[m, k], c)
        left.append(li)
        right.append(ri)
    return DualBimodule(a.dim, left, right)


def cartan_matrix(a: Algebra) -> np.ndarray:
    """Integer matrix with C[i][j] = dim e_i A e_j."""
    n = a.n_vertices
    c = np.zeros((n, n), dtype=np.int64)
    if a.is_path_like():
        for b in range(a.dim):
            c[a.tgt[b], a.src[b]] += 1
        return c
    f = a.field
    for i in range(n):
        li = a.left_mult(a.idempotents[i])
        for j in range(n):
            rj = a.right_mult(a.idempotents[j])
            span = [f.matmul(li, f.matmul(rj, a.elem(b))) for b in range(a.dim)]
            c[i, j] = rref(ExactMatrix.from_rows(f, span)).rank
    return c


def cartan_coxeter(a: Algebra):
    """(Cartan matrix, Coxeter polynomial coefficients ascending).

    The Coxeter polynomial is the characteristic polynomial of -C^{-T} C;
    raises CoxeterUndefinedError unless C is invertible over the integers.
    """
    from fractions import Fraction

    c = cartan_matrix(a)
    n = c.shape[0]
    qq = Field(0)
    cm = ExactMatrix.from_rows(qq, [[Fraction(int(x)) for x in row] for row in c])
    res = rref(cm)
    if res.rank < n:
        raise CoxeterUndefinedError("Cartan matrix is singular")
    det = _det_fraction(c)
    if det not in (1, -1):
        raise CoxeterUndefinedError(
            f"Cartan matrix has determinant {det}, not a unit in Z")
    from .linalg import inverse
    cinv_t = inverse(cm).transpose()
    m = (cinv_t @ cm).scale(-1)
    coeffs = char_polynomial(qq, m.data)
    out = []
    for x in coeffs:
        fr = Fraction(x)
        if fr.denominator != 1:
            raise CoxeterUndefinedError("non-integral Coxeter polynomial")
        out.append(int(fr))
    return c, out


def _det_fraction(int_matrix: np.ndarray):
    from fractions import Fraction

    n = int_matrix.shape[0]
    a = [[Fraction(int(x)) for x in row] for row in int_matrix]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def poly_to_str(coeffs, var="t") -> str:
    """Human form of an integer polynomial given ascending coefficients."""
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        if d == 0:
            terms.append(f"{c}")
        else:
            base = var if d == 1 else f"{var}^{d}"
            if c == 1:
                terms.append(base)
            elif c == -1:
                terms.append(f"-{base}")
            else:
                terms.append(f"{c}{base}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out
