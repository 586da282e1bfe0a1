"""Bounded complexes of indecomposable projectives.

A complex stores, per position, a tuple of vertex indices (the slots: one
entry per indecomposable projective summand) and, between consecutive
positions, a block matrix whose (r, c) entry is an algebra element of
e_{v_r} A e_{v_c} = Hom(P_{v_r}, P_{v_c}), acting by right multiplication.
Differentials are cohomological: d_n goes from position n to n+1, and
composing "apply f then g" corresponds to the block product f * g.

On top of that representation: minimality (radical-valued differentials),
the minimal/contractible decomposition by unit-entry elimination, the
ideal of null-homotopic endomorphisms with its nilpotency exponent,
Krull-Schmidt decomposition, brutal truncation, minimal resolutions, the
strong-global-dimension search and the indecomposable census up to shift.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import Algebra
from .field import Field
from .idempotents import EndRing, find_splitting_idempotent
from .linalg import (ExactMatrix, inverse, kernel_basis, row_space_basis,
                     rref, solve, stack_rows)
from .modules import (Module, ModuleError, _coords_in_rows, gldim,
                      projective_cover, projective_module, projective_sum,
                      simple_module, submodule, syzygy)


class ComplexError(ValueError):
    pass


class BudgetError(RuntimeError):
    def __init__(self, count):
        super().__init__(f"enumeration budget exceeded: {count} candidates")
        self.count = count


CENSUS_BUDGET = 10 ** 7


# ---------------------------------------------------------------------------
# the complex type
# ---------------------------------------------------------------------------


class ProjComplex:
    """Bounded complex of projectives over a path-like algebra.

    slots[i]: vertex tuple at position start+i (may be empty inside the
    support); diffs[i]: block entry array of shape
    (len(slots[i]), len(slots[i+1]), algebra.dim).
    """

    def __init__(self, algebra: Algebra, start: int, slots, diffs,
                 check: bool = True):
        self.algebra = algebra
        self.field: Field = algebra.field
        self.start = start
        self.slots = [tuple(s) for s in slots]
        self.diffs = list(diffs)
        self._trim()
        if check:
            self._check()

    def _trim(self):
        while self.slots and not self.slots[0]:
            self.slots.pop(0)
            if self.diffs:
                self.diffs.pop(0)
            self.start += 1
        while self.slots and not self.slots[-1]:
            self.slots.pop()
            if self.diffs:
                self.diffs.pop()

    # ---- basics ----

    @property
    def n_positions(self) -> int:
        return len(self.slots)

    def positions(self):
        return range(self.start, self.start + len(self.slots))

    @property
    def width(self) -> int:
        return sum(1 for s in self.slots if s)

    def is_zero(self) -> bool:
        return not self.slots

    def term_multiplicities(self, i: int):
        out = [0] * self.algebra.n_vertices
        for v in self.slots[i]:
            out[v] += 1
        return out

    def total_space_dims(self):
        pdim = _proj_dims(self.algebra)
        return [sum(pdim[v] for v in s) for s in self.slots]

    def _check(self):
        a = self.algebra
        if not a.is_path_like():
            raise ComplexError("complexes need a path-like algebra")
        f = self.field
        if len(self.diffs) != max(0, len(self.slots) - 1):
            raise ComplexError("one differential per adjacent pair")
        for i, d in enumerate(self.diffs):
            r, c = len(self.slots[i]), len(self.slots[i + 1])
            if np.shape(d) != (r, c, a.dim):
                raise ComplexError(f"differential {i} has wrong shape")
            for ri in range(r):
                for ci in range(c):
                    u = d[ri, ci]
                    for b in range(a.dim):
                        if u[b] != f.zero() and not (
                                a.tgt[b] == self.slots[i][ri]
                                and a.src[b] == self.slots[i + 1][ci]):
                            raise ComplexError(
                                f"entry ({i},{ri},{ci}) leaves its corner")
        for i in range(len(self.diffs) - 1):
            comp = block_mul(a, self.diffs[i], self.diffs[i + 1])
            if not f.is_zero(comp):
                raise ComplexError(f"d o d != 0 at position {self.start + i}")

    def shift_normalized(self) -> "ProjComplex":
        """Translate the support to start at position 0."""
        return ProjComplex(self.algebra, 0, self.slots, self.diffs,
                           check=False)

    def canonical_bytes(self) -> bytes:
        parts = [repr((self.start, self.slots)).encode()]
        for d in self.diffs:
            parts.append(repr(np.asarray(d).tolist()).encode())
        return b"|".join(parts)

    def copy(self) -> "ProjComplex":
        return ProjComplex(self.algebra, self.start, list(self.slots),
                           [np.array(d, dtype=self.field.dtype, copy=True)
                            for d in self.diffs], check=False)

    def __repr__(self):
        terms = {p: self.term_multiplicities(i)
                 for i, p in enumerate(self.positions())}
        return f"ProjComplex(start={self.start}, terms={terms})"


def zero_block(algebra: Algebra, rows: int, cols: int) -> np.ndarray:
    return algebra.field.zeros(rows, cols, algebra.dim)


def block_mul(algebra: Algebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Block product with entries multiplied in the algebra."""
    f = algebra.field
    r, mid, _ = np.shape(x)
    mid2, c, _ = np.shape(y)
    out = zero_block(algebra, r, c)
    for ri in range(r):
        for ci in range(c):
            acc = out[ri, ci]
            for m in range(mid):
                xe, ye = x[ri, m], y[m, ci]
                if f.is_zero(xe) or f.is_zero(ye):
                    continue
                acc = f.normalize(acc + algebra.mul(xe, ye))
            out[ri, ci] = acc
    return out


def stalk_complex(algebra: Algebra, v: int, position: int = 0) -> ProjComplex:
    return ProjComplex(algebra, position, [(v,)], [], check=False)


def _proj_dims(algebra: Algebra):
    dims = getattr(algebra, "_proj_dims_cache", None)
    if dims is None:
        dims = [len([b for b in range(algebra.dim) if algebra.src[b] == v])
                for v in range(algebra.n_vertices)]
        algebra._proj_dims_cache = dims
    return dims


def _proj_basis(algebra: Algebra, v: int):
    cache = getattr(algebra, "_proj_basis_cache", None)
    if cache is None:
        cache = {}
        algebra._proj_basis_cache = cache
    got = cache.get(v)
    if got is None:
        got = [b for b in range(algebra.dim) if algebra.src[b] == v]
        cache[v] = got
    return got


def _right_mult_block(algebra: Algebra, v_from: int, v_to: int,
                      u: np.ndarray) -> np.ndarray:
    """Field matrix of x -> x.u as a map P_{v_from} -> P_{v_to}."""
    f = algebra.field
    bf = _proj_basis(algebra, v_from)
    bt = _proj_basis(algebra, v_to)
    pos_t = {b: k for k, b in enumerate(bt)}
    out = f.zeros(len(bt), len(bf))
    for col, b in enumerate(bf):
        prod = algebra.mul(algebra.elem(b), u)
        for k, val in enumerate(prod):
            if val != f.zero():
                row = pos_t.get(k)
                if row is None:
                    if val != f.zero():
                        raise ComplexError("right multiplication left P_v")
                else:
                    out[row, col] = val
    return out


def field_matrix(cx: ProjComplex, i: int) -> np.ndarray:
    """The differential at slot index i as a plain field matrix
    (columns: source coordinates, rows: target coordinates)."""
    a = cx.algebra
    f = cx.field
    pdim = _proj_dims(a)
    rows = sum(pdim[v] for v in cx.slots[i + 1])
    cols = sum(pdim[v] for v in cx.slots[i])
    out = f.zeros(rows, cols)
    d = cx.diffs[i]
    roff = np.cumsum([0] + [pdim[v] for v in cx.slots[i + 1]])
    coff = np.cumsum([0] + [pdim[v] for v in cx.slots[i]])
    for r, vr in enumerate(cx.slots[i]):
        for c, vc in enumerate(cx.slots[i + 1]):
            u = d[r, c]
            if f.is_zero(u):
                continue
            blk = _right_mult_block(a, vr, vc, u)
            out[roff[c]:roff[c + 1], coff[r]:coff[r + 1]] = blk
    return out


def element_from_proj_coords(algebra: Algebra, v: int, coords) -> np.ndarray:
    """Algebra element from coordinates in the P_v basis."""
    f = algebra.field
    out = f.zeros(algebra.dim)
    for k, b in enumerate(_proj_basis(algebra, v)):
        if coords[k] != f.zero():
            out[b] = coords[k]
    return out


def is_minimal(cx: ProjComplex) -> bool:
    """True when every differential entry lies in the radical."""
    a = cx.algebra
    for d in cx.diffs:
        r, c, _ = np.shape(d)
        for ri in range(r):
            for ci in range(c):
                u = d[ri, ci]
                if not a.field.is_zero(u) and not a.radical_contains(u):
                    return False
    return True


# ---------------------------------------------------------------------------
# chain maps
# ---------------------------------------------------------------------------


def _corner_basis(algebra: Algebra, t: int, s: int):
    return algebra.corner_indices(t, s)


def chain_hom_space(cx: ProjComplex, cy: ProjComplex) -> list:
    """Basis of chain maps cx -> cy, each a dict position -> block array.

    Positions are absolute; maps vanish outside the overlap.
    """
    a = cx.algebra
    f = cx.field
    # unknown layout
    layout = []  # (position, r, c, corner_list, offset)
    offset = 0
    pos_range = range(min(cx.start, cy.start),
                      max(cx.start + cx.n_positions,
                          cy.start + cy.n_positions))
    x_slots = {p: cx.slots[p - cx.start] if 0 <= p - cx.start < cx.n_positions
               else () for p in pos_range}
    y_slots = {p: cy.slots[p - cy.start] if 0 <= p - cy.start < cy.n_positions
               else () for p in pos_range}
    index = {}
    for p in pos_range:
        for r, vr in enumerate(x_slots[p]):
            for c, vc in enumerate(y_slots[p]):
                corner = _corner_basis(a, vr, vc)
                if corner:
                    index[(p, r, c)] = (offset, corner)
                    offset += len(corner)
    unknowns = offset
    if unknowns == 0:
        return []
    rows = []

    def add_equation(coeff_rows):
        rows.extend(coeff_rows)

    for p in pos_range:
        if p + 1 not in x_slots and p + 1 not in y_slots:
            continue
        xs, ys = x_slots[p], y_slots.get(p + 1, ())
        if not xs or not ys:
            continue
        dx = (cx.diffs[p - cx.start]
              if 0 <= p - cx.start < len(cx.diffs) else None)
        dy = (cy.diffs[p - cy.start]
              if 0 <= p - cy.start < len(cy.diffs) else None)
        for r, vr in enumerate(xs):
            for t, vt in enumerate(ys):
                # equation entry in e_{vr} A e_{vt}
                eq = {}
                # d_x then phi_{p+1}: sum_c dx[r,c] * phi[(p+1,c,t)]
                if dx is not None:
                    for c, vc in enumerate(x_slots[p + 1]):
                        key = index.get((p + 1, c, t))
                        if key is None or f.is_zero(dx[r, c]):
                            continue
                        off, corner = key
                        for k, b in enumerate(corner):
                            prod = a.mul(dx[r, c], a.elem(b))
                            _accum(eq, off + k, prod, f, 1)
                # phi_p then d_y: sum_s phi[(p,r,s)] * dy[s,t]
                if dy is not None:
                    for s, vs in enumerate(y_slots[p]):
                        key = index.get((p, r, s))
                        if key is None or f.is_zero(dy[s, t]):
                            continue
                        off, corner = key
                        for k, b in enumerate(corner):
                            prod = a.mul(a.elem(b), dy[s, t])
                            _accum(eq, off + k, prod, f, -1)
                if not eq:
                    continue
                target_corner = _corner_basis(a, vr, vt)
                pos_of = {b: k for k, b in enumerate(target_corner)}
                block = f.zeros(len(target_corner), unknowns)
                ok = True
                for col, vec in eq.items():
                    for bidx, val in enumerate(vec):
                        if val == f.zero():
                            continue
                        k = pos_of.get(bidx)
                        if k is None:
                            raise ComplexError("composite left its corner")

                        block[k, col] = f.add(block[k, col], val)
                if not f.is_zero(block):
                    add_equation([ExactMatrix(f, block)])
    system = (stack_rows(f, rows) if rows
              else ExactMatrix(f, f.zeros(0, unknowns)))
    if system.cols != unknowns:
        system = ExactMatrix(f, f.zeros(0, unknowns))
    kers = kernel_basis(system)
    out = []
    for kvec in kers:
        cm = {}
        for (p, r, c), (off, corner) in index.items():
            coeffs = kvec.data[off:off + len(corner), 0]
            if all(x == f.zero() for x in coeffs):
                continue
            blk = cm.get(p)
            if blk is None:
                blk = zero_block(a, len(x_slots[p]), len(y_slots[p]))
                cm[p] = blk
            vec = f.zeros(a.dim)
            for k, b in enumerate(corner):
                vec[b] = coeffs[k]
            blk[r, c] = f.normalize(blk[r, c] + vec)
        out.append(cm)
    return out


def _accum(eq, col, vec, f, sign):
    cur = eq.get(col)
    add = vec if sign > 0 else f.normalize(-vec)
    if cur is None:
        eq[col] = add.copy() if sign > 0 else add
    else:
        eq[col] = f.normalize(cur + add)


def chain_map_field_matrices(cx: ProjComplex, cy: ProjComplex, cm: dict):
    """Per-position field matrices (target coords x source coords)."""
    a = cx.algebra
    f = cx.field
    pdim = _proj_dims(a)
    out = {}
    for p, blk in cm.items():
        xs = cx.slots[p - cx.start]
        ys = cy.slots[p - cy.start]
        rows = sum(pdim[v] for v in ys)
        cols = sum(pdim[v] for v in xs)
        m = f.zeros(rows, cols)
        roff = np.cumsum([0] + [pdim[v] for v in ys])
        coff = np.cumsum([0] + [pdim[v] for v in xs])
        for r, vr in enumerate(xs):
            for c, vc in enumerate(ys):
                u = blk[r, c]
                if f.is_zero(u):
                    continue
                m[roff[c]:roff[c + 1], coff[r]:coff[r + 1]] = \
                    _right_mult_block(a, vr, vc, u)
        out[p] = m
    return out


def chain_end_ring(cx: ProjComplex) -> EndRing:
    """End ring as block-diagonal field matrices on the total space."""
    f = cx.field
    homs = chain_hom_space(cx, cx)
    dims = cx.total_space_dims()
    total = sum(dims)
    offs = np.cumsum([0] + dims)
    mats = []
    ident = f.eye(total)
    for cm in homs:
        fm = chain_map_field_matrices(cx, cx, cm)
        big = f.zeros(total, total)
        for i, p in enumerate(cx.positions()):
            m = fm.get(p)
            if m is not None:
                big[offs[i]:offs[i + 1], offs[i]:offs[i + 1]] = m
        mats.append(big)
    ring = EndRing(f, mats)
    if ring.coords(ident) is None:
        # the identity chain map is always in the span; keep the basis honest
        raise ComplexError("chain end ring does not contain the identity")
    return ring


def complex_isomorphic(cx: ProjComplex, cy: ProjComplex, seed: int = 0):
    """A chain isomorphism (as a dict of blocks), or None."""
    if cx.start != cy.start or \
            [sorted(s) for s in cx.slots] != [sorted(s) for s in cy.slots]:
        return None
    if cx.is_zero():
        return {}
    f = cx.field
    homs = chain_hom_space(cx, cy)
    if not homs:
        return None
    rng = random.Random(seed)
    d = len(homs)
    pdim = _proj_dims(cx.algebra)

    def attempt(coeffs):
        cm = {}
        for coeff, h in zip(coeffs, homs):
            if coeff == f.zero():
                continue
            for p, blk in h.items():
                cur = cm.get(p)
                if cur is None:
                    cm[p] = f.normalize(coeff * blk)
                else:
                    cm[p] = f.normalize(cur + coeff * blk)
        fm = chain_map_field_matrices(cx, cy, cm)
        for i, p in enumerate(cx.positions()):
            n = sum(pdim[v] for v in cx.slots[i])
            if n == 0:
                continue
            m = fm.get(p)
            if m is None or rref(ExactMatrix(f, m)).rank != n:
                return None
        return cm

    from .modules import ISO_EXHAUSTIVE_LIMIT, ISO_RANDOM_ATTEMPTS

    for i in range(ISO_RANDOM_ATTEMPTS):
        if f.p == 0:
            coeffs = [f.scalar(rng.randint(-3, 3)) for _ in range(d)]
        else:
            coeffs = [f.scalar(rng.randrange(f.p)) for _ in range(d)]
        if i == 0:
            coeffs = [f.one()] * d
        got = attempt(coeffs)
        if got is not None:
            return got
    if f.p != 0 and f.p ** d <= ISO_EXHAUSTIVE_LIMIT:
        for combo in itertools.product(range(f.p), repeat=d):
            got = attempt([f.scalar(c) for c in combo])
            if got is not None:
                return got
    return None


# ---------------------------------------------------------------------------
# minimal / contractible decomposition
# ---------------------------------------------------------------------------


@dataclass
class MinimalDecomposition:
    """Input ~ minimal + (sum of two-term identity complexes), with
    mutually inverse chain witnesses.

    to_maps / from_maps are per-position field matrices between the input
    and the stacked coordinates of minimal followed by the contractible
    pieces (in split order).
    """

    source: ProjComplex
    minimal: ProjComplex
    contractible: list  # ProjComplex pieces P ->(id) P
    to_maps: dict
    from_maps: dict

    def verify(self) -> bool:
        f = self.source.field
        dims = {p: d for p, d in zip(self.source.positions(),
                                     self.source.total_space_dims())}
        for p, dim in dims.items():
            to = self.to_maps.get(p)
            frm = self.from_maps.get(p)
            if dim == 0:
                continue
            if to is None or frm is None:
                return False
            if not np.array_equal(f.matmul(frm, to), f.eye(dim)):
                return False
            if not np.array_equal(f.matmul(to, frm), f.eye(to.shape[0])):
                return False
        return True


def _unit_inverse(algebra: Algebra, v: int, u: np.ndarray):
    """Inverse of a unit of the corner ring e_v A e_v, or None."""
    f = algebra.field
    corner = algebra.corner_indices(v, v)
    e = algebra.idempotents[v]
    if u[e] == f.zero():
        return None
    # solve u * x = e_v inside the corner
    cols = []
    for b in corner:
        cols.append([algebra.mul(u, algebra.elem(b))[k] for k in corner])
    a = ExactMatrix.from_rows(f, cols).transpose()
    rhs = [f.one() if k == e else f.zero() for k in corner]
    x = solve(a, rhs)
    if x is None:
        return None
    out = f.zeros(algebra.dim)
    for coef, b in zip(x.data[:, 0], corner):
        out[b] = coef
    return out


def minimal_decomposition(cx: ProjComplex) -> MinimalDecomposition:
    """Split off two-term identity complexes by unit-entry elimination.

    Scans blocks in deterministic (position, row, column) order; each unit
    entry is normalized to the idempotent and its slot pair removed.
    """
    a = cx.algebra
    f = cx.field
    work = cx.copy()
    pdim = _proj_dims(a)
    # accumulated base changes, original coords -> current coords
    acc = {}
    accinv = {}
    for i, p in enumerate(cx.positions()):
        n = sum(pdim[v] for v in cx.slots[i])
        acc[p] = f.eye(n)
        accinv[p] = f.eye(n)
    pieces = []
    piece_maps = []  # (piece, {pos: select @ acc}, {pos: accinv @ include})

    def apply_base_change(pos_index, g_block, g_inv_block):
        # D[pos-1] <- D[pos-1] * G ;  D[pos] <- G^{-1} * D[pos]
        p_abs = work.start + pos_index
        if pos_index - 1 >= 0 and pos_index - 1 < len(work.diffs):
            work.diffs[pos_index - 1] = block_mul(
                a, work.diffs[pos_index - 1], g_block)
        if pos_index < len(work.diffs):
            work.diffs[pos_index] = block_mul(
                a, g_inv_block, work.diffs[pos_index])
        fg = _block_field_matrix(a, work.slots[pos_index],
                                 work.slots[pos_index], g_block)
        fginv = _block_field_matrix(a, work.slots[pos_index],
                                    work.slots[pos_index], g_inv_block)
        acc[p_abs] = f.matmul(fg, acc[p_abs])
        accinv[p_abs] = f.matmul(accinv[p_abs], fginv)

    while True:
        hit = None
        for i in range(len(work.diffs)):
            d = work.diffs[i]
            for r in range(len(work.slots[i])):
                for c in range(len(work.slots[i + 1])):
                    vr, vc = work.slots[i][r], work.slots[i + 1][c]
                    if vr != vc:
                        continue
                    uinv = _unit_inverse(a, vr, d[r, c])
                    if uinv is not None:
                        hit = (i, r, c, uinv)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        i, r, c, uinv = hit
        v = work.slots[i][r]
        d = work.diffs[i]
        e_v = a.elem(a.idempotents[v])
        k_t = len(work.slots[i + 1])
        k_s = len(work.slots[i])
        # clear row r (base change at position i+1): H = I - E
        h = _identity_block(a, work.slots[i + 1])
        hinv = _identity_block(a, work.slots[i + 1])
        for c2 in range(k_t):
            if c2 != c and not f.is_zero(d[r, c2]):
                val = a.mul(uinv, d[r, c2])
                h[c, c2] = f.normalize(h[c, c2] - val)
                hinv[c, c2] = f.normalize(hinv[c, c2] + val)
        apply_base_change(i + 1, h, hinv)
        d = work.diffs[i]
        # clear column c (base change at position i): G = I + E'
        g = _identity_block(a, work.slots[i])
        ginv = _identity_block(a, work.slots[i])
        for r2 in range(k_s):
            if r2 != r and not f.is_zero(d[r2, c]):
                val = a.mul(d[r2, c], uinv)
                g[r2, r] = f.normalize(g[r2, r] + val)
                ginv[r2, r] = f.normalize(ginv[r2, r] - val)
        apply_base_change(i, g, ginv)
        d = work.diffs[i]
        # normalize the pivot entry to e_v (base change at position i+1)
        gn = _identity_block(a, work.slots[i + 1])
        gninv = _identity_block(a, work.slots[i + 1])
        gn[c, c] = uinv
        gninv[c, c] = d[r, c].copy()
        apply_base_change(i + 1, gn, gninv)
        d = work.diffs[i]
        assert np.array_equal(d[r, c], e_v)
        # adjacent differentials into r / out of c must already vanish
        if i - 1 >= 0:
            for r0 in range(len(work.slots[i - 1])):
                if not f.is_zero(work.diffs[i - 1][r0, r]):
                    raise ComplexError("elimination left an entry into the "
                                       "split slot")
        if i + 1 < len(work.diffs):
            for t0 in range(len(work.slots[i + 2])):
                if not f.is_zero(work.diffs[i + 1][c, t0]):
                    raise ComplexError("elimination left an entry out of the "
                                       "split slot")
        # record the contractible piece with its witness maps
        p_lo, p_hi = work.start + i, work.start + i + 1
        piece = ProjComplex(a, p_lo, [(v,), (v,)],
                            [_single_entry_block(a, v, e_v)], check=False)
        sel_lo = _slot_selector(a, work.slots[i], [r])
        sel_hi = _slot_selector(a, work.slots[i + 1], [c])
        keep_lo = _slot_selector(a, work.slots[i],
                                 [x for x in range(k_s) if x != r])
        keep_hi = _slot_selector(a, work.slots[i + 1],
                                 [x for x in range(k_t) if x != c])
        piece_maps.append((piece,
                           {p_lo: f.matmul(sel_lo, acc[p_lo]),
                            p_hi: f.matmul(sel_hi, acc[p_hi])},
                           {p_lo: f.matmul(accinv[p_lo], sel_lo.T),
                            p_hi: f.matmul(accinv[p_hi], sel_hi.T)}))
        pieces.append(piece)
        # shrink the work complex and the accumulators
        acc[p_lo] = f.matmul(keep_lo, acc[p_lo])
        accinv[p_lo] = f.matmul(accinv[p_lo], keep_lo.T)
        acc[p_hi] = f.matmul(keep_hi, acc[p_hi])
        accinv[p_hi] = f.matmul(accinv[p_hi], keep_hi.T)
        work.slots[i] = tuple(x for j, x in enumerate(work.slots[i]) if j != r)
        work.slots[i + 1] = tuple(x for j, x in enumerate(work.slots[i + 1])
                                  if j != c)
        work.diffs[i] = np.delete(np.delete(work.diffs[i], r, axis=0), c,
                                  axis=1)
        if i - 1 >= 0:
            work.diffs[i - 1] = np.delete(work.diffs[i - 1], r, axis=1)
        if i + 1 < len(work.diffs):
            work.diffs[i + 1] = np.delete(work.diffs[i + 1], c, axis=0)
    minimal = ProjComplex(a, work.start, work.slots, work.diffs, check=False)
    # assemble stacked witnesses: minimal part first, then pieces
    to_maps, from_maps = {}, {}
    for idx, p in enumerate(cx.positions()):
        n_orig = sum(pdim[v] for v in cx.slots[idx])
        rows = [acc[p]] if acc[p].shape[0] else []
        cols = [accinv[p]] if accinv[p].shape[0] else []
        for piece, pmap, imap in piece_maps:
            if p in pmap:
                rows.append(pmap[p])
                cols.append(imap[p])
        if rows:
            to_maps[p] = np.concatenate(rows, axis=0)
            from_maps[p] = np.concatenate(cols, axis=1)
        else:
            to_maps[p] = f.zeros(0, n_orig)
            from_maps[p] = f.zeros(n_orig, 0)
    out = MinimalDecomposition(cx, minimal, pieces, to_maps, from_maps)
    if not out.verify():
        raise ComplexError("minimal decomposition witnesses failed")
    return out


def _identity_block(algebra: Algebra, slots) -> np.ndarray:
    f = algebra.field
    k = len(slots)
    out = zero_block(algebra, k, k)
    for i, v in enumerate(slots):
        out[i, i] = algebra.elem(algebra.idempotents[v])
    return out


def _single_entry_block(algebra: Algebra, v: int, u: np.ndarray) -> np.ndarray:
    out = zero_block(algebra, 1, 1)
    out[0, 0] = u.copy()
    return out


def _block_field_matrix(algebra: Algebra, slots_from, slots_to,
                        block: np.ndarray) -> np.ndarray:
    f = algebra.field
    pdim = _proj_dims(algebra)
    rows = sum(pdim[v] for v in slots_to)
    cols = sum(pdim[v] for v in slots_from)
    out = f.zeros(rows, cols)
    roff = np.cumsum([0] + [pdim[v] for v in slots_to])
    coff = np.cumsum([0] + [pdim[v] for v in slots_from])
    for r, vr in enumerate(slots_from):
        for c, vc in enumerate(slots_to):
            u = block[r, c]
            if f.is_zero(u):
                continue
            out[roff[c]:roff[c + 1], coff[r]:coff[r + 1]] = \
                _right_mult_block(algebra, vr, vc, u)
    return out


def _slot_selector(algebra: Algebra, slots, keep_rows) -> np.ndarray:
    """Coordinate selector onto the chosen slot rows."""
    f = algebra.field
    pdim = _proj_dims(algebra)
    offs = np.cumsum([0] + [pdim[v] for v in slots])
    total = offs[-1]
    rows = sum(pdim[slots[r]] for r in keep_rows)
    out = f.zeros(rows, total)
    at = 0
    for r in keep_rows:
        w = pdim[slots[r]]
        for k in range(w):
            out[at + k, offs[r] + k] = f.one()
        at += w
    return out


# ---------------------------------------------------------------------------
# null-homotopic endomorphisms
# ---------------------------------------------------------------------------


@dataclass
class HtpIdeal:
    """nilpotency_exponent is the least k with Htp^k = 0, or None when the
    ideal is not nilpotent (possible only for non-minimal complexes)."""

    basis: list  # chain maps (dict position -> block)
    nilpotency_exponent: int | None


def htp_ideal(cx: ProjComplex) -> HtpIdeal:
    """Basis of null-homotopic chain endomorphisms and the least k with
    Htp^k = 0 (k = 1 when the ideal is zero)."""
    a = cx.algebra
    f = cx.field
    if cx.is_zero():
        return HtpIdeal([], 1)
    # homotopies: h_p : position p -> p-1 blocks
    h_layout = []
    offset = 0
    for i in range(1, cx.n_positions):
        for r, vr in enumerate(cx.slots[i]):
            for c, vc in enumerate(cx.slots[i - 1]):
                corner = _corner_basis(a, vr, vc)
                if corner:
                    h_layout.append((i, r, c, corner, offset))
                    offset += len(corner)
    phis = []
    for (i, r, c, corner, off) in list(h_layout):
        for k, b in enumerate(corner):
            h = {}
            blk = zero_block(a, len(cx.slots[i]), len(cx.slots[i - 1]))
            blk[r, c] = a.elem(b)
            h[i] = blk
            phi = _homotopy_to_endo(cx, h)
            phis.append(phi)
    flat = [_flatten_chain_endo(cx, phi) for phi in phis]
    flat = [v for v in flat if not f.is_zero(v)]
    if not flat:
        return HtpIdeal([], 1)
    basis_rows = row_space_basis(ExactMatrix.from_rows(f, flat))
    basis = [_unflatten_chain_endo(cx, basis_rows.data[r])
             for r in range(basis_rows.rows)]
    # nilpotency exponent by span powers under chain composition
    power = basis
    exponent = 1
    prev_rows = None
    while power:
        exponent += 1
        prods = []
        for x in power:
            for y in basis:
                z = _compose_chain_endos(cx, x, y)
                fv = _flatten_chain_endo(cx, z)
                if not f.is_zero(fv):
                    prods.append(fv)
        if not prods:
            return HtpIdeal(basis, exponent)
        rows = row_space_basis(ExactMatrix.from_rows(f, prods))
        if prev_rows is not None and prev_rows == rows:
            return HtpIdeal(basis, None)  # stabilized nonzero: not nilpotent
        prev_rows = rows
        power = [_unflatten_chain_endo(cx, rows.data[r])
                 for r in range(rows.rows)]
        if exponent > basis_rows.rows + 2:
            return HtpIdeal(basis, None)
    return HtpIdeal(basis, exponent)


def _homotopy_to_endo(cx: ProjComplex, h: dict) -> dict:
    """phi = (h then d) + (d then h), per position."""
    a = cx.algebra
    phi = {}
    for i in range(cx.n_positions):
        k = len(cx.slots[i])
        if k == 0:
            continue
        blk = zero_block(a, k, k)
        hi = h.get(i)
        if hi is not None and i - 1 >= 0 and i - 1 < len(cx.diffs):
            blk = a.field.normalize(blk + block_mul(a, hi, cx.diffs[i - 1]))
        hnext = h.get(i + 1)
        if hnext is not None and i < len(cx.diffs):
            blk = a.field.normalize(blk + block_mul(a, cx.diffs[i], hnext))
        phi[i] = blk
    return phi


def _flatten_chain_endo(cx: ProjComplex, phi: dict) -> np.ndarray:
    f = cx.field
    parts = []
    for i in range(cx.n_positions):
        k = len(cx.slots[i])
        blk = phi.get(i)
        if blk is None:
            blk = zero_block(cx.algebra, k, k)
        parts.append(np.asarray(blk).reshape(k * k * cx.algebra.dim))
    if not parts:
        return f.zeros(0)
    return np.concatenate(parts)


def _unflatten_chain_endo(cx: ProjComplex, flat: np.ndarray) -> dict:
    phi = {}
    at = 0
    for i in range(cx.n_positions):
        k = len(cx.slots[i])
        size = k * k * cx.algebra.dim
        blk = np.array(flat[at:at + size], dtype=cx.field.dtype).reshape(
            k, k, cx.algebra.dim)
        at += size
        phi[i] = blk
    return phi


def _compose_chain_endos(cx: ProjComplex, x: dict, y: dict) -> dict:
    a = cx.algebra
    out = {}
    for i in range(cx.n_positions):
        bx, by = x.get(i), y.get(i)
        if bx is None or by is None:
            continue
        out[i] = block_mul(a, bx, by)
    return out


# ---------------------------------------------------------------------------
# Krull-Schmidt for complexes
# ---------------------------------------------------------------------------


@dataclass
class ComplexDecomposition:
    """Indecomposable complex summands with multiplicities and witnesses.

    instances: (summand index, to_maps, from_maps) per split piece, where
    the maps are per-position field matrices between the input and the
    summand representative's coordinates.
    """

    source: ProjComplex
    summands: list  # [(ProjComplex, multiplicity)]
    instances: list
    certificates: list

    def verify(self) -> bool:
        f = self.source.field
        dims = {p: d for p, d in zip(self.source.positions(),
                                     self.source.total_space_dims())}
        for p, dim in dims.items():
            if dim == 0:
                continue
            tos = [to.get(p) for _, to, _ in self.instances]
            frms = [frm.get(p) for _, _, frm in self.instances]
            tos = [t for t in tos if t is not None and t.shape[0]]
            frms = [g for g in frms if g is not None and g.shape[1]]
            if not tos:
                return False
            stacked_to = np.concatenate(tos, axis=0)
            stacked_frm = np.concatenate(frms, axis=1)
            if not np.array_equal(f.matmul(stacked_frm, stacked_to),
                                  f.eye(dim)):
                return False
            if not np.array_equal(f.matmul(stacked_to, stacked_frm),
                                  f.eye(stacked_to.shape[0])):
                return False
        return True


def _position_term_module(algebra: Algebra, slots):
    return projective_sum(algebra, list(slots))


def _split_complex_by_idempotent(cx: ProjComplex, e_slices: dict):
    """Split cx along a chain idempotent given per-position field matrices.

    Returns two (complex, u_maps, w_maps) triples with u: new -> old and
    w: old -> new per position, w @ u = identity.
    """
    a = cx.algebra
    f = cx.field
    out = []
    for mat_of in (e_slices,
                   {p: f.normalize(f.eye(m.shape[0]) - m)
                    for p, m in e_slices.items()}):
        new_slots = []
        u_maps, w_maps = {}, {}
        gen_layouts = []
        for i, p in enumerate(cx.positions()):
            ps = _position_term_module(a, cx.slots[i])
            e_n = mat_of[p]
            if e_n.shape[0] == 0 or f.is_zero(e_n):
                new_slots.append(())
                u_maps[p] = f.zeros(e_n.shape[0], 0)
                w_maps[p] = f.zeros(0, e_n.shape[0])
                gen_layouts.append(None)
                continue
            sub = submodule(ps.module, [e_n[:, j]
                                        for j in range(e_n.shape[1])])
            if sub.dim == 0:
                new_slots.append(())
                u_maps[p] = f.zeros(e_n.shape[0], 0)
                w_maps[p] = f.zeros(0, e_n.shape[0])
                gen_layouts.append(None)
                continue
            cover, phi = projective_cover(sub)
            if phi.cols != sub.dim:
                raise ComplexError("idempotent image is not projective")
            phi_inv = inverse(phi)
            rho = f.zeros(sub.dim, e_n.shape[0])
            for j in range(e_n.shape[1]):
                coords = _coords_in_rows(sub.ambient_rows, e_n[:, j])
                if coords is None:
                    raise ComplexError("idempotent image not invariant")
                rho[:, j] = coords
            u = f.matmul(sub.embedding.data, phi.data)
            w = f.matmul(phi_inv.data, rho)
            new_slots.append(tuple(cover.summand_vertices))
            u_maps[p] = u
            w_maps[p] = w
            gen_layouts.append(cover)
        new_diffs = []
        for i in range(cx.n_positions - 1):
            p = cx.start + i
            src_slots = new_slots[i]
            tgt_slots = new_slots[i + 1]
            blk = zero_block(a, len(src_slots), len(tgt_slots))
            if src_slots and tgt_slots:
                fmat = field_matrix(cx, i)
                comp = f.matmul(w_maps[p + 1], f.matmul(fmat, u_maps[p]))
                cover = gen_layouts[i]
                tgt_cover = gen_layouts[i + 1]
                pdim = _proj_dims(a)
                toffs = np.cumsum([0] + [pdim[v] for v in tgt_slots])
                for r, vr in enumerate(src_slots):
                    col = comp[:, cover.gen_cols[r]]
                    for c, vc in enumerate(tgt_slots):
                        coords = col[toffs[c]:toffs[c + 1]]
                        elem = element_from_proj_coords(a, vc, coords)
                        blk[r, c] = elem
            new_diffs.append(blk)
        piece = ProjComplex(a, cx.start, new_slots, new_diffs, check=True)
        out.append((piece, u_maps, w_maps))
    return out


def ks_decompose_complex(cx: ProjComplex, seed: int = 0
                         ) -> ComplexDecomposition:
    """Decompose into indecomposables in the category of complexes."""
    f = cx.field
    rng = random.Random(seed)
    pieces = []

    def ident_maps(c):
        out_to, out_frm = {}, {}
        for i, p in enumerate(c.positions()):
            n = sum(_proj_dims(c.algebra)[v] for v in c.slots[i])
            out_to[p] = f.eye(n)
            out_frm[p] = f.eye(n)
        return out_to, out_frm

    t0, f0 = ident_maps(cx)
    stack = [(cx, t0, f0)]
    while stack:
        cur, tmap, fmap = stack.pop()
        if cur.is_zero():
            continue
        homs = chain_hom_space(cur, cur)
        if len(homs) == 1:
            pieces.append((cur, tmap, fmap, None))
            continue
        ring = chain_end_ring(cur)
        idem, cert = find_splitting_idempotent(ring, rng)
        if idem is None:
            pieces.append((cur, tmap, fmap, cert))
            continue
        dims = cur.total_space_dims()
        offs = np.cumsum([0] + dims)
        e_slices = {}
        for i, p in enumerate(cur.positions()):
            e_slices[p] = idem[offs[i]:offs[i + 1], offs[i]:offs[i + 1]]
        for piece, u_maps, w_maps in _split_complex_by_idempotent(
                cur, e_slices):
            if piece.is_zero():
                continue
            new_to, new_frm = {}, {}
            for p in piece.positions():
                new_to[p] = f.matmul(w_maps[p], tmap[p])
                new_frm[p] = f.matmul(fmap[p], u_maps[p])
            stack.append((piece, new_to, new_frm))
    pieces.sort(key=lambda t: (t[0].width, t[0].canonical_bytes()))
    groups = []
    for piece, tmap, fmap, cert in pieces:
        placed = False
        for g in groups:
            iso = complex_isomorphic(piece, g[0], seed=seed)
            if iso is not None:
                fm = chain_map_field_matrices(piece, g[0], iso)
                comp_to, comp_frm = {}, {}
                ok = True
                for p in g[0].positions():
                    m = fm.get(p)
                    i_rel = p - g[0].start
                    n = sum(_proj_dims(piece.algebra)[v]
                            for v in g[0].slots[i_rel])
                    if n == 0:
                        continue
                    if m is None:
                        ok = False
                        break
                    m_inv = inverse(ExactMatrix(f, m)).data
                    comp_to[p] = f.matmul(m, tmap[p])
                    comp_frm[p] = f.matmul(fmap[p], m_inv)
                if ok:
                    g[1].append((comp_to, comp_frm))
                    placed = True
                    break
        if not placed:
            groups.append([piece, [(tmap, fmap)], cert])
    summands = [(g[0], len(g[1])) for g in groups]
    instances = []
    for gi, g in enumerate(groups):
        for to, frm in g[1]:
            instances.append((gi, to, frm))
    certificates = [g[2] for g in groups]
    dec = ComplexDecomposition(cx, summands, instances, certificates)
    if not dec.verify():
        raise ComplexError("complex decomposition witnesses failed")
    return dec


# ---------------------------------------------------------------------------
# truncations and minimal resolutions
# ---------------------------------------------------------------------------


def brutal_truncate(cx: ProjComplex, m: int) -> ProjComplex:
    """Keep positions >= -m (drop everything strictly below)."""
    cut = -m
    if cx.start >= cut:
        return cx.copy()
    k = cut - cx.start
    slots = cx.slots[k:]
    diffs = cx.diffs[k:]
    return ProjComplex(cx.algebra, cut, slots, diffs, check=False)


def minimal_resolution(mod: Module, length: int) -> ProjComplex:
    """... -> P^{-1} -> P^0 ->> mod from iterated projective covers.

    `length` bounds the number of cover steps below position 0; the
    result is shorter when a syzygy vanishes.  All differential entries
    are radical-valued.
    """
    if mod.is_zero():
        raise ComplexError("resolution of the zero module")
    a = mod.algebra
    f = mod.field
    covers = []
    maps = []
    cur = mod
    for step in range(length + 1):
        ps, phi = projective_cover(cur)
        covers.append(ps)
        maps.append((cur, phi))
        kers = kernel_basis(phi)
        if not kers:
            break
        nxt = submodule(ps.module, [k.data[:, 0] for k in kers])
        if nxt.dim == 0:
            break
        if step == length:
            break
        cur = nxt
    n_terms = len(covers)
    slots = [tuple(ps.summand_vertices) for ps in reversed(covers)]
    diffs = []
    pdim = _proj_dims(a)
    for k in range(n_terms - 1, 0, -1):
        # differential: cover_k -> cover_{k-1}
        ps_src = covers[k]
        ps_tgt = covers[k - 1]
        sub_k, phi_k = maps[k]
        # sub_k lives inside cover_{k-1}; phi_k: cover_k ->> sub_k
        comp = f.matmul(sub_k.embedding.data, phi_k.data)
        blk = zero_block(a, len(ps_src.summand_vertices),
                         len(ps_tgt.summand_vertices))
        toffs = np.cumsum([0] + [pdim[v] for v in ps_tgt.summand_vertices])
        for r, vr in enumerate(ps_src.summand_vertices):
            col = comp[:, ps_src.gen_cols[r]]
            for c, vc in enumerate(ps_tgt.summand_vertices):
                elem = element_from_proj_coords(a, vc,
                                                col[toffs[c]:toffs[c + 1]])
                if not f.is_zero(elem) and not a.radical_contains(elem):
                    raise ComplexError("resolution differential not radical")
                blk[r, c] = elem
        diffs.append(blk)
    return ProjComplex(a, -(n_terms - 1), slots, diffs, check=True)


# ---------------------------------------------------------------------------
# strong global dimension
# ---------------------------------------------------------------------------


@dataclass
class StrongGldimResult:
    """Either an exact value up to the width cap, or a lower bound.

    value already includes the floor of 2.  When the global dimension is
    certified infinite, strong global dimension is infinite as well
    (the corollary floor 1 + gl.dim grows without bound) and
    `infinite` is set.
    """

    kind: str  # "exact_up_to" | "lower_bound"
    value: int
    width_cap: int
    mult_cap: int
    witness: ProjComplex | None
    gldim: object
    infinite: bool
    census_count: int | None = None

    def __str__(self):
        base = (f"s.gl.dim {'=' if self.kind == 'exact_up_to' else '>='} "
                f"{self.value} (width cap {self.width_cap})")
        if self.infinite:
            base += "; infinite by the global-dimension floor"
        return base


def strong_gldim_search(algebra: Algebra, width_cap: int, mult_cap: int = 1,
                        seed: int = 0) -> StrongGldimResult:
    """Largest width of a homotopically-minimal indecomposable complex.

    Brutal truncations of minimal resolutions of the simple modules give
    certified-indecomposable witnesses; over a prime field the census
    enumerates everything within the caps, making the answer exact below
    the cap.
    """
    if width_cap < 2:
        raise ComplexError("width cap must be >= 2")
    best = 0
    witness = None
    for v in range(algebra.n_vertices):
        s = simple_module(algebra, v)
        res = minimal_resolution(s, width_cap - 1)
        for m in range(1, res.n_positions):
            tr = brutal_truncate(res, m)
            if tr.width <= best:
                continue
            dec = ks_decompose_complex(tr, seed=seed)
            if len(dec.summands) != 1 or dec.summands[0][1] != 1:
                raise ComplexError(
                    "a brutal truncation of a minimal resolution "
                    "decomposed; this contradicts minimality")
            best = tr.width
            witness = tr
    census_count = None
    exhaustive = False
    if algebra.field.p != 0:
        census = census_indecomposables(algebra, width_cap, mult_cap,
                                        seed=seed)
        census_count = census.count
        exhaustive = True
        for cls in census.classes:
            if cls.width > best:
                best = cls.width
                witness = cls
    g = gldim(algebra, cap=max(8, width_cap + 2))
    infinite = g.kind == "infinite"
    value = max(2, best)
    if exhaustive and value < width_cap:
        kind = "exact_up_to"
    else:
        kind = "lower_bound"
    return StrongGldimResult(kind, value, width_cap, mult_cap, witness, g,
                             infinite, census_count)


# ---------------------------------------------------------------------------
# census of minimal indecomposable complexes up to shift
# ---------------------------------------------------------------------------


@dataclass
class CensusResult:
    classes: list  # shift-normalized minimal indecomposable complexes
    width_cap: int
    mult_cap: int
    candidates: int

    @property
    def count(self) -> int:
        return len(self.classes)

    def widths(self):
        out = {}
        for c in self.classes:
            out[c.width] = out.get(c.width, 0) + 1
        return dict(sorted(out.items()))

    def canonical_keys(self):
        return sorted(c.canonical_bytes() for c in self.classes)


def _rad_corner(algebra: Algebra, v_from: int, v_to: int):
    cache = getattr(algebra, "_rad_corner_cache", None)
    if cache is None:
        cache = {}
        algebra._rad_corner_cache = cache
    got = cache.get((v_from, v_to))
    if got is None:
        rad = (set(algebra.radical_indices)
               if algebra.radical_indices is not None else None)
        got = [b for b in algebra.corner_indices(v_from, v_to)
               if (b in rad if rad is not None
                   else algebra.radical_contains(algebra.elem(b)))]
        cache[(v_from, v_to)] = got
    return got


def _diff_space(algebra: Algebra, slots_from, slots_to):
    """Coefficient layout of radical Hom(P(slots_from), P(slots_to))."""
    entries = []
    for r, vr in enumerate(slots_from):
        for c, vc in enumerate(slots_to):
            for b in _rad_corner(algebra, vr, vc):
                entries.append((r, c, b))
    return entries


def _terms_options(algebra: Algebra, mult_cap: int, allowed_vertices):
    """All nonzero slot tuples from the allowed vertices with per-vertex
    multiplicities bounded by mult_cap, sorted canonically."""
    options = []
    ranges = [range(mult_cap + 1) if v in allowed_vertices else range(1)
              for v in range(algebra.n_vertices)]
    for mults in itertools.product(*ranges):
        if sum(mults) == 0:
            continue
        slots = tuple(v for v in range(algebra.n_vertices)
                      for _ in range(mults[v]))
        options.append(slots)
    return options


def _rows_independent(field, vecs) -> bool:
    if not vecs:
        return True
    mat = ExactMatrix.from_rows(field, vecs)
    return rref(mat).rank == len(vecs)


def _connected(terms, spaces, assignment_per_level, field) -> bool:
    offsets = []
    total = 0
    for slots in terms:
        offsets.append(total)
        total += len(slots)
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = total
    for level, entries in enumerate(spaces):
        coeffs = assignment_per_level[level]
        for idx, (r, c, b) in enumerate(entries):
            if coeffs[idx]:
                rx = find(offsets[level] + r)
                ry = find(offsets[level + 1] + c)
                if rx != ry:
                    parent[rx] = ry
                    components -= 1
                    if components == 1:
                        return True
    return components <= 1


def _perm_normal_key(terms, spaces, assignment_per_level):
    """Canonical key under same-vertex slot permutations at every position.

    Minimizes the flattened coefficient tuple over the (small) product of
    symmetric groups; sound because slot permutations are isomorphisms.
    """
    groups = []
    for pos, slots in enumerate(terms):
        by_v = {}
        for s, v in enumerate(slots):
            by_v.setdefault(v, []).append(s)
        for v, idxs in sorted(by_v.items()):
            if len(idxs) > 1:
                groups.append((pos, tuple(idxs)))
    perms_per_group = [list(itertools.permutations(idxs))
                       for _, idxs in groups]
    best = None
    for combo in itertools.product(*perms_per_group) if groups else [()]:
        mapping = {}
        for (pos, idxs), perm in zip(groups, combo):
            for a, b in zip(idxs, perm):
                mapping[(pos, a)] = b
        flat = []
        for level, entries in enumerate(spaces):
            resorted = sorted(
                ((mapping.get((level, r), r), mapping.get((level + 1, c), c),
                  b, x)
                 for (r, c, b), x in zip(entries,
                                         assignment_per_level[level])),
                key=lambda t: t[:3])
            flat.extend(t[3] for t in resorted)
        key = tuple(flat)
        if best is None or key < best:
            best = key
    return (tuple(tuple(t) for t in terms), best)


def _all_assignments(field, d):
    """(p^d, d) array of all coefficient assignments, int64, p-reduced."""
    p = field.p
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if p ** d > CENSUS_BUDGET:
        raise BudgetError(p ** d)
    if p == 2:
        out = ((np.arange(1 << d, dtype=np.int64)[:, None]
                >> np.arange(d, dtype=np.int64)) & 1)
        return out
    ranges = [np.arange(p, dtype=np.int64)] * d
    grids = np.meshgrid(*ranges, indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=1)


def _f2_kernel(mat: np.ndarray) -> np.ndarray:
    """Kernel basis rows of an int64 0/1 matrix over GF(2)."""
    m = (mat % 2).astype(np.int64)
    rows, cols = m.shape
    pivots = []
    r = 0
    work = m.copy()
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if work[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            work[[r, piv]] = work[[piv, r]]
        hits = np.nonzero(work[:, c])[0]
        for i in hits:
            if i != r:
                work[i] ^= work[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for rr, pc in enumerate(pivots):
            if rr < r and work[rr, fc]:
                basis[k, pc] = 1
    return basis


def _span_batch(field, basis: np.ndarray) -> np.ndarray:
    """All p-linear combinations of the basis rows, as an array."""
    k, d = basis.shape
    coeffs = _all_assignments(field, k)
    if k == 0:
        return np.zeros((1, d), dtype=np.int64)
    return (coeffs @ basis) % field.p


def _slot_layout(terms, spaces):
    """Masks of coefficient indices: per level, row/col indices per slot."""
    row_masks, col_masks = [], []
    for level, entries in enumerate(spaces):
        rm = [[] for _ in terms[level]]
        cm = [[] for _ in terms[level + 1]]
        for idx, (r, c, b) in enumerate(entries):
            rm[r].append(idx)
            cm[c].append(idx)
        row_masks.append([np.array(x, dtype=np.intp) for x in rm])
        col_masks.append([np.array(x, dtype=np.intp) for x in cm])
    return row_masks, col_masks


def _vertex_groups(slots):
    groups = {}
    for s, v in enumerate(slots):
        groups.setdefault(v, []).append(s)
    return [idxs for _, idxs in sorted(groups.items())]


def _filter_group_rows(field, batch: np.ndarray, masks, groups) -> np.ndarray:
    """Keep assignments whose per-slot vectors are nonzero and, within each
    same-vertex group, linearly independent.  Exact for group size <= 2
    over GF(2); larger groups or p > 2 fall back to rank checks."""
    if batch.shape[0] == 0:
        return batch
    keep = np.ones(batch.shape[0], dtype=bool)
    p = field.p
    for idxs in groups:
        for s in idxs:
            if masks[s].size == 0:
                keep[:] = False
                break
            keep &= batch[:, masks[s]].any(axis=1)
        if not keep.any():
            break
        if len(idxs) == 2 and p == 2:
            a, b = masks[idxs[0]], masks[idxs[1]]
            keep &= (batch[:, a] != batch[:, b]).any(axis=1)
        elif len(idxs) >= 2:
            rows = np.nonzero(keep)[0]
            for i in rows:
                vecs = [[field.scalar(int(x)) for x in batch[i, masks[s]]]
                        for s in idxs]
                if not _rows_independent(field, vecs):
                    keep[i] = False
    return batch[keep]


def _composition_tensor(algebra, entries_a, entries_b):
    """T with T[i, j, :] the composite coefficients, plus the composite
    coordinate count; composite coordinates are (row, col, basis) of the
    two-step corner."""
    f = algebra.field
    coord_of = {}
    data = []
    for i, (r1, c1, b1) in enumerate(entries_a):
        for j, (r2, c2, b2) in enumerate(entries_b):
            if c1 != r2:
                continue
            prod = algebra.mul(algebra.elem(b1), algebra.elem(b2))
            for k, val in enumerate(prod):
                if val != f.zero():
                    key = (r1, c2, k)
                    if key not in coord_of:
                        coord_of[key] = len(coord_of)
                    data.append((i, j, coord_of[key], val))
    n_comp = len(coord_of)
    tensor = np.zeros((len(entries_a), len(entries_b), max(1, n_comp)),
                      dtype=np.int64)
    for i, j, k, val in data:
        tensor[i, j, k] = int(f.scalar(val))
    return tensor, n_comp


def _candidate_assignments(algebra, terms, spaces, counter, budget):
    """Yield full differential assignments (tuple per level) that satisfy
    d o d = 0 and survive the slot-group filters; counts every enumerated
    assignment toward the budget."""
    f = algebra.field
    width = len(terms)
    row_masks, col_masks = _slot_layout(terms, spaces)
    groups = [ _vertex_groups(slots) for slots in terms ]
    d0 = len(spaces[0])
    batch0 = _all_assignments(f, d0)
    batch0 = _filter_group_rows(f, batch0, row_masks[0], groups[0])
    if width == 2:
        batch0 = _filter_group_rows(f, batch0, col_masks[0], groups[1])
        counter[0] += batch0.shape[0]
        if counter[0] > budget:
            raise BudgetError(counter[0])
        for row in batch0:
            yield (tuple(int(x) for x in row),)
        return
    # width >= 3: chain kernels level by level
    tensors = []
    for lev in range(len(spaces) - 1):
        tensors.append(_composition_tensor(algebra, spaces[lev],
                                           spaces[lev + 1]))

    def extend(level, chosen_rows):
        prev = chosen_rows[-1]
        tensor, n_comp = tensors[level - 1]
        d_next = len(spaces[level])
        if n_comp == 0 or not prev.any():
            kmat = np.eye(d_next, dtype=np.int64)
        else:
            m = np.einsum("i,ijc->cj", prev, tensor) % f.p
            if f.p == 2:
                kmat = _f2_kernel(m)
            else:
                kers = kernel_basis(ExactMatrix(
                    f, f.array([[int(x) for x in r] for r in m])
                    if f.dtype is object else m % f.p))
                kmat = (np.array([[int(k.data[i, 0]) for i in range(d_next)]
                                  for k in kers], dtype=np.int64)
                        if kers else np.zeros((0, d_next), dtype=np.int64))
        batch = _span_batch(f, kmat)
        # middle-position groups at `level`: combined in-col (fixed from
        # prev) + out-row (varies) vectors must be nonzero and independent
        keep = np.ones(batch.shape[0], dtype=bool)
        for idxs in groups[level]:
            cols = [prev[col_masks[level - 1][s]] for s in idxs]
            if len(idxs) == 1:
                s = idxs[0]
                if not cols[0].any():
                    if row_masks[level][s].size == 0:
                        keep[:] = False
                    else:
                        keep &= batch[:, row_masks[level][s]].any(axis=1)
            elif len(idxs) == 2 and f.p == 2:
                s1, s2 = idxs
                c_eq = bool((cols[0] == cols[1]).all())
                for s, cc in zip(idxs, cols):
                    if not cc.any():
                        if row_masks[level][s].size == 0:
                            keep[:] = False
                        else:
                            keep &= batch[:, row_masks[level][s]].any(axis=1)
                if c_eq:
                    a, b = row_masks[level][s1], row_masks[level][s2]
                    if a.size == 0 and b.size == 0:
                        keep[:] = False
                    else:
                        keep &= (batch[:, a] != batch[:, b]).any(axis=1)
            else:
                rows_idx = np.nonzero(keep)[0]
                for i in rows_idx:
                    vecs = []
                    dead = False
                    for s, cc in zip(idxs, cols):
                        vec = [f.scalar(int(x)) for x in cc] + \
                              [f.scalar(int(x))
                               for x in batch[i, row_masks[level][s]]]
                        if not any(x != f.zero() for x in vec):
                            dead = True
                            break
                        vecs.append(vec)
                    if dead or not _rows_independent(f, vecs):
                        keep[i] = False
        batch = batch[keep]
        if level == len(spaces) - 1:
            # final level: last-position column groups, applied to the batch
            batch = _filter_group_rows(f, batch, col_masks[level],
                                       groups[level + 1])
            counter[0] += batch.shape[0]
            if counter[0] > budget:
                raise BudgetError(counter[0])
            prefix = tuple(tuple(int(x) for x in r) for r in chosen_rows)
            for row in batch:
                yield prefix + (tuple(int(x) for x in row),)
        else:
            for row in batch:
                yield from extend(level + 1, chosen_rows + [row])

    for row0 in batch0:
        yield from extend(1, [row0])


def census_indecomposables(algebra: Algebra, width_cap: int, mult_cap: int,
                           seed: int = 0, threads: int = 1) -> CensusResult:
    """All minimal indecomposable complexes up to shift and isomorphism
    with width <= width_cap and per-term slot multiplicities <= mult_cap.

    Prime fields only; raises BudgetError past 10^7 examined candidates.
    Pruning drops candidates that visibly split (a zero or dependent slot
    row/column splits off a stalk; a disconnected support graph splits),
    which loses no indecomposables since every summand of a candidate is
    itself a candidate with smaller terms.
    """
    f = algebra.field
    if f.p == 0:
        raise ComplexError("census needs a prime field")
    if width_cap < 1 or mult_cap < 1:
        raise ComplexError("caps must be >= 1")
    term_lists = _census_term_lists(algebra, width_cap, mult_cap)
    counter = [0]
    found = []
    seen = set()
    for v in range(algebra.n_vertices):
        cx = stalk_complex(algebra, v, 0)
        key = cx.canonical_bytes()
        if key not in seen:
            seen.add(key)
            found.append(cx)
    if threads > 1 and len(term_lists) > 1:
        chunks = [term_lists[i::threads] for i in range(threads)]
        import concurrent.futures as cf

        results = []
        with cf.ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_census_worker, algebra, chunk, seed)
                       for chunk in chunks]
            for fut in futures:
                results.append(fut.result())
        partial = []
        for cand_count, classes in results:
            counter[0] += cand_count
            partial.extend(classes)
        partial.sort(key=lambda c: (c.width, c.slots, c.canonical_bytes()))
        for cx in partial:
            if any(complex_isomorphic(cx, other, seed=seed) is not None
                   for other in found if other.width == cx.width):
                continue
            found.append(cx)
    else:
        for terms in term_lists:
            _census_scan_terms(algebra, terms, seed, found, seen, counter)
    found.sort(key=lambda c: (c.width, c.slots, c.canonical_bytes()))
    return CensusResult(found, width_cap, mult_cap, counter[0])


def _census_term_lists(algebra, width_cap, mult_cap):
    out_vertices = {v for v in range(algebra.n_vertices)
                    if any(_rad_corner(algebra, v, w)
                           for w in range(algebra.n_vertices))}
    in_vertices = {v for v in range(algebra.n_vertices)
                   if any(_rad_corner(algebra, w, v)
                          for w in range(algebra.n_vertices))}
    term_lists = []
    for width in range(2, width_cap + 1):
        firsts = _terms_options(algebra, mult_cap, out_vertices)
        lasts = _terms_options(algebra, mult_cap, in_vertices)
        mids = _terms_options(algebra, mult_cap,
                              set(range(algebra.n_vertices)))
        pools = [firsts] + [mids] * (width - 2) + [lasts]
        for terms in itertools.product(*pools):
            spaces = [_diff_space(algebra, terms[i], terms[i + 1])
                      for i in range(len(terms) - 1)]
            if any(len(s) == 0 for s in spaces):
                continue
            if not _terms_viable(algebra, terms):
                continue
            term_lists.append(terms)
    return term_lists


def _terms_viable(algebra, terms) -> bool:
    """Every slot needs a possible nonzero in- or out-entry: the first
    position needs outs, the last needs ins, middles need either."""
    width = len(terms)
    for pos, slots in enumerate(terms):
        for v in slots:
            has_out = (pos < width - 1
                       and any(_rad_corner(algebra, v, w)
                               for w in set(terms[pos + 1])))
            has_in = (pos > 0
                      and any(_rad_corner(algebra, w, v)
                              for w in set(terms[pos - 1])))
            if pos == 0 and not has_out:
                return False
            if pos == width - 1 and not has_in:
                return False
            if 0 < pos < width - 1 and not (has_out or has_in):
                return False
    return True


def _census_worker(algebra, term_chunk, seed):
    counter = [0]
    found = []
    seen = set()
    for terms in term_chunk:
        _census_scan_terms(algebra, terms, seed, found, seen, counter)
    return counter[0], found


def _census_scan_terms(algebra, terms, seed, found, seen, counter):
    f = algebra.field
    spaces = [_diff_space(algebra, terms[i], terms[i + 1])
              for i in range(len(terms) - 1)]
    rng = random.Random(seed)
    for assignment in _candidate_assignments(algebra, terms, spaces, counter,
                                             CENSUS_BUDGET):
        if not _connected(terms, spaces, assignment, f):
            continue
        norm_key = _perm_normal_key(terms, spaces, assignment)
        if norm_key in seen:
            continue
        seen.add(norm_key)
        diffs = []
        for level, entries in enumerate(spaces):
            blk = zero_block(algebra, len(terms[level]),
                             len(terms[level + 1]))
            for (r, c, b), x in zip(entries, assignment[level]):
                if x:
                    vec = blk[r, c]
                    vec[b] = f.add(vec[b], f.scalar(x))
            diffs.append(blk)
        cx = ProjComplex(algebra, 0, list(terms), diffs, check=False)
        homs = chain_hom_space(cx, cx)
        if len(homs) > 1:
            ring = chain_end_ring(cx)
            idem, _ = find_splitting_idempotent(ring, rng)
            if idem is not None:
                continue
        if any(complex_isomorphic(cx, other, seed=seed) is not None
               for other in found if other.width == cx.width):
            continue
        found.append(cx)



# ---------------------------------------------------------------------------
# random complexes for the property suites
# ---------------------------------------------------------------------------


def random_complex(algebra: Algebra, rng, width_max: int = 3,
                   mult_max: int = 2, radical_only: bool = False
                   ) -> ProjComplex:
    """A random bounded complex with d o d = 0 by construction."""
    f = algebra.field
    width = rng.randint(1, width_max)
    start = rng.randint(-2, 1)
    terms = []
    for _ in range(width):
        slots = []
        for v in range(algebra.n_vertices):
            slots.extend([v] * rng.randint(0, mult_max))
        if not slots:
            slots = [rng.randrange(algebra.n_vertices)]
        terms.append(tuple(sorted(slots)))
    diffs = []
    prev_entries = None
    prev_assignment = None
    for i in range(width - 1):
        if radical_only:
            entries = _diff_space(algebra, terms[i], terms[i + 1])
        else:
            entries = []
            for r, vr in enumerate(terms[i]):
                for c, vc in enumerate(terms[i + 1]):
                    for b in algebra.corner_indices(vr, vc):
                        entries.append((r, c, b))
        d = len(entries)
        if d == 0:
            assignment = ()
        elif prev_assignment is None or not any(prev_assignment):
            assignment = tuple(rng.randrange(f.p) if f.p else
                               rng.randint(-2, 2) for _ in range(d))
        else:
            # sample from the kernel of composition with the previous level
            rows_of = {}
            cols = []
            for j, (r2, c2, b2) in enumerate(entries):
                col = {}
                for (r1, c1, b1), x in zip(prev_entries, prev_assignment):
                    if x == 0 or c1 != r2:
                        continue
                    prod = algebra.mul(
                        f.normalize(f.scalar(x) * algebra.elem(b1)),
                        algebra.elem(b2))
                    for k, val in enumerate(prod):
                        if val != f.zero():
                            key = (r1, c2, k)
                            rows_of.setdefault(key, len(rows_of))
                            idx = rows_of[key]
                            col[idx] = f.add(col.get(idx, f.zero()), val)
                cols.append(col)
            if rows_of:
                mat = f.zeros(len(rows_of), d)
                for j, col in enumerate(cols):
                    for idx, val in col.items():
                        mat[idx, j] = val
                kers = kernel_basis(ExactMatrix(f, mat))
                vec = f.zeros(d)
                for k in kers:
                    c = (f.scalar(rng.randrange(f.p)) if f.p
                         else f.scalar(rng.randint(-2, 2)))
                    if c != f.zero():
                        vec = f.normalize(vec + c * k.data[:, 0])
                assignment = tuple(vec)
            else:
                assignment = tuple(rng.randrange(f.p) if f.p else
                                   rng.randint(-2, 2) for _ in range(d))
        blk = zero_block(algebra, len(terms[i]), len(terms[i + 1]))
        for (r, c, b), x in zip(entries, assignment):
            xv = f.scalar(x)
            if xv != f.zero():
                vec = blk[r, c]
                vec[b] = f.add(vec[b], xv)
        diffs.append(blk)
        prev_entries = entries
        prev_assignment = list(assignment)
    return ProjComplex(algebra, start, terms, diffs, check=True)
