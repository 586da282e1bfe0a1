"""Positively-graded algebras and graded modules.

Provides degree shift, the forgetful functor, minimal/maximal degree
statistics with their extreme components over the degree-zero subalgebra,
graded (co)syzygies, the syzygy branch trichotomy, escape-bound orbit
exploration, and a brute-force census of gr-indecomposables meeting
degree zero.

Graded module bases are kept homogeneous, labeled by (vertex, degree)
pairs; everything block-based from the module layer is reused with those
labels.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import Algebra, AlgebraError
from .field import Field
from .idempotents import EndRing, find_splitting_idempotent
from .linalg import ExactMatrix, kernel_basis, rref, row_space_basis, solve
from .modules import (Module, ModuleError, _block_masks, _coords_in_rows,
                      gldim, hom_space_labeled, module_isomorphic,
                      projective_dimension, projective_module, projective_sum,
                      quotient_module, radical_submodule_rows, simple_module,
                      submodule, syzygy, zero_module)


class GradedError(ValueError):
    pass


class GradedAlgebra:
    """An algebra with a positive grading on its basis.

    degree_zero, when given, is the degree-zero subalgebra as an existing
    Algebra object whose basis matches the degree-0 basis elements in
    order (the trivial-extension constructor passes the original algebra
    here, so modules over it compare with plain module computations).
    """

    def __init__(self, algebra: Algebra, degrees, degree_zero=None,
                 check=True):
        self.algebra = algebra
        self.degrees = list(degrees)
        self._degree_zero = degree_zero
        self._self_injective = None
        if check:
            self._check()

    def _check(self):
        a = self.algebra
        if len(self.degrees) != a.dim:
            raise GradedError("one degree per basis element")
        if any(d < 0 for d in self.degrees):
            raise GradedError("grading must be positive")
        for e in a.idempotents:
            if self.degrees[e] != 0:
                raise GradedError("idempotents must have degree 0")
        for (i, j), entries in a.mult.items():
            for k, _ in entries:
                if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    raise GradedError(
                        f"multiplication not degree-additive at ({i},{j})")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.degrees else 0

    def degree_zero_indices(self):
        return [i for i in range(self.algebra.dim) if self.degrees[i] == 0]

    def degree_zero_part(self) -> Algebra:
        if self._degree_zero is None:
            idx = self.degree_zero_indices()
            pos = {b: k for k, b in enumerate(idx)}
            mult = {}
            for (i, j), entries in self.algebra.mult.items():
                if i in pos and j in pos:
                    mult[(pos[i], pos[j])] = tuple(
                        (pos[k], c) for k, c in entries)
            a = self.algebra
            rad_idx = None
            if a.radical_indices is not None:
                rad_idx = [pos[b] for b in a.radical_indices if b in pos]
            self._degree_zero = Algebra(
                a.field, [a.basis_names[b] for b in idx], mult,
                [a.unit[b] for b in idx],
                [pos[e] for e in a.idempotents],
                radical_indices=rad_idx,
                src=[a.src[b] for b in idx] if a.src else None,
                tgt=[a.tgt[b] for b in idx] if a.tgt else None,
                name=a.name + "_(0)", check=False)
        return self._degree_zero

    def is_self_injective(self) -> bool:
        if self._self_injective is None:
            from .trivext import check_selfinjective
            self._self_injective = check_selfinjective(self.algebra).self_injective
        return self._self_injective

    def __repr__(self):
        return (f"GradedAlgebra({self.algebra.name}, "
                f"max_degree={self.max_degree})")


def trivially_graded(algebra: Algebra) -> GradedAlgebra:
    return GradedAlgebra(algebra, [0] * algebra.dim,
                         degree_zero=algebra, check=False)


class GradedModule:
    """A module with a degree per basis vector, compatible with the grading."""

    def __init__(self, graded_algebra: GradedAlgebra, module: Module,
                 degrees, check=True, name=""):
        self.ga = graded_algebra
        self.module = module
        self.degrees = list(degrees)
        self.name = name or module.name
        if check:
            self._check()

    def _check(self):
        mod, ga = self.module, self.ga
        if len(self.degrees) != mod.dim:
            raise GradedError("one degree per basis vector")
        if mod.vertex_of is None:
            raise GradedError("graded modules need vertex-aligned bases")
        f = mod.field
        for b in range(ga.algebra.dim):
            d = ga.degrees[b]
            mat = mod.action[b]
            for r in range(mod.dim):
                for c in range(mod.dim):
                    if mat[r, c] != f.zero() and \
                            self.degrees[r] != self.degrees[c] + d:
                        raise GradedError(
                            f"action of basis {b} violates degrees at "
                            f"({r},{c})")

    @property
    def dim(self) -> int:
        return self.module.dim

    def is_zero(self) -> bool:
        return self.module.dim == 0

    def labels(self):
        return list(zip(self.module.vertex_of, self.degrees))

    def support(self):
        return sorted(set(self.degrees))

    def component_dims(self):
        out = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def component(self, d: int) -> Module:
        """The degree-d component as a module over the degree-0 subalgebra."""
        a0 = self.ga.degree_zero_part()
        idx = [j for j in range(self.dim) if self.degrees[j] == d]
        f = self.module.field
        zero_idx = self.ga.degree_zero_indices()
        action = []
        for k, b in enumerate(zero_idx):
            action.append(self.module.action[b][np.ix_(idx, idx)].copy()
                          if idx else f.zeros(0, 0))
        vertex_of = [self.module.vertex_of[j] for j in idx]
        return Module(a0, action, vertex_of=vertex_of, check=False,
                      name=f"{self.name}_({d})")

    def canonical_bytes(self) -> bytes:
        return (repr(self.degrees).encode() + b"#"
                + self.module.canonical_bytes())

    def __repr__(self):
        return (f"GradedModule({self.name}, dims={self.component_dims()})")


def degree_shift(gm: GradedModule, i: int) -> GradedModule:
    """M(i), with M(i)_(j) = M_(i+j); the underlying module is unchanged."""
    return GradedModule(gm.ga, gm.module, [d - i for d in gm.degrees],
                        check=False, name=f"{gm.name}({i})" if gm.name else "")


def forget(gm: GradedModule) -> Module:
    """Degree-forgetful functor."""
    return gm.module


@dataclass
class Bounds:
    b: int
    t: int
    bot: Module
    top: Module


def bounds(gm: GradedModule) -> Bounds:
    """Minimal/maximal nonzero degrees with their extreme components."""
    if gm.is_zero():
        raise GradedError("bounds of the zero module")
    b, t = min(gm.degrees), max(gm.degrees)
    return Bounds(b, t, gm.component(b), gm.component(t))


def graded_simple(ga: GradedAlgebra, v: int, degree: int = 0) -> GradedModule:
    return GradedModule(ga, simple_module(ga.algebra, v), [degree],
                        check=False, name=f"S_{v}({-degree})")


def graded_projective(ga: GradedAlgebra, v: int, shift: int = 0) -> GradedModule:
    """P_v(shift): generator sits in degree -shift."""
    p = projective_module(ga.algebra, v)
    degs = [ga.degrees[b] - shift for b in p.basis_indices]
    return GradedModule(ga, p, degs, check=False,
                        name=f"P_{v}({shift})" if shift else f"P_{v}")


def graded_submodule(gm: GradedModule, vectors, name="") -> GradedModule:
    sub = submodule(gm.module, vectors, labels=gm.labels(), name=name)
    degs = [lab[1] for lab in sub.block_labels]
    out = GradedModule(gm.ga, sub, degs, check=False, name=name)
    out.embedding = sub.embedding
    out.ambient_rows = sub.ambient_rows
    return out


def graded_quotient(gm: GradedModule, rows, name="") -> GradedModule:
    quot = quotient_module(gm.module, rows, labels=gm.labels(), name=name)
    degs = [lab[1] for lab in quot.block_labels]
    out = GradedModule(gm.ga, quot, degs, check=False, name=name)
    out.projection = quot.projection
    out.lift_cols = quot.lift_cols
    return out


def graded_hom(gm: GradedModule, gn: GradedModule) -> list:
    """Degree-zero intertwiners."""
    alg = gm.ga.algebra
    idem = set(alg.idempotents)
    moves = []
    for g in alg.generators:
        if g in idem:
            continue
        s, t, d = alg.src[g], alg.tgt[g], gm.ga.degrees[g]
        moves.append((g, (lambda s=s, t=t, d=d:
                          lambda lab: (t, lab[1] + d) if lab[0] == s else None
                          )()))
    return hom_space_labeled(gm.module, gn.module, gm.labels(), gn.labels(),
                             moves)


def graded_module_isomorphic(gm: GradedModule, gn: GradedModule,
                             seed: int = 0):
    """Invertible degree-zero intertwiner, or None."""
    if gm.dim != gn.dim or gm.component_dims() != gn.component_dims():
        return None
    if gm.dim == 0:
        return ExactMatrix(gm.module.field, gm.module.field.zeros(0, 0))
    f = gm.module.field
    homs = graded_hom(gm, gn)
    if not homs:
        return None
    rng = random.Random(seed)
    d = len(homs)

    def attempt(coeffs):
        mat = f.zeros(gn.dim, gm.dim)
        for c, h in zip(coeffs, homs):
            if c != f.zero():
                mat = f.normalize(mat + c * h)
        em = ExactMatrix(f, mat)
        return em if rref(em).rank == gm.dim else None

    from .modules import ISO_EXHAUSTIVE_LIMIT, ISO_RANDOM_ATTEMPTS

    for i in range(ISO_RANDOM_ATTEMPTS):
        if f.p == 0:
            coeffs = [f.scalar(rng.randint(-3, 3)) for _ in range(d)]
        else:
            coeffs = [f.scalar(rng.randrange(f.p)) for _ in range(d)]
        if i == 0:
            coeffs = [f.one()] + [f.zero()] * (d - 1)
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
# graded covers and syzygies
# ---------------------------------------------------------------------------


def graded_projective_cover(gm: GradedModule):
    """(cover: GradedModule over a ProjectiveSum, phi, layout).

    Summands P_v(-d) follow the generator degrees d of the top, in
    increasing (degree, vertex) order; phi is a degree-zero surjection.
    """
    if gm.is_zero():
        raise GradedError("cover of the zero graded module")
    mod = gm.module
    f = mod.field
    alg = gm.ga.algebra
    rad_rows = radical_submodule_rows(mod)
    top = graded_quotient(gm, rad_rows, name="top")
    gens = sorted(
        ((top.degrees[c], top.module.vertex_of[c], top.lift_cols[c])
         for c in range(top.dim)))
    vertices = [v for (_, v, _) in gens]
    ps = projective_sum(alg, vertices)
    cover_degs = []
    for (d, v, _), off in zip(gens, ps.offsets):
        p_basis = projective_module(alg, v).basis_indices
        cover_degs.extend(gm.ga.degrees[b] + d for b in p_basis)
    cover = GradedModule(gm.ga, ps.module, cover_degs, check=False,
                         name="cover")
    phi = f.zeros(mod.dim, ps.module.dim)
    for c, (d, v, lift) in enumerate(gens):
        target = f.zeros(mod.dim)
        target[lift] = f.one()
        p_basis = projective_module(alg, v).basis_indices
        for k, b in enumerate(p_basis):
            phi[:, ps.offsets[c] + k] = f.matmul(mod.action[b], target)
    if rref(ExactMatrix(f, phi)).rank != mod.dim:
        raise GradedError("graded cover is not onto")
    return cover, ExactMatrix(f, phi), ps


def is_graded_projective(gm: GradedModule) -> bool:
    if gm.is_zero():
        return True
    _, phi, _ = graded_projective_cover(gm)
    return rref(phi).rank == phi.cols


def split_projective_summands(gm: GradedModule):
    """(projective-free part, list of split (vertex, shift) pairs).

    Splits off graded summands isomorphic to some P_v(-d) by finding a
    retraction for a lifted top generator; deterministic linear algebra.
    """
    alg = gm.ga.algebra
    f = gm.module.field
    split = []
    cur = gm
    progress = True
    while progress and not cur.is_zero():
        progress = False
        rad_rows = radical_submodule_rows(cur.module)
        top = graded_quotient(cur, rad_rows)
        for c in range(top.dim):
            v = top.module.vertex_of[c]
            d = top.degrees[c]
            lift = top.lift_cols[c]
            p = projective_module(alg, v)
            if p.dim > cur.dim:
                continue
            target = f.zeros(cur.dim)
            target[lift] = f.one()
            emb = f.zeros(cur.dim, p.dim)
            for k, b in enumerate(p.basis_indices):
                emb[:, k] = f.matmul(cur.module.action[b], target)
            if rref(ExactMatrix(f, emb)).rank != p.dim:
                continue
            pv = graded_projective(gm.ga, v, shift=-d)
            homs = graded_hom(cur, pv)
            if not homs:
                continue
            # retraction: sum l_i H_i with (sum l_i H_i) @ emb = identity
            cols = []
            for h in homs:
                cols.append(f.matmul(h, emb).reshape(p.dim * p.dim))
            a = ExactMatrix.from_rows(f, cols).transpose()
            rhs = f.eye(p.dim).reshape(p.dim * p.dim)
            x = solve(a, ExactMatrix(f, rhs.reshape(-1, 1)))
            if x is None:
                continue
            retr = f.zeros(p.dim, cur.dim)
            for coeff, h in zip(x.data[:, 0], homs):
                if coeff != f.zero():
                    retr = f.normalize(retr + coeff * h)
            idem = f.matmul(emb, retr)
            complement = f.normalize(f.eye(cur.dim) - idem)
            cur = graded_submodule(cur, [complement[:, j]
                                         for j in range(cur.dim)],
                                   name=cur.name)
            split.append((v, -d))
            progress = True
            break
    return cur, split


def graded_syzygy(gm: GradedModule, n: int = 1,
                  split_projectives: bool = True) -> GradedModule:
    """Kernel of the graded projective cover, iterated n times.

    With split_projectives (the default) graded projective summands of
    the kernel are split off, giving the stable syzygy; the raw kernel
    (split_projectives=False) is what the degree trichotomy of the branch
    report is stated for.  The two agree over self-injective algebras.
    """
    if gm.is_zero():
        raise GradedError("syzygy of the zero graded module")
    cur = gm
    for _ in range(n):
        if cur.is_zero():
            return cur
        cover, phi, _ = graded_projective_cover(cur)
        kers = kernel_basis(phi)
        cur = graded_submodule(cover, [k.data[:, 0] for k in kers],
                               name=f"syz({gm.name})" if gm.name else "syz")
        if split_projectives and not cur.is_zero():
            cur, _ = split_projective_summands(cur)
    return cur


def graded_dual(gm: GradedModule, op_ga: GradedAlgebra | None = None
                ) -> GradedModule:
    """D(M) over the opposite graded algebra; D(M)_(j) = D(M_(-j))."""
    if op_ga is None:
        op_ga = GradedAlgebra(gm.ga.algebra.opposite(), gm.ga.degrees,
                              check=False)
    from .modules import dual_module
    dual = dual_module(gm.module, op_algebra=op_ga.algebra)
    return GradedModule(op_ga, dual, [-d for d in gm.degrees], check=False,
                        name=f"D({gm.name})" if gm.name else "dual")


def graded_cosyzygy(gm: GradedModule, n: int = 1) -> GradedModule:
    """Cosyzygy over a self-injective graded algebra, via duality."""
    if not gm.ga.is_self_injective():
        raise GradedError("cosyzygy requires a self-injective graded algebra")
    op_ga = GradedAlgebra(gm.ga.algebra.opposite(), gm.ga.degrees, check=False)
    d = graded_dual(gm, op_ga)
    d = graded_syzygy(d, n)
    if d.is_zero():
        return GradedModule(gm.ga, zero_module(gm.ga.algebra), [],
                            check=False)
    back = graded_dual(d, gm.ga)
    return back


# ---------------------------------------------------------------------------
# the syzygy branch trichotomy and escape orbits
# ---------------------------------------------------------------------------


@dataclass
class BranchReport:
    """Outcome of one graded syzygy step on the minimal-degree statistics.

    kind == "equal": the minimal degree is preserved and the bottom
    component of the syzygy is the degree-zero-part syzygy of the bottom
    (verified by isomorphism); kind == "increased": the minimal degree
    strictly increased.  Exactly one of the two holds.
    """

    kind: str
    b_before: int
    b_after: int
    pd_bot_before: object = None
    pd_bot_after: object = None


def syzygy_bottom_report(gm: GradedModule, with_pd: bool = True,
                         pd_cap: int = 16) -> BranchReport:
    """Classify one graded syzygy step (raw kernel, no projective split)."""
    if gm.is_zero():
        raise GradedError("branch report needs a nonzero module")
    if is_graded_projective(gm):
        raise GradedError("branch report needs a non-projective module")
    a0 = gm.ga.degree_zero_part()
    bds = bounds(gm)
    cover, phi, _ = graded_projective_cover(gm)
    if min(cover.degrees) != bds.b:
        raise GradedError("cover bottom degree mismatch")
    omega = graded_syzygy(gm, 1, split_projectives=False)
    b_after = min(omega.degrees)
    if b_after < bds.b:
        raise GradedError("syzygy lowered the minimal degree")
    if b_after == bds.b:
        bot_omega = omega.component(bds.b)
        bot_syz = syzygy(bds.bot, 1)
        if module_isomorphic(bot_omega, bot_syz) is None:
            raise GradedError(
                "trichotomy violated: equal bottom degree but bottom is "
                "not the degree-zero syzygy")
        report = BranchReport("equal", bds.b, b_after)
        if with_pd:
            report.pd_bot_before = projective_dimension(bds.bot, cap=pd_cap)
            report.pd_bot_after = projective_dimension(bot_omega, cap=pd_cap)
        return report
    return BranchReport("increased", bds.b, b_after)


def cosyzygy_top_report(gm: GradedModule, with_pd: bool = False) -> BranchReport:
    """Dual classification for one cosyzygy step (top degree statistics)."""
    if gm.is_zero():
        raise GradedError("branch report needs a nonzero module")
    op_ga = GradedAlgebra(gm.ga.algebra.opposite(), gm.ga.degrees, check=False)
    dual = graded_dual(gm, op_ga)
    rep = syzygy_bottom_report(dual, with_pd=with_pd)
    return BranchReport(rep.kind, -rep.b_before, -rep.b_after,
                        rep.pd_bot_before, rep.pd_bot_after)


@dataclass
class OrbitStep:
    j: int
    b: int
    t: int
    component_dims: dict


@dataclass
class OrbitReport:
    steps: list
    first_escape: int | None
    bound_conservative: int
    bound_literal: int
    gldim_degree_zero: int

    @property
    def escaped(self) -> bool:
        return self.first_escape is not None

    @property
    def literal_bound_violated(self) -> bool:
        return (self.first_escape is not None
                and self.first_escape > self.bound_literal)


def syzygy_orbit(gm: GradedModule, max_steps: int = 32) -> OrbitReport:
    """Iterate graded syzygies until the minimal degree escapes above 0.

    Requires a self-injective graded algebra with finite global dimension
    of the degree-zero part.  Reports the conservative escape bound
    (1 - min(b, 0)) * (N + 1) and, alongside, the literal bound
    max(1, -b*N); the conservative bound is asserted whenever the escape
    is observed.
    """
    if gm.is_zero():
        raise GradedError("orbit of the zero module")
    if not gm.ga.is_self_injective():
        raise GradedError("syzygy orbits require a self-injective algebra")
    if is_graded_projective(gm):
        raise GradedError("orbit of a projective module")
    a0 = gm.ga.degree_zero_part()
    g0 = gldim(a0, cap=max(8, max_steps))
    if not g0.finite:
        raise GradedError(
            "global dimension of the degree-zero part must be finite "
            f"(got {g0})")
    n_val = g0.value
    b0 = min(gm.degrees)
    bound_cons = (1 - min(b0, 0)) * (n_val + 1)
    bound_lit = max(1, -b0 * n_val)
    steps = [OrbitStep(0, b0, max(gm.degrees), gm.component_dims())]
    cur = gm
    first_escape = None
    for j in range(1, max_steps + 1):
        cur = graded_syzygy(cur, 1, split_projectives=True)
        if cur.is_zero():
            raise GradedError("orbit hit zero: input was projective")
        b, t = min(cur.degrees), max(cur.degrees)
        steps.append(OrbitStep(j, b, t, cur.component_dims()))
        if b > 0:
            first_escape = j
            break
    if first_escape is not None and first_escape > bound_cons:
        raise GradedError(
            f"escape bound violated: escaped at {first_escape} > "
            f"{bound_cons}")
    return OrbitReport(steps, first_escape, bound_cons, bound_lit, n_val)


# ---------------------------------------------------------------------------
# graded Krull-Schmidt and the window census
# ---------------------------------------------------------------------------


def graded_end_ring(gm: GradedModule) -> EndRing:
    return EndRing(gm.module.field, graded_hom(gm, gm))


def graded_is_indecomposable(gm: GradedModule, seed: int = 0) -> bool:
    if gm.is_zero():
        raise GradedError("the zero module is neither")
    idem, _ = find_splitting_idempotent(graded_end_ring(gm),
                                        random.Random(seed))
    return idem is None


def graded_krull_schmidt(gm: GradedModule, seed: int = 0):
    """[(gr-indecomposable summand, multiplicity)], unique up to order."""
    rng = random.Random(seed)
    f = gm.module.field
    out = []
    stack = [gm]
    while stack:
        cur = stack.pop()
        if cur.is_zero():
            continue
        idem, _ = find_splitting_idempotent(graded_end_ring(cur), rng)
        if idem is None:
            out.append(cur)
            continue
        for mat in (idem, f.normalize(f.eye(cur.dim) - idem)):
            piece = graded_submodule(cur, [mat[:, j] for j in range(cur.dim)],
                                     name=cur.name)
            if not piece.is_zero():
                stack.append(piece)
    out.sort(key=lambda p: (p.dim, p.canonical_bytes()))
    grouped = []
    for piece in out:
        for entry in grouped:
            if graded_module_isomorphic(piece, entry[0], seed=seed) is not None:
                entry[1] += 1
                break
        else:
            grouped.append([piece, 1])
    return [(p, k) for p, k in grouped]


@dataclass
class WindowCensus:
    """Census of gr-indecomposables with nonzero degree-0 component.

    Complete only up to dim_cap: `classes` lists one representative per
    isomorphism class of total dimension <= dim_cap.
    """

    classes: list
    dim_cap: int
    candidates_seen: int

    @property
    def count(self) -> int:
        return len(self.classes)


def window_census(ga: GradedAlgebra, dim_cap: int, seed: int = 0
                  ) -> WindowCensus:
    """Brute-force enumeration over a prime field, up to isomorphism.

    Enumerates degree-compatible structures on every dimension vector per
    (vertex, degree) slot whose support is an interval containing 0, then
    filters gr-indecomposables and deduplicates.  Supports gradings with
    max degree <= 1 (trivial gradings and trivial extensions), where
    interval supports are exhaustive.
    """
    f = ga.field
    if f.p == 0:
        raise GradedError("window census needs a prime field (enumeration)")
    if ga.max_degree > 1:
        raise GradedError("window census implemented for max degree <= 1")
    alg = ga.algebra
    if not alg.is_path_like():
        raise GradedError("window census needs a path-like basis")
    nv = alg.n_vertices
    idem = set(alg.idempotents)
    gens = [g for g in alg.generators if g not in idem]
    found = []
    seen_keys = set()
    candidates = 0
    max_deg = ga.max_degree

    supports = []
    for lo in range(-(dim_cap - 1), 1):
        for hi in range(0, dim_cap - (0 - lo)):
            if hi - lo + 1 <= dim_cap:
                supports.append((lo, hi))

    for lo, hi in supports:
        degs = list(range(lo, hi + 1))
        slots = [(v, d) for d in degs for v in range(nv)]
        for dims in _dim_vectors(len(slots), dim_cap):
            per_degree = {}
            for (v, d), k in zip(slots, dims):
                per_degree[d] = per_degree.get(d, 0) + k
            if any(per_degree.get(d, 0) == 0 for d in degs):
                continue  # gap: splits as a direct sum for max degree <= 1
            for gm in _enumerate_structures(ga, slots, dims, gens):
                candidates += 1
                key = gm.canonical_bytes()
                if key in seen_keys:
                    continue
                seen_keys.add(key)
                if not graded_is_indecomposable(gm, seed=seed):
                    continue
                if any(graded_module_isomorphic(gm, other, seed=seed)
                       is not None for other in found):
                    continue
                found.append(gm)
    found.sort(key=lambda g: (g.dim, repr(sorted(g.component_dims().items())),
                              g.canonical_bytes()))
    return WindowCensus(found, dim_cap, candidates)


def _dim_vectors(n_slots: int, total_cap: int):
    """All slot dimension vectors with total in 1..total_cap."""
    def rec(i, remaining):
        if i == n_slots:
            yield ()
            return
        for k in range(0, remaining + 1):
            for rest in rec(i + 1, remaining - k):
                yield (k,) + rest
    for v in rec(0, total_cap):
        if sum(v) >= 1:
            yield v


def _enumerate_structures(ga: GradedAlgebra, slots, dims, gens):
    """All graded module structures on the given slot dimensions."""
    alg = ga.algebra
    f = alg.field
    slot_index = {sl: i for i, sl in enumerate(slots)}
    offsets = []
    off = 0
    for k in dims:
        offsets.append(off)
        off += k
    total = off
    if total == 0:
        return
    vertex_of = []
    degrees = []
    for (v, d), k in zip(slots, dims):
        vertex_of.extend([v] * k)
        degrees.extend([d] * k)
    # block positions each generator can occupy
    blocks = []
    for g in gens:
        s, t, dg = alg.src[g], alg.tgt[g], ga.degrees[g]
        for (v, d), k in zip(slots, dims):
            if v != s or k == 0:
                continue
            to = (t, d + dg)
            if to not in slot_index:
                continue
            kt = dims[slot_index[to]]
            if kt == 0:
                continue
            blocks.append((g, slot_index[(v, d)], slot_index[to]))
    entry_count = sum(dims[b[1]] * dims[b[2]] for b in blocks)
    if f.p ** entry_count > 200000:
        raise GradedError(
            f"window census budget exceeded: {f.p}^{entry_count} candidates "
            "for one dimension vector")
    for assignment in itertools.product(range(f.p), repeat=entry_count):
        action = [None] * alg.dim
        for e in alg.idempotents:
            m = f.zeros(total, total)
            v = alg.vertex_of_idempotent(e)
            for j in range(total):
                if vertex_of[j] == v:
                    m[j, j] = f.one()
            action[e] = m
        pos = 0
        for g, si, ti in blocks:
            if action[g] is None:
                action[g] = f.zeros(total, total)
            ks, kt = dims[si], dims[ti]
            blk = np.array(assignment[pos:pos + ks * kt],
                           dtype=f.dtype).reshape(kt, ks)
            pos += ks * kt
            action[g][offsets[ti]:offsets[ti] + kt,
                      offsets[si]:offsets[si] + ks] = blk
        for g in gens:
            if action[g] is None:
                action[g] = f.zeros(total, total)
        # extend along generator words and verify the structure constants
        ok = True
        words = alg.gen_words
        if words is None:
            ok = False
        else:
            for i in range(alg.dim):
                if action[i] is not None:
                    continue
                m = f.eye(total)
                for g in words[i]:
                    m = f.matmul(action[g], m)
                action[i] = m
            for g in list(idx for idx in alg.generators):
                ag = action[g]
                for j in range(alg.dim):
                    left = f.matmul(ag, action[j])
                    expected = f.zeros(total, total)
                    for k, c in alg.mult.get((g, j), ()):
                        expected = f.normalize(expected + c * action[k])
                    if not np.array_equal(left, expected):
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            continue
        mod = Module(alg, action, vertex_of=vertex_of, check=False)
        yield GradedModule(ga, mod, degrees, check=False)
