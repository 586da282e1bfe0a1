import random

import numpy as np
import pytest

from derizero import (GF, QQ, bounds, degree_shift, forget, graded_cosyzygy,
                      graded_projective, graded_simple, graded_syzygy,
                      module_isomorphic, simple_module, syzygy,
                      syzygy_bottom_report, cosyzygy_top_report, syzygy_orbit,
                      trivially_graded, trivial_extension, window_census)
from derizero.graded import (GradedError, GradedModule,
                             graded_is_indecomposable,
                             graded_krull_schmidt, graded_module_isomorphic,
                             is_graded_projective)
from derizero.modules import random_module, regular_module
from conftest import make_algebra


@pytest.fixture
def tk_f2():
    return trivial_extension(make_algebra("k", GF(2)))


@pytest.fixture
def tka2():
    return trivial_extension(make_algebra("kA2"))


def graded_regular(te):
    ga = te.graded_algebra
    reg = regular_module(te.algebra)
    return GradedModule(ga, reg, list(ga.degrees), name="regular")


def random_graded_module(ga, rng, max_copies=2, max_relations=2):
    """Random graded quotient of a sum of shifted graded projectives."""
    from derizero.graded import graded_quotient, graded_submodule
    from derizero.modules import direct_sum

    parts = []
    for v in range(ga.algebra.n_vertices):
        for _ in range(rng.randint(0, max_copies)):
            parts.append(graded_projective(ga, v, shift=rng.randint(-1, 1)))
    if not parts:
        parts = [graded_projective(ga, rng.randrange(ga.algebra.n_vertices))]
    mod = direct_sum([p.module for p in parts])
    degrees = [d for p in parts for d in p.degrees]
    gm = GradedModule(ga, mod, degrees, check=False)
    f = ga.field
    from derizero.modules import radical_submodule_rows
    rad_rows = radical_submodule_rows(mod)
    vecs = []
    labels = gm.labels()
    for _ in range(rng.randint(0, max_relations)):
        if rad_rows.rows == 0:
            break
        # a random homogeneous radical element: restrict a random radical
        # combination to one (vertex, degree) block
        v = f.zeros(mod.dim)
        for r in range(rad_rows.rows):
            c = (f.scalar(rng.randint(-2, 2)) if f.p == 0
                 else f.scalar(rng.randrange(f.p)))
            if c != f.zero():
                v = f.normalize(v + c * rad_rows.data[r])
        if f.is_zero(v):
            continue
        support = sorted({labels[j] for j in range(mod.dim)
                          if v[j] != f.zero()})
        lab = support[rng.randrange(len(support))]
        w = f.zeros(mod.dim)
        for j in range(mod.dim):
            if labels[j] == lab:
                w[j] = v[j]
        if not f.is_zero(w):
            vecs.append(w)
    if not vecs:
        return gm
    sub = graded_submodule(gm, vecs)
    return graded_quotient(gm, sub.ambient_rows)


# ---- shift / forget / bounds ----


def test_shift_by_zero_is_identity(tk_f2):
    s = graded_simple(tk_f2.graded_algebra, 0)
    assert degree_shift(s, 0).degrees == s.degrees


def test_shift_moves_concentration(tk_f2):
    s = graded_simple(tk_f2.graded_algebra, 0)  # concentrated in degree 0
    assert degree_shift(s, 1).degrees == [-1]


def test_forget_commutes_with_shift(tka2):
    rng = random.Random(0)
    ga = tka2.graded_algebra
    for _ in range(10):
        gm = random_graded_module(ga, rng)
        i = rng.randint(-2, 2)
        shifted = degree_shift(gm, i)
        assert forget(shifted) is forget(gm)  # same matrices, structurally


def test_bounds_simple(tk_f2):
    s = graded_simple(tk_f2.graded_algebra, 0)
    b = bounds(s)
    assert (b.b, b.t) == (0, 0)
    assert b.bot.dim == 1 and b.top.dim == 1


def test_bounds_of_graded_regular(tk_f2):
    greg = graded_regular(tk_f2)
    b = bounds(greg)
    assert (b.b, b.t) == (0, 1)
    assert b.bot.dim == 1 and b.top.dim == 1


def test_bounds_shift_relation(tka2):
    rng = random.Random(1)
    ga = tka2.graded_algebra
    for _ in range(10):
        gm = random_graded_module(ga, rng)
        if gm.is_zero():
            continue
        i = rng.randint(-2, 2)
        assert bounds(degree_shift(gm, i)).b == bounds(gm).b - i


def test_bounds_of_zero_module_rejected(tk_f2):
    from derizero.modules import zero_module
    gm = GradedModule(tk_f2.graded_algebra, zero_module(tk_f2.algebra), [],
                      check=False)
    with pytest.raises(GradedError):
        bounds(gm)


# ---- graded syzygies ----


def test_graded_syzygy_of_projective_vanishes(tka2):
    p = graded_projective(tka2.graded_algebra, 0, shift=3)
    assert is_graded_projective(p)


def test_graded_syzygy_shifts_simple_over_tk(tk_f2):
    s = graded_simple(tk_f2.graded_algebra, 0)
    omega = graded_syzygy(s, 1)
    assert omega.component_dims() == {1: 1}  # S(-1)
    assert graded_module_isomorphic(omega, degree_shift(s, -1)) is not None


def test_trivial_grading_reduces_to_ungraded_syzygy():
    alg = make_algebra("dualnumbers")
    ga = trivially_graded(alg)
    s = graded_simple(ga, 0)
    omega = graded_syzygy(s, 1)
    assert omega.component_dims() == {0: 1}
    assert module_isomorphic(forget(omega), simple_module(alg, 0)) is not None


def test_graded_cosyzygy_requires_self_injective(tka2):
    alg = make_algebra("kA2")
    ga = trivially_graded(alg)
    s = graded_simple(ga, 0)
    with pytest.raises(GradedError):
        graded_cosyzygy(s, 1)


def test_graded_cosyzygy_over_tk(tk_f2):
    s = graded_simple(tk_f2.graded_algebra, 0)
    co = graded_cosyzygy(s, 1)
    assert co.dim == 1
    assert co.component_dims() == {-1: 1}  # dual to the syzygy shift


# ---- the branch trichotomy ----


def test_branch_increased_over_tk(tk_f2):
    s = graded_simple(tk_f2.graded_algebra, 0)
    rep = syzygy_bottom_report(s)
    assert rep.kind == "increased"
    assert (rep.b_before, rep.b_after) == (0, 1)


def test_branch_equal_trivially_graded_dual_numbers():
    alg = make_algebra("dualnumbers")
    ga = trivially_graded(alg)
    s = graded_simple(ga, 0)
    rep = syzygy_bottom_report(s)
    assert rep.kind == "equal"
    # bot(omega) = S = syzygy of bot over the degree-0 part (the algebra)
    assert rep.pd_bot_before.kind == "infinite"


def test_branch_equal_over_tka2(tka2):
    s1 = graded_simple(tka2.graded_algebra, 0)
    rep = syzygy_bottom_report(s1)
    assert rep.kind == "equal"
    assert rep.pd_bot_before.value == 1
    assert rep.pd_bot_after.value == 0  # drops by exactly one


def test_branch_rejects_projective(tka2):
    p = graded_projective(tka2.graded_algebra, 0)
    with pytest.raises(GradedError):
        syzygy_bottom_report(p)


def test_dual_branch_report(tka2):
    s1 = graded_simple(tka2.graded_algebra, 0)
    rep = cosyzygy_top_report(s1)
    assert rep.kind in ("equal", "decreased", "increased")
    # the dual statement: top degree preserved or strictly smaller
    assert rep.b_after <= rep.b_before or rep.kind == "equal"


# ---- escape orbits ----


def test_orbit_tk_escapes_at_one(tk_f2):
    s = graded_simple(tk_f2.graded_algebra, 0)
    rep = syzygy_orbit(s, max_steps=8)
    assert rep.first_escape == 1
    assert rep.bound_conservative == 1
    assert rep.bound_literal == 1
    assert not rep.literal_bound_violated


def test_orbit_tka2_escapes_at_two(tka2):
    s1 = graded_simple(tka2.graded_algebra, 0)
    rep = syzygy_orbit(s1, max_steps=8)
    assert rep.first_escape == 2
    assert rep.gldim_degree_zero == 1
    assert rep.bound_conservative == 2
    assert rep.first_escape <= rep.bound_conservative
    # the literal bound max(1, -b*N) = 1 is violated on this instance
    assert rep.bound_literal == 1
    assert rep.literal_bound_violated
    # the second syzygy is one-dimensional concentrated in degree 1
    assert rep.steps[2].component_dims == {1: 1}


def test_orbit_rejects_projective_input(tka2):
    p = graded_projective(tka2.graded_algebra, 1)
    with pytest.raises(GradedError):
        syzygy_orbit(p)


def test_orbit_requires_finite_degree_zero_gldim():
    alg = make_algebra("dualnumbers")
    ga = trivially_graded(alg)
    s = graded_simple(ga, 0)
    with pytest.raises(GradedError):
        syzygy_orbit(s)


def test_trichotomy_and_monotonicity_on_randoms(tka2):
    rng = random.Random(7)
    ga = tka2.graded_algebra
    checked = 0
    for _ in range(30):
        gm = random_graded_module(ga, rng)
        if gm.is_zero() or is_graded_projective(gm):
            continue
        rep = syzygy_bottom_report(gm, with_pd=True)
        checked += 1
        if rep.kind == "equal":
            assert rep.b_after == rep.b_before
            if rep.pd_bot_before.finite:
                assert rep.pd_bot_after.value == rep.pd_bot_before.value - 1
        else:
            assert rep.b_after > rep.b_before
        omega = graded_syzygy(gm, 1, split_projectives=False)
        assert min(omega.degrees) >= min(gm.degrees)  # monotone bottom
    assert checked >= 10


# ---- window census ----


def test_window_census_tk(tk_f2):
    census = window_census(tk_f2.graded_algebra, 2)
    assert census.count == 3
    dims = sorted(tuple(sorted(c.component_dims().items()))
                  for c in census.classes)
    assert dims == [(( -1, 1), (0, 1)), ((0, 1),), ((0, 1), (1, 1))]


def test_window_census_semisimple_trivially_graded():
    alg = make_algebra("k", GF(2))
    census = window_census(trivially_graded(alg), 3)
    assert census.count == 1


def test_window_census_deterministic(tk_f2):
    a = window_census(tk_f2.graded_algebra, 2)
    b = window_census(tk_f2.graded_algebra, 2)
    assert [c.canonical_bytes() for c in a.classes] == \
        [c.canonical_bytes() for c in b.classes]


def test_window_census_rejects_rationals():
    te = trivial_extension(make_algebra("k"))
    with pytest.raises(GradedError):
        window_census(te.graded_algebra, 2)


def test_window_census_tka2_saturates():
    te = trivial_extension(make_algebra("kA2", GF(2)))
    c3 = window_census(te.graded_algebra, 3)
    c4 = window_census(te.graded_algebra, 4)
    assert c3.count == 9
    assert c4.count == 9


def test_graded_ks_of_regular(tka2):
    te2 = trivial_extension(make_algebra("kA2", GF(2)))
    greg = graded_regular(te2)
    parts = graded_krull_schmidt(greg)
    assert sum(p.dim * k for p, k in parts) == greg.dim
    assert all(graded_is_indecomposable(p) for p, _ in parts)
    assert len(parts) == 2  # the two graded projectives
