import itertools
import random

import numpy as np
import pytest

from derizero import (GF, QQ, check_selfinjective, module_isomorphic,
                      projective_module, trivial_extension)
from derizero.corpus import CORPUS
from derizero.linalg import rank
from derizero.modules import regular_module
from conftest import make_algebra


def test_tk_is_dual_numbers():
    te = trivial_extension(make_algebra("k"))
    assert te.dim == 2
    dn = make_algebra("dualnumbers")
    # same regular representation up to isomorphism: both are local of
    # dimension 2 with one-dimensional radical
    assert te.algebra.loewy_length() == dn.loewy_length() == 1
    assert te.graded_algebra.degrees == [0, 1]


def test_dimension_doubles():
    rng = random.Random(0)
    for name in ("k", "kA2", "kA3", "dualnumbers", "kronecker", "a3rel"):
        alg = make_algebra(name)
        te = trivial_extension(alg)
        assert te.dim == 2 * alg.dim


def test_tka2_is_the_two_cycle_with_radical_cube_zero():
    te = trivial_extension(make_algebra("kA2"))
    assert te.dim == 6
    assert te.algebra.loewy_length() == 2  # rad^3 = 0, rad^2 != 0
    t = te.algebra
    f = t.field
    a = t.basis_names.index("a")
    astar = t.basis_names.index("a*")
    e1s = t.basis_names.index("1*")
    e2s = t.basis_names.index("2*")
    # a* . a = (1)* and a . a* = (2)*: the two-cycle composites
    assert np.array_equal(t.mul(t.elem(astar), t.elem(a)), t.elem(e1s))
    assert np.array_equal(t.mul(t.elem(a), t.elem(astar)), t.elem(e2s))
    # radical cube vanishes
    assert f.is_zero(t.mul(t.elem(a), t.mul(t.elem(astar), t.elem(a))))


def test_pairing_swap_form_properties():
    for name in ("kA2", "kx3"):
        te = trivial_extension(make_algebra(name))
        pair = te.pairing
        assert np.array_equal(pair.data, pair.data.T)
        assert rank(pair) == te.dim
        t = te.algebra
        rng = random.Random(3)
        for _ in range(60):
            i, j, k = (rng.randrange(te.dim) for _ in range(3))
            xy = t.mul(t.elem(i), t.elem(j))
            yz = t.mul(t.elem(j), t.elem(k))
            assert te.pairing_value(xy, t.elem(k)) == \
                te.pairing_value(t.elem(i), yz)


def test_degree_zero_subalgebra_is_the_base():
    alg = make_algebra("kA3")
    te = trivial_extension(alg)
    assert te.graded_algebra.degree_zero_part() is alg
    n = alg.dim
    for (i, j), entries in alg.mult.items():
        assert te.algebra.mult.get((i, j), ()) == tuple(entries)


def test_selfinjective_examples():
    assert check_selfinjective(trivial_extension(make_algebra("k")))
    rep = check_selfinjective(make_algebra("kA2"))
    assert not rep.self_injective
    assert rep.witness_vertex is not None
    assert check_selfinjective(make_algebra("kxk")).self_injective
    assert check_selfinjective(make_algebra("dualnumbers")).self_injective


def test_trivial_extensions_always_selfinjective():
    for name in ("k", "kxk", "kA2", "kA3", "dualnumbers", "kronecker",
                 "a3rel"):
        te = trivial_extension(make_algebra(name))
        assert check_selfinjective(te).self_injective, name


def test_generators_reach_every_basis_element():
    te = trivial_extension(make_algebra("kA3"))
    t = te.algebra
    f = t.field
    for i in range(t.dim):
        word = t.gen_words[i]
        prod = t.elem(word[0])
        for g in word[1:]:
            prod = t.mul(t.elem(g), prod)
        assert np.array_equal(prod, t.elem(i))
