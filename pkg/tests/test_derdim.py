import pytest

from derizero import (GF, QQ, crosscheck_trivext, decide_derdim_zero,
                      derdim_upper_bound, dynkin_filter)
from derizero.corpus import CORPUS
from derizero.derdim import DerdimError, dynkin_coxeter_table
from conftest import make_algebra


def test_upper_bound_semisimple_is_zero():
    rep = derdim_upper_bound(make_algebra("k"))
    assert rep.bound == 0
    assert rep.loewy_length == 0


def test_upper_bound_a2(ka2):
    rep = derdim_upper_bound(ka2)
    assert rep.loewy_length == 1
    assert rep.global_dimension.value == 1
    assert rep.bound == 1  # not tight: the true derived dimension is 0


def test_upper_bound_dual_numbers(dualnumbers):
    rep = derdim_upper_bound(dualnumbers)
    assert rep.bound == 1  # from the loewy length; gl.dim is infinite
    assert rep.global_dimension.kind == "infinite"


def test_upper_bound_zero_iff_semisimple():
    for name in ("k", "kxk"):
        assert derdim_upper_bound(make_algebra(name)).bound == 0
    for name in ("kA2", "kA3", "dualnumbers", "kronecker"):
        assert derdim_upper_bound(make_algebra(name)).bound > 0


def test_dynkin_table_is_self_bootstrapped():
    table = dynkin_coxeter_table()
    assert set(table) == {f"A{n}" for n in range(1, 9)} | \
        {f"D{n}" for n in range(4, 9)} | {"E6", "E7", "E8"}
    # A2 entry: t^2 + t + 1 computed from the toolkit's own Cartan matrix
    assert table["A2"] == (2, (1, 1, 1))


def test_filter_a2_passes(ka2):
    res = dynkin_filter(ka2)
    assert res.passed and res.dynkin_type == "A2"


def test_filter_semisimple_product():
    res = dynkin_filter(make_algebra("kxk"))
    assert res.passed and res.dynkin_type == "A1+A1"


def test_filter_dual_numbers_fails_on_gldim(dualnumbers):
    res = dynkin_filter(dualnumbers)
    assert not res.passed and res.reason == "InfiniteGlobalDimension"


def test_filter_kronecker_fails_with_root_one(kronecker):
    res = dynkin_filter(kronecker)
    assert not res.passed and res.reason == "CoxeterNotDynkin"
    assert "root 1" in res.detail


def test_filter_a3rel_passes():
    res = dynkin_filter(make_algebra("a3rel"))
    assert res.passed and res.dynkin_type == "A3"


# ---- the decision ----


def test_decide_a2_zero(ka2):
    v = decide_derdim_zero(ka2)
    assert v.outcome == "zero"
    assert v.certificate.count == 3
    assert v.exit_code == 0


def test_decide_kxk_zero():
    v = decide_derdim_zero(make_algebra("kxk"))
    assert v.outcome == "zero"
    assert v.certificate.count == 2


def test_decide_dual_numbers_positive(dualnumbers):
    v = decide_derdim_zero(dualnumbers)
    assert v.outcome == "positive"
    assert v.reason == "InfiniteGlobalDimension"
    assert v.exit_code == 1


def test_decide_kronecker_positive(kronecker):
    v = decide_derdim_zero(kronecker)
    assert v.outcome == "positive"
    assert v.reason == "CoxeterNotDynkin"


def test_decide_records_field_and_budgets(ka2):
    v = decide_derdim_zero(ka2, census_field=3)
    assert v.census_field == 3
    assert (v.width_cap, v.mult_cap) == (3, 2)
    assert v.outcome == "zero"


def test_budgets_resolve_monotonically(ka2):
    small = decide_derdim_zero(ka2, width_cap=2, mult_cap=2)
    assert small.outcome == "unknown"
    big = decide_derdim_zero(ka2, width_cap=3, mult_cap=2)
    assert big.outcome == "zero"


def test_decide_caps_validated(ka2):
    with pytest.raises(DerdimError):
        decide_derdim_zero(ka2, width_cap=1, mult_cap=1)


def test_zero_certificate_reproduces_itself(ka2):
    from derizero import census_indecomposables
    v = decide_derdim_zero(ka2)
    ka2_f2 = make_algebra("kA2", GF(2))
    again = census_indecomposables(ka2_f2, v.width_cap, v.mult_cap)
    assert again.canonical_keys() == v.certificate.canonical_keys()


# ---- cross-check ----


def test_crosscheck_k_three_classes():
    rep = crosscheck_trivext(make_algebra("k"))
    assert rep.census_count == 3
    assert all(o.first_escape == 1 for o in rep.orbits)
    assert rep.consistent


def test_crosscheck_a2(ka2):
    rep = crosscheck_trivext(ka2)
    assert rep.census_saturated
    assert sorted(o.first_escape for o in rep.orbits) == [1, 2]
    assert rep.consistent


def test_crosscheck_rejects_infinite_gldim(dualnumbers):
    with pytest.raises(DerdimError):
        crosscheck_trivext(dualnumbers)
