import pytest

from derizero import GF, QQ, QuiverPresentation, build_algebra


def make_algebra(name, field=QQ):
    """Small named algebras used across the suite."""
    if name == "k":
        pres = QuiverPresentation(field, ["v"], [])
    elif name == "kxk":
        pres = QuiverPresentation(field, ["1", "2"], [])
    elif name == "kA2":
        pres = QuiverPresentation(field, ["1", "2"], [("a", "1", "2")])
    elif name == "kA3":
        pres = QuiverPresentation(field, ["1", "2", "3"],
                                  [("a", "1", "2"), ("b", "2", "3")])
    elif name == "dualnumbers":
        pres = QuiverPresentation(field, ["v"], [("x", "v", "v")],
                                  [[(1, ("x", "x"))]])
    elif name == "kx3":
        pres = QuiverPresentation(field, ["v"], [("x", "v", "v")],
                                  [[(1, ("x", "x", "x"))]])
    elif name == "kronecker":
        pres = QuiverPresentation(field, ["1", "2"],
                                  [("a", "1", "2"), ("b", "1", "2")])
    elif name == "a3rel":
        pres = QuiverPresentation(field, ["1", "2", "3"],
                                  [("a", "1", "2"), ("b", "2", "3")],
                                  [[(1, ("a", "b"))]])
    else:
        raise KeyError(name)
    return build_algebra(pres, name=name)


@pytest.fixture
def ka2():
    return make_algebra("kA2")


@pytest.fixture
def ka2_f2():
    return make_algebra("kA2", GF(2))


@pytest.fixture
def ka3():
    return make_algebra("kA3")


@pytest.fixture
def ka3_f2():
    return make_algebra("kA3", GF(2))


@pytest.fixture
def dualnumbers():
    return make_algebra("dualnumbers")


@pytest.fixture
def dualnumbers_f2():
    return make_algebra("dualnumbers", GF(2))


@pytest.fixture
def kronecker():
    return make_algebra("kronecker")
