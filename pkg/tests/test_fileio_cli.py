import io
import os

import pytest

from derizero import GF, QQ
from derizero.cli import run
from derizero.corpus import CORPUS, corpus_entry, write_corpus_files
from derizero.fileio import (ParseError, parse_algebra_file,
                             parse_complex_file, parse_module_file,
                             trivext_dump, TRIVEXT_DUMP_HEADER)
from derizero.graded import GradedModule
from derizero.trivext import trivial_extension
from conftest import make_algebra


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    write_corpus_files(str(d))
    return str(d)


def test_corpus_files_match_programmatic_algebras(corpus_dir):
    for entry in CORPUS:
        alg = parse_algebra_file(os.path.join(corpus_dir, entry.name + ".alg"))
        ref = entry.algebra()
        assert alg.dim == ref.dim, entry.name
        assert alg.basis_names == ref.basis_names, entry.name
        assert alg.mult == ref.mult, entry.name


def test_corpus_expected_invariants(corpus_dir):
    from derizero import gldim
    for entry in CORPUS:
        alg = entry.algebra()
        if entry.expected_dim is not None:
            assert alg.dim == entry.expected_dim, entry.name
        if entry.expected_loewy is not None:
            assert alg.loewy_length() == entry.expected_loewy, entry.name
        if entry.expected_gldim is not None:
            g = gldim(alg, 12)
            if entry.expected_gldim == "infinite":
                assert g.kind == "infinite", entry.name
            else:
                assert g.finite and g.value == entry.expected_gldim, entry.name


def test_algebra_file_parse_errors(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("FIELD Q\nVERTEX 1\nBOGUS x\n")
    with pytest.raises(ParseError) as err:
        parse_algebra_file(str(bad))
    assert err.value.line == 3

    nofield = tmp_path / "nofield.alg"
    nofield.write_text("VERTEX 1\n")
    with pytest.raises(ParseError):
        parse_algebra_file(str(nofield))


def test_algebra_file_comments_and_relations(tmp_path):
    path = tmp_path / "rel.alg"
    path.write_text(
        "# commutative square\nFIELD GF 2\nVERTEX 1\nVERTEX 2\nVERTEX 3\n"
        "VERTEX 4\nARROW a 1 2\nARROW b 2 4\nARROW c 1 3\nARROW d 3 4\n"
        "RELATION 1*a.b - 1*c.d\n")
    alg = parse_algebra_file(str(path))
    assert alg.dim == 9
    assert alg.field == GF(2)


def test_module_file_roundtrip(tmp_path, corpus_dir):
    mod_file = tmp_path / "m.mod"
    mod_file.write_text(
        f"MODULE over {os.path.join(corpus_dir, 'a2.alg')}\n"
        "DIM 1 1\nDIM 2 1\nMAP a1 1\n")
    mod = parse_module_file(str(mod_file))
    assert mod.dim == 2
    assert mod.dimension_vector() == [1, 1]
    from derizero import module_isomorphic, projective_module
    assert module_isomorphic(mod, projective_module(mod.algebra, 0)) \
        is not None


def test_module_file_rejects_relation_violation(tmp_path, corpus_dir):
    mod_file = tmp_path / "bad.mod"
    # over the dual numbers: x acting as identity violates x^2 = 0
    mod_file.write_text(
        f"MODULE over {os.path.join(corpus_dir, 'dualnumbers.alg')}\n"
        "DIM v 1\nMAP x 1\n")
    with pytest.raises(ParseError):
        parse_module_file(str(mod_file))


def test_graded_module_file(tmp_path, corpus_dir):
    mod_file = tmp_path / "g.mod"
    mod_file.write_text(
        f"MODULE over {os.path.join(corpus_dir, 'kxk.alg')}\n"
        "DIM 1 1\nDIM 2 1\nDEG 0 2\nDEG 1 -1\n")
    gm = parse_module_file(str(mod_file))
    assert isinstance(gm, GradedModule)
    assert sorted(gm.degrees) == [-1, 2]


def test_complex_file(tmp_path, corpus_dir):
    cx_file = tmp_path / "c.cx"
    # [P_2 -a-> P_1] over kA2: algebra basis order is 1, 2, a1
    cx_file.write_text(
        f"COMPLEX over {os.path.join(corpus_dir, 'a2.alg')}\n"
        "TERM 0 0 1\nTERM 1 1 0\nDIFF 0 0,0,1\n")
    cx = parse_complex_file(str(cx_file))
    assert cx.slots == [(1,), (0,)]
    from derizero import is_minimal
    assert is_minimal(cx)


def test_complex_file_rejects_bad_d_squared(tmp_path, corpus_dir):
    cx_file = tmp_path / "c.cx"
    cx_file.write_text(
        f"COMPLEX over {os.path.join(corpus_dir, 'a3.alg')}\n"
        "TERM 0 0 0 1\nTERM 1 0 1 0\nTERM 2 1 0 0\n"
        "DIFF 0 0,0,0,0,1,0\nDIFF 1 0,0,0,1,0,0\n")
    with pytest.raises(ParseError):
        parse_complex_file(str(cx_file))


def test_trivext_dump_versioned_header():
    te = trivial_extension(make_algebra("k"))
    dump = trivext_dump(te)
    assert dump.splitlines()[0] == TRIVEXT_DUMP_HEADER
    assert "BASIS 1 v* DEG 1" in dump


# ---- CLI ----


def _run(args):
    out = io.StringIO()
    code = run(args, out)
    return code, out.getvalue()


def test_cli_unknown_subcommand_exits_64():
    code, _ = _run(["frobnicate"])
    assert code == 64


def test_cli_parse_error_exits_64(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("FIELD Q\nWHAT\n")
    code, _ = _run(["algebra", str(bad)])
    assert code == 64


def test_cli_algebra_report(corpus_dir):
    code, text = _run(["algebra", os.path.join(corpus_dir, "a2.alg")])
    assert code == 0
    assert "dimension 3" in text
    assert "t^2 + t + 1" in text


def test_cli_derdim_decide_exit_codes(corpus_dir):
    code, text = _run(["derdim", "decide", os.path.join(corpus_dir, "a2.alg")])
    assert code == 0
    assert "verdict: Zero" in text
    assert "RESULT" in text
    code, _ = _run(["derdim", "decide",
                    os.path.join(corpus_dir, "dualnumbers.alg")])
    assert code == 1
    code, _ = _run(["derdim", "decide",
                    os.path.join(corpus_dir, "a2.alg"),
                    "--width-cap", "2"])
    assert code == 2  # unsaturated at the smallest caps


def test_cli_reports_deterministic(corpus_dir):
    args = ["derdim", "decide", os.path.join(corpus_dir, "a2.alg")]
    _, first = _run(args)
    _, second = _run(args)
    assert first == second


def test_cli_sglobal_dual_numbers(corpus_dir):
    code, text = _run(["sglobal", os.path.join(corpus_dir, "dualnumbers.alg"),
                       "--width-cap", "5"])
    assert code == 0
    assert "s.gl.dim >= 5" in text
    assert "infinite" in text


def test_cli_census(corpus_dir):
    code, text = _run(["census", os.path.join(corpus_dir, "a2.alg"),
                       "--width-cap", "3", "--mult-cap", "2"])
    assert code == 0
    assert "3 classes" in text


def test_cli_graded_census_and_orbit(corpus_dir):
    code, text = _run(["graded", "census",
                       os.path.join(corpus_dir, "onevertex.alg"),
                       "--dim-cap", "2"])
    assert code == 0
    assert "3 gr-indecomposables" in text
    code, text = _run(["graded", "orbit",
                       os.path.join(corpus_dir, "a2.alg")])
    assert code == 0
    assert "first escape 2" in text


def test_cli_module_and_decompose(tmp_path, corpus_dir):
    mod_file = tmp_path / "m.mod"
    mod_file.write_text(
        f"MODULE over {os.path.join(corpus_dir, 'a2.alg')}\n"
        "DIM 1 1\nDIM 2 2\nMAP a1 1 ; 0\n")
    code, text = _run(["module", str(mod_file)])
    assert code == 0
    assert "dim 3" in text

    cx_file = tmp_path / "c.cx"
    cx_file.write_text(
        f"COMPLEX over {os.path.join(corpus_dir, 'a2.alg')}\n"
        "TERM 0 0 1\nTERM 1 1 0\nDIFF 0 0,0,1\n")
    code, text = _run(["decompose", str(cx_file)])
    assert code == 0
    assert "1 indecomposable summand" in text
    code, text = _run(["minimize", str(cx_file)])
    assert code == 0
    assert "homotopically minimal: True" in text
