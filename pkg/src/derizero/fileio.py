"""Line-oriented text formats for algebras, modules, graded modules and
complexes, plus the versioned structure-constant dump emitted by the
trivial-extension command.

Algebra files:
    FIELD Q            or  FIELD GF <p>
    VERTEX <name>
    ARROW <name> <src> <tgt>
    RELATION <coeff>*<path> [+|- <coeff>*<path> ...]
where a path is arrow names joined by '.', composing left to right from
source to target.  '#' starts a comment; unknown directives are rejected.

Module files:
    MODULE over <algebra-file>
    DIM <vertex> <d>
    MAP <arrow> <row> ; <row> ; ...
with rows of field entries (integers or fractions) separated by ';',
acting on column vectors; the matrix of an arrow s -> t has shape
(dim t) x (dim s).  Graded module files add 'DEG <basis-index> <integer>'
lines (0-based index into the assembled per-vertex block basis).

Complex files:
    COMPLEX over <algebra-file>
    TERM <position> <m_1> ... <m_n>
    DIFF <position> <entry> | <entry> ; <row> ...
with one entry per (source slot, target slot) pair as comma-separated
coefficients over the algebra basis; rows are source slots.
"""

from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from .algebra import Algebra, AlgebraError, QuiverPresentation, build_algebra
from .complexes import ProjComplex, zero_block
from .field import GF, QQ, Field
from .graded import GradedModule, trivially_graded
from .modules import Module
from .trivext import TrivialExtension


class ParseError(ValueError):
    def __init__(self, path, line, column, message):
        super().__init__(f"{path}:{line}:{column}: {message}")
        self.path = path
        self.line = line
        self.column = column


def _lines(path):
    with open(path) as fh:
        raw = fh.read().splitlines()
    out = []
    for i, line in enumerate(raw, start=1):
        stripped = line.split("#", 1)[0].rstrip()
        if stripped.strip():
            out.append((i, stripped))
    return out


def _fail(path, line_no, col, msg):
    raise ParseError(path, line_no, col, msg)


def parse_field(tokens, path, line_no):
    if tokens == ["Q"]:
        return QQ
    if len(tokens) == 2 and tokens[0] == "GF":
        try:
            return GF(int(tokens[1]))
        except Exception as exc:
            _fail(path, line_no, 1, f"bad prime field: {exc}")
    _fail(path, line_no, 1, f"bad FIELD directive: {' '.join(tokens)}")


def _parse_relation(rest, arrow_names, path, line_no):
    """'<coeff>*<path> [+|- <coeff>*<path> ...]' -> [(coeff, path tuple)]."""
    tokens = rest.split()
    terms = []
    sign = 1
    expect_term = True
    for tok in tokens:
        if tok in ("+", "-"):
            if expect_term:
                _fail(path, line_no, 1, "dangling sign in relation")
            sign = 1 if tok == "+" else -1
            expect_term = True
            continue
        if not expect_term:
            _fail(path, line_no, 1, f"missing +/- before {tok!r}")
        if "*" not in tok:
            _fail(path, line_no, 1, f"relation term needs coeff*path: {tok!r}")
        coeff_s, path_s = tok.split("*", 1)
        try:
            coeff = Fraction(coeff_s) * sign
        except ValueError:
            _fail(path, line_no, 1, f"bad coefficient {coeff_s!r}")
        arrows = tuple(path_s.split("."))
        for a in arrows:
            if a not in arrow_names:
                _fail(path, line_no, 1, f"unknown arrow {a!r} in relation")
        terms.append((coeff, arrows))
        expect_term = False
    if expect_term:
        _fail(path, line_no, 1, "empty relation")
    return terms


def parse_algebra_file(path, length_cap: int = 12) -> Algebra:
    field = None
    vertices = []
    arrows = []
    relations = []
    for line_no, line in _lines(path):
        tokens = line.split()
        head = tokens[0]
        if head == "FIELD":
            field = parse_field(tokens[1:], path, line_no)
        elif head == "VERTEX":
            if len(tokens) != 2:
                _fail(path, line_no, 1, "VERTEX takes one name")
            vertices.append(tokens[1])
        elif head == "ARROW":
            if len(tokens) != 4:
                _fail(path, line_no, 1, "ARROW takes name src tgt")
            arrows.append((tokens[1], tokens[2], tokens[3]))
        elif head == "RELATION":
            relations.append((line_no, line[len("RELATION"):].strip()))
        else:
            _fail(path, line_no, 1, f"unknown directive {head!r}")
    if field is None:
        _fail(path, 1, 1, "missing FIELD directive")
    if not vertices:
        _fail(path, 1, 1, "no vertices")
    arrow_names = {a[0] for a in arrows}
    rel_terms = [_parse_relation(rest, arrow_names, path, line_no)
                 for line_no, rest in relations]
    try:
        pres = QuiverPresentation(field, vertices, arrows, rel_terms)
        alg = build_algebra(pres, length_cap=length_cap,
                            name=os.path.splitext(os.path.basename(path))[0])
    except AlgebraError as exc:
        raise ParseError(path, 1, 1, str(exc))
    return alg


def _parse_matrix_rows(field, text, path, line_no):
    rows = []
    for part in text.split(";"):
        entries = part.split()
        rows.append([field.scalar(e) for e in entries])
    return rows


def parse_module_file(path) -> Module:
    base_dir = os.path.dirname(os.path.abspath(path))
    algebra = None
    dims = {}
    maps = {}
    degree_lines = []
    for line_no, line in _lines(path):
        tokens = line.split()
        head = tokens[0]
        if head == "MODULE":
            if len(tokens) < 3 or tokens[1] != "over":
                _fail(path, line_no, 1, "MODULE over <algebra-file>")
            algebra = parse_algebra_file(
                os.path.join(base_dir, " ".join(tokens[2:])))
        elif head == "DIM":
            if algebra is None:
                _fail(path, line_no, 1, "DIM before MODULE")
            if len(tokens) != 3:
                _fail(path, line_no, 1, "DIM <vertex> <d>")
            dims[tokens[1]] = int(tokens[2])
        elif head == "MAP":
            if algebra is None:
                _fail(path, line_no, 1, "MAP before MODULE")
            name = tokens[1]
            maps[name] = (line_no, line.split(None, 2)[2])
        elif head == "DEG":
            if len(tokens) != 3:
                _fail(path, line_no, 1, "DEG <basis-index> <integer>")
            degree_lines.append((line_no, int(tokens[1]), int(tokens[2])))
        else:
            _fail(path, line_no, 1, f"unknown directive {head!r}")
    if algebra is None:
        _fail(path, 1, 1, "missing MODULE directive")
    pres = algebra.presentation
    f = algebra.field
    vertex_names = list(pres.vertices)
    for v in dims:
        if v not in vertex_names:
            _fail(path, 1, 1, f"unknown vertex {v!r} in DIM")
    dim_list = [dims.get(v, 0) for v in vertex_names]
    offsets = np.cumsum([0] + dim_list)
    total = int(offsets[-1])
    vertex_of = [v for v in range(len(vertex_names))
                 for _ in range(dim_list[v])]
    arrow_info = {a[0]: (vertex_names.index(a[1]), vertex_names.index(a[2]))
                  for a in pres.arrows}
    action = [None] * algebra.dim
    for v in range(len(vertex_names)):
        e = algebra.idempotents[v]
        m = f.zeros(total, total)
        for j in range(offsets[v], offsets[v + 1]):
            m[j, j] = f.one()
        action[e] = m
    arrow_mats = {}
    for name, (line_no, text) in maps.items():
        if name not in arrow_info:
            _fail(path, line_no, 1, f"unknown arrow {name!r} in MAP")
        s, t = arrow_info[name]
        rows = _parse_matrix_rows(f, text, path, line_no)
        if len(rows) != dim_list[t] or any(len(r) != dim_list[s]
                                           for r in rows):
            _fail(path, line_no, 1,
                  f"MAP {name}: expected {dim_list[t]} x {dim_list[s]}")
        arrow_mats[name] = rows
    for name, (s, t) in arrow_info.items():
        m = f.zeros(total, total)
        rows = arrow_mats.get(name)
        if rows is not None:
            for i in range(dim_list[t]):
                for j in range(dim_list[s]):
                    m[offsets[t] + i, offsets[s] + j] = rows[i][j]
        arrow_idx = algebra.basis_names.index(name)
        action[arrow_idx] = m
    words = algebra.gen_words
    for i in range(algebra.dim):
        if action[i] is None:
            m = f.eye(total)
            for g in words[i]:
                m = f.matmul(action[g], m)
            action[i] = m
    try:
        mod = Module(algebra, action, vertex_of=vertex_of, check=True,
                     name=os.path.splitext(os.path.basename(path))[0])
    except Exception as exc:
        raise ParseError(path, 1, 1, f"invalid module: {exc}")
    if degree_lines:
        degrees = [0] * total
        for line_no, idx, d in degree_lines:
            if not 0 <= idx < total:
                _fail(path, line_no, 1, f"DEG index {idx} out of range")
            degrees[idx] = d
        ga = trivially_graded(algebra)
        try:
            return GradedModule(ga, mod, degrees, check=True, name=mod.name)
        except Exception as exc:
            raise ParseError(path, 1, 1, f"invalid grading: {exc}")
    return mod


def parse_complex_file(path) -> ProjComplex:
    base_dir = os.path.dirname(os.path.abspath(path))
    algebra = None
    terms = {}
    diffs = {}
    for line_no, line in _lines(path):
        tokens = line.split()
        head = tokens[0]
        if head == "COMPLEX":
            if len(tokens) < 3 or tokens[1] != "over":
                _fail(path, line_no, 1, "COMPLEX over <algebra-file>")
            algebra = parse_algebra_file(
                os.path.join(base_dir, " ".join(tokens[2:])))
        elif head == "TERM":
            if algebra is None:
                _fail(path, line_no, 1, "TERM before COMPLEX")
            pos = int(tokens[1])
            mults = [int(x) for x in tokens[2:]]
            if len(mults) != algebra.n_vertices:
                _fail(path, line_no, 1,
                      f"TERM needs {algebra.n_vertices} multiplicities")
            terms[pos] = mults
        elif head == "DIFF":
            if algebra is None:
                _fail(path, line_no, 1, "DIFF before COMPLEX")
            pos = int(tokens[1])
            diffs[pos] = (line_no, line.split(None, 2)[2])
        else:
            _fail(path, line_no, 1, f"unknown directive {head!r}")
    if algebra is None:
        _fail(path, 1, 1, "missing COMPLEX directive")
    if not terms:
        _fail(path, 1, 1, "no TERM lines")
    f = algebra.field
    lo, hi = min(terms), max(terms)
    slots = []
    for p in range(lo, hi + 1):
        mults = terms.get(p, [0] * algebra.n_vertices)
        slots.append(tuple(v for v in range(algebra.n_vertices)
                           for _ in range(mults[v])))
    blocks = []
    for p in range(lo, hi):
        blk = zero_block(algebra, len(slots[p - lo]), len(slots[p - lo + 1]))
        if p in diffs:
            line_no, text = diffs[p]
            rows = text.split(";")
            if len(rows) != len(slots[p - lo]):
                _fail(path, line_no, 1,
                      f"DIFF {p}: expected {len(slots[p - lo])} rows")
            for r, row in enumerate(rows):
                entries = row.split("|")
                if len(entries) != len(slots[p - lo + 1]):
                    _fail(path, line_no, 1,
                          f"DIFF {p}: expected {len(slots[p - lo + 1])} "
                          "entries per row")
                for c, entry in enumerate(entries):
                    coeffs = [x for x in entry.replace(",", " ").split()]
                    if len(coeffs) != algebra.dim:
                        _fail(path, line_no, 1,
                              f"DIFF {p}: entries need {algebra.dim} "
                              "coefficients")
                    for b, coeff in enumerate(coeffs):
                        blk[r, c][b] = f.scalar(coeff)
        blocks.append(blk)
    try:
        return ProjComplex(algebra, lo, slots, blocks, check=True)
    except Exception as exc:
        raise ParseError(path, 1, 1, f"invalid complex: {exc}")


# ---------------------------------------------------------------------------
# trivial-extension dump (versioned)
# ---------------------------------------------------------------------------

TRIVEXT_DUMP_HEADER = "DERIZERO-ALG v1"


def trivext_dump(te: TrivialExtension) -> str:
    """Structure-constant dump of the graded trivial extension."""
    t = te.algebra
    ga = te.graded_algebra
    f = t.field
    lines = [TRIVEXT_DUMP_HEADER]
    lines.append(f"FIELD {'Q' if f.p == 0 else f'GF {f.p}'}")
    lines.append(f"DIM {t.dim}")
    for i, name in enumerate(t.basis_names):
        lines.append(f"BASIS {i} {name} DEG {ga.degrees[i]}")
    unit = " ".join(str(t.unit[i]) for i in range(t.dim))
    lines.append(f"UNIT {unit}")
    lines.append("IDEMPOTENTS " + " ".join(str(i) for i in t.idempotents))
    if t.radical_indices is not None:
        lines.append("RADICAL " + " ".join(str(i) for i in t.radical_indices))
    for (i, j) in sorted(t.mult):
        entries = t.mult[(i, j)]
        body = " ".join(f"{k}:{c}" for k, c in entries)
        lines.append(f"PRODUCT {i} {j} {body}")
    return "\n".join(lines) + "\n"
