"""Bundled corpus of worked algebras with expected invariants.

Each entry carries the quiver data, the values the toolkit must
reproduce, and a one-line note on how each expected value was derived
independently (path counts by hand, classical Coxeter data, syzygy
periodicity).  `write_corpus_files` materializes the algebra files the
command-line front end reads.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, QuiverPresentation, build_algebra
from .field import QQ


@dataclass
class CorpusEntry:
    name: str
    vertices: list
    arrows: list
    relations: list = dc_field(default_factory=list)
    expected_dim: int | None = None          # counted paths by hand
    expected_loewy: int | None = None        # longest path by hand
    expected_gldim: object = None            # int, or "infinite"
    dynkin_expected: str | None = None       # iterated tilted type, if known
    expected_verdict: str | None = None      # "zero" | "positive" | None
    expected_census: tuple | None = None     # (width_cap, mult_cap, count)
    decide_caps: tuple = (3, 2)
    derivation: str = ""

    def presentation(self, field=QQ) -> QuiverPresentation:
        return QuiverPresentation(field, list(self.vertices),
                                  list(self.arrows),
                                  [list(r) for r in self.relations])

    def algebra(self, field=QQ) -> Algebra:
        return build_algebra(self.presentation(field), name=self.name)

    def algebra_file_text(self) -> str:
        lines = ["# corpus entry: " + self.name, "FIELD Q"]
        for v in self.vertices:
            lines.append(f"VERTEX {v}")
        for a, s, t in self.arrows:
            lines.append(f"ARROW {a} {s} {t}")
        for rel in self.relations:
            parts = []
            for k, (coeff, path) in enumerate(rel):
                if k == 0:
                    parts.append(f"{coeff}*{'.'.join(path)}")
                else:
                    parts.append("+" if coeff > 0 else "-")
                    parts.append(f"{abs(coeff)}*{'.'.join(path)}")
            lines.append("RELATION " + " ".join(parts))
        return "\n".join(lines) + "\n"


def _linear_quiver(n):
    vs = [str(i) for i in range(1, n + 1)]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
    return vs, arrows


def _d_quiver(n):
    vs = [str(i) for i in range(1, n + 1)]
    arrows = [("a1", "1", "3"), ("a2", "2", "3")]
    arrows += [(f"a{i}", str(i), str(i + 1)) for i in range(3, n)]
    return vs, arrows


def _e_quiver(n):
    vs = [str(i) for i in range(1, n + 1)]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n - 1)]
    arrows.append((f"a{n-1}", str(n), "3"))
    return vs, arrows


def _build_corpus():
    entries = []
    # Dynkin path algebras: dim = number of directed paths (counted by
    # hand for the linear orientation: n + (n-1) + ... + 1 for A_n)
    a_dims = {n: n * (n + 1) // 2 for n in range(1, 9)}
    a_census = {1: 1, 2: 3, 3: 6}  # positive roots of A_n, hand count
    for n in range(1, 9):
        vs, arrows = _linear_quiver(n)
        entries.append(CorpusEntry(
            name=f"a{n}", vertices=vs, arrows=arrows,
            expected_dim=a_dims[n],
            expected_loewy=n - 1,
            expected_gldim=0 if n == 1 else 1,
            dynkin_expected=f"A{n}",
            expected_verdict="zero" if n <= 3 else None,
            expected_census=((3, 2, a_census[n]) if n <= 3 else None),
            derivation="paths of the linear quiver counted by hand; census "
                       "count equals the number of positive roots"))
    for n in range(4, 9):
        vs, arrows = _d_quiver(n)
        entries.append(CorpusEntry(
            name=f"d{n}", vertices=vs, arrows=arrows,
            expected_loewy=n - 2,
            expected_gldim=1,
            dynkin_expected=f"D{n}",
            derivation="tree orientation of the D diagram; hereditary"))
    for n in (6, 7, 8):
        vs, arrows = _e_quiver(n)
        entries.append(CorpusEntry(
            name=f"e{n}", vertices=vs, arrows=arrows,
            expected_gldim=1,
            dynkin_expected=f"E{n}",
            derivation="tree orientation of the E diagram; hereditary"))
    entries.append(CorpusEntry(
        name="onevertex", vertices=["v"], arrows=[],
        expected_dim=1, expected_loewy=0, expected_gldim=0,
        dynkin_expected="A1", expected_verdict="zero",
        expected_census=(3, 2, 1),
        derivation="the field itself; one stalk class"))
    entries.append(CorpusEntry(
        name="kxk", vertices=["1", "2"], arrows=[],
        expected_dim=2, expected_loewy=0, expected_gldim=0,
        dynkin_expected="A1+A1", expected_verdict="zero",
        expected_census=(3, 2, 2),
        derivation="semisimple product; two stalk classes"))
    entries.append(CorpusEntry(
        name="dualnumbers", vertices=["v"], arrows=[("x", "v", "v")],
        relations=[[(1, ("x", "x"))]],
        expected_dim=2, expected_loewy=1, expected_gldim="infinite",
        expected_verdict="positive",
        derivation="syzygy of the simple is periodic of period 1"))
    entries.append(CorpusEntry(
        name="kx3", vertices=["v"], arrows=[("x", "v", "v")],
        relations=[[(1, ("x", "x", "x"))]],
        expected_dim=3, expected_loewy=2, expected_gldim="infinite",
        expected_verdict="positive",
        derivation="basis 1, x, x^2; periodic syzygies"))
    entries.append(CorpusEntry(
        name="kronecker", vertices=["1", "2"],
        arrows=[("a", "1", "2"), ("b", "1", "2")],
        expected_dim=4, expected_loewy=1, expected_gldim=1,
        expected_verdict="positive",
        derivation="Coxeter polynomial (t-1)^2 has root 1 (affine type)"))
    entries.append(CorpusEntry(
        name="a3rel", vertices=["1", "2", "3"],
        arrows=[("a", "1", "2"), ("b", "2", "3")],
        relations=[[(1, ("a", "b"))]],
        expected_dim=5, expected_loewy=1, expected_gldim=2,
        dynkin_expected="A3", expected_verdict="zero",
        expected_census=(4, 2, 6),
        decide_caps=(4, 2),
        derivation="radical-square-zero quotient of the A3 path algebra, "
                   "tilted of type A3; width cap 4 needed since the simple "
                   "at the source has a width-3 minimal resolution"))
    entries.append(CorpusEntry(
        name="commsquare", vertices=["1", "2", "3", "4"],
        arrows=[("a", "1", "2"), ("b", "2", "4"),
                ("c", "1", "3"), ("d", "3", "4")],
        relations=[[(1, ("a", "b")), (-1, ("c", "d"))]],
        expected_dim=9, expected_loewy=2, expected_gldim=2,
        derivation="commutative square; 9 paths after identifying the two "
                   "length-2 paths"))
    return entries


CORPUS = _build_corpus()


def corpus_entry(name: str) -> CorpusEntry:
    for e in CORPUS:
        if e.name == name:
            return e
    raise KeyError(name)


def write_corpus_files(directory: str):
    os.makedirs(directory, exist_ok=True)
    paths = []
    for e in CORPUS:
        path = os.path.join(directory, e.name + ".alg")
        with open(path, "w") as fh:
            fh.write(e.algebra_file_text())
        paths.append(path)
    return paths
