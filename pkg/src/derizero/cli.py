"""Command-line front end.

Subcommands: algebra, module, graded (orbit | census), trivext, minimize,
decompose, sglobal, census, derdim (decide | bound | crosscheck).  All
randomized procedures take --seed (default 0); identical invocations
produce byte-identical reports.

Exit codes: derdim decide exits 0 for a zero verdict, 1 for positive,
2 for unknown; parse errors exit 64, budget errors 65, other errors 70.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import AlgebraError, CoxeterUndefinedError, cartan_coxeter, poly_to_str
from .complexes import (BudgetError, census_indecomposables, htp_ideal,
                        is_minimal as complex_is_minimal,
                        ks_decompose_complex, minimal_decomposition,
                        strong_gldim_search)
from .derdim import (crosscheck_trivext, decide_derdim_zero,
                     derdim_upper_bound, dynkin_filter)
from .fileio import (ParseError, parse_algebra_file, parse_complex_file,
                     parse_module_file, trivext_dump)
from .graded import GradedModule, graded_simple, syzygy_orbit, window_census
from .modules import gldim, is_indecomposable, krull_schmidt
from .trivext import check_selfinjective, trivial_extension

EXIT_PARSE = 64
EXIT_BUDGET = 65
EXIT_ERROR = 70


def _print_result_block(out, pairs):
    print("RESULT", file=out)
    for key, value in pairs:
        print(f"{key}: {value}", file=out)


def cmd_algebra(args, out):
    alg = parse_algebra_file(args.file)
    print(f"algebra {alg.name}: dimension {alg.dim}, "
          f"{alg.n_vertices} vertices, field {alg.field}", file=out)
    print(f"basis: {' '.join(alg.basis_names)}", file=out)
    print(f"loewy length: {alg.loewy_length()}", file=out)
    g = gldim(alg, cap=args.gldim_cap)
    print(f"global dimension: {g}", file=out)
    try:
        cartan, cox = cartan_coxeter(alg)
        print(f"cartan matrix: {cartan.tolist()}", file=out)
        print(f"coxeter polynomial: {poly_to_str(cox)}", file=out)
    except CoxeterUndefinedError as exc:
        print(f"coxeter polynomial: undefined ({exc})", file=out)
    return 0


def cmd_module(args, out):
    mod = parse_module_file(args.file)
    if isinstance(mod, GradedModule):
        print(f"graded module: dim {mod.dim}, components "
              f"{mod.component_dims()}", file=out)
        mod = mod.module
    print(f"module over {mod.algebra.name}: dim {mod.dim}, "
          f"dimension vector {mod.dimension_vector()}", file=out)
    if mod.dim == 0:
        return 0
    ks = krull_schmidt(mod, seed=args.seed)
    print("indecomposable summands:", file=out)
    for summand, mult in ks.summands:
        print(f"  dim {summand.dim} (dimension vector "
              f"{summand.dimension_vector()}) x {mult}", file=out)
    if ks.field_relative:
        print("  (some endomorphism quotient is a division ring over this "
              "field; decomposition is field-relative)", file=out)
    return 0


def cmd_graded_orbit(args, out):
    alg = parse_algebra_file(args.file)
    te = trivial_extension(alg)
    ga = te.graded_algebra
    vertices = ([args.vertex] if args.vertex is not None
                else list(range(alg.n_vertices)))
    for v in vertices:
        s = graded_simple(ga, v)
        rep = syzygy_orbit(s, max_steps=args.max_steps)
        esc = rep.first_escape if rep.escaped else "not within budget"
        print(f"simple at vertex {alg.basis_names[alg.idempotents[v]]}: "
              f"first escape {esc}; conservative bound "
              f"{rep.bound_conservative}; literal bound {rep.bound_literal}"
              f"{' (violated)' if rep.literal_bound_violated else ''}",
              file=out)
        for step in rep.steps:
            print(f"  step {step.j}: degrees {step.b}..{step.t}, "
                  f"components {step.component_dims}", file=out)
    return 0


def cmd_graded_census(args, out):
    from .derdim import _algebra_over_prime
    alg = _algebra_over_prime(parse_algebra_file(args.file),
                              args.census_field)
    te = trivial_extension(alg)
    census = window_census(te.graded_algebra, args.dim_cap, seed=args.seed)
    print(f"window census of the trivial extension of {alg.name} "
          f"(complete up to total dimension {args.dim_cap}):", file=out)
    print(f"{census.count} gr-indecomposables with nonzero degree-0 part",
          file=out)
    for cls in census.classes:
        print(f"  dim {cls.dim}: components {cls.component_dims()}",
              file=out)
    return 0


def cmd_trivext(args, out):
    alg = parse_algebra_file(args.file)
    te = trivial_extension(alg)
    out.write(trivext_dump(te))
    rep = check_selfinjective(te)
    print(f"# self-injective: {rep.self_injective}", file=out)
    return 0


def cmd_minimize(args, out):
    cx = parse_complex_file(args.file)
    dec = minimal_decomposition(cx)
    print(f"complex with support {cx.start}..{cx.start + cx.n_positions - 1},"
          f" width {cx.width}", file=out)
    print(f"homotopically minimal: {complex_is_minimal(cx)}", file=out)
    print(f"minimal part: width {dec.minimal.width}, "
          f"terms {dec.minimal.slots}", file=out)
    print(f"contractible summands split off: {len(dec.contractible)}",
          file=out)
    h = htp_ideal(dec.minimal)
    print(f"null-homotopic endomorphisms of the minimal part: "
          f"dim {len(h.basis)}, nilpotency exponent {h.nilpotency_exponent}",
          file=out)
    return 0


def cmd_decompose(args, out):
    cx = parse_complex_file(args.file)
    dec = ks_decompose_complex(cx, seed=args.seed)
    print(f"{len(dec.summands)} indecomposable summand class(es):", file=out)
    for summand, mult in dec.summands:
        print(f"  width {summand.width}, terms {summand.slots} x {mult}",
              file=out)
    return 0


def cmd_sglobal(args, out):
    alg = parse_algebra_file(args.file)
    res = strong_gldim_search(alg, args.width_cap, args.mult_cap,
                              seed=args.seed)
    print(str(res), file=out)
    print(f"global dimension: {res.gldim}", file=out)
    if res.gldim.finite:
        print(f"floor max(2, 1 + gl.dim) = "
              f"{max(2, 1 + res.gldim.value)}", file=out)
    if res.infinite:
        print("strong global dimension is infinite "
              "(unbounded truncation widths)", file=out)
    if res.witness is not None:
        print(f"widest witness: terms {res.witness.slots} at "
              f"{res.witness.start}", file=out)
    return 0


def cmd_census(args, out):
    from .derdim import _algebra_over_prime
    alg = _algebra_over_prime(parse_algebra_file(args.file),
                              args.census_field)
    census = census_indecomposables(alg, args.width_cap, args.mult_cap,
                                    seed=args.seed, threads=args.threads)
    print(f"census of minimal indecomposable complexes up to shift over "
          f"{alg.field}:", file=out)
    print(f"{census.count} classes within width {args.width_cap}, "
          f"multiplicity {args.mult_cap} "
          f"({census.candidates} candidates examined)", file=out)
    print(f"classes per width: {census.widths()}", file=out)
    for cls in census.classes:
        print(f"  width {cls.width}: terms {cls.slots}", file=out)
    return 0


def cmd_derdim_decide(args, out):
    alg = parse_algebra_file(args.file)
    verdict = decide_derdim_zero(alg, width_cap=args.width_cap,
                                 mult_cap=args.mult_cap,
                                 census_field=args.census_field,
                                 seed=args.seed, threads=args.threads)
    outcome = verdict.outcome
    print(f"derived dimension zero decision for {alg.name} "
          f"(caps {args.width_cap}/{args.mult_cap}, census over "
          f"GF({args.census_field})):", file=out)
    if outcome == "zero":
        print("verdict: Zero -- the bounded derived category is generated "
              "by one object under sums, summands and shifts at the "
              "recorded budgets", file=out)
        print(f"certificate: {verdict.certificate.count} indecomposable "
              f"classes up to shift, widths "
              f"{verdict.certificate.widths()}", file=out)
    elif outcome == "positive":
        print(f"verdict: Positive ({verdict.reason})", file=out)
    else:
        print(f"verdict: Unknown ({verdict.reason})", file=out)
    for note in verdict.notes:
        print(f"note: {note}", file=out)
    print("note: the classification theorem is stated over an "
          "algebraically closed field; this verdict is relative to the "
          "recorded field", file=out)
    pairs = [("verdict", outcome.capitalize()),
             ("reason", verdict.reason or "-"),
             ("field", f"GF({verdict.census_field})"),
             ("width_cap", verdict.width_cap),
             ("mult_cap", verdict.mult_cap),
             ("census_classes",
              verdict.certificate.count if verdict.certificate else "-"),
             ("global_dimension", verdict.global_dimension or "-"),
             ("dynkin", verdict.dynkin or "-"),
             ("seed", args.seed)]
    _print_result_block(out, pairs)
    return verdict.exit_code


def cmd_derdim_bound(args, out):
    alg = parse_algebra_file(args.file)
    rep = derdim_upper_bound(alg)
    for name, value in rep.components():
        print(f"{name}: {value}", file=out)
    print(f"derived dimension upper bound: {rep.bound}", file=out)
    _print_result_block(out, [("bound", rep.bound)])
    return 0


def cmd_derdim_crosscheck(args, out):
    alg = parse_algebra_file(args.file)
    rep = crosscheck_trivext(alg, dim_cap=args.dim_cap, seed=args.seed)
    print(f"trivial-extension cross-check for {alg.name}:", file=out)
    print(f"window census: {rep.census_count} gr-indecomposables with "
          f"nonzero degree-0 part (dim cap {rep.dim_cap}); "
          f"saturated: {rep.census_saturated}", file=out)
    for orbit in rep.orbits:
        esc = orbit.first_escape if orbit.first_escape is not None \
            else "not within budget"
        extra = " (literal bound violated)" if orbit.literal_violated else ""
        print(f"simple {orbit.vertex}: first escape {esc}, conservative "
              f"bound {orbit.bound_conservative}, literal bound "
              f"{orbit.bound_literal}{extra}", file=out)
    print(f"consistent: {rep.consistent}", file=out)
    for note in rep.notes:
        print(f"note: {note}", file=out)
    _print_result_block(out, [("census", rep.census_count),
                              ("saturated", rep.census_saturated),
                              ("consistent", rep.consistent)])
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="derizero",
        description="exact derived-dimension-zero toolkit for "
                    "finite-dimensional algebras")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for all randomized procedures")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("algebra", help="invariants of an algebra file")
    p.add_argument("file")
    p.add_argument("--gldim-cap", type=int, default=24)

    p = sub.add_parser("module", help="decompose a module file")
    p.add_argument("file")

    p = sub.add_parser("graded", help="graded machinery over the trivial "
                                      "extension of an algebra")
    gsub = p.add_subparsers(dest="graded_command")
    po = gsub.add_parser("orbit")
    po.add_argument("file")
    po.add_argument("--vertex", type=int, default=None)
    po.add_argument("--max-steps", type=int, default=24)
    pc = gsub.add_parser("census")
    pc.add_argument("file")
    pc.add_argument("--dim-cap", type=int, default=4)
    pc.add_argument("--census-field", type=int, default=2)

    p = sub.add_parser("trivext", help="emit the trivial extension dump")
    p.add_argument("file")

    p = sub.add_parser("minimize", help="minimal/contractible decomposition")
    p.add_argument("file")

    p = sub.add_parser("decompose", help="Krull-Schmidt of a complex file")
    p.add_argument("file")

    p = sub.add_parser("sglobal", help="strong global dimension search")
    p.add_argument("file")
    p.add_argument("--width-cap", type=int, default=4)
    p.add_argument("--mult-cap", type=int, default=1)

    p = sub.add_parser("census", help="census of minimal indecomposable "
                                      "complexes up to shift")
    p.add_argument("file")
    p.add_argument("--width-cap", type=int, default=3)
    p.add_argument("--mult-cap", type=int, default=2)
    p.add_argument("--census-field", type=int, default=2)
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("derdim", help="derived-dimension-zero decision")
    dsub = p.add_subparsers(dest="derdim_command")
    pd = dsub.add_parser("decide")
    pd.add_argument("file")
    pd.add_argument("--width-cap", type=int, default=3)
    pd.add_argument("--mult-cap", type=int, default=2)
    pd.add_argument("--census-field", type=int, default=2)
    pd.add_argument("--threads", type=int, default=1)
    pb = dsub.add_parser("bound")
    pb.add_argument("file")
    pk = dsub.add_parser("crosscheck")
    pk.add_argument("file")
    pk.add_argument("--dim-cap", type=int, default=None)
    return parser


def run(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    handlers = {
        "algebra": cmd_algebra,
        "module": cmd_module,
        "trivext": cmd_trivext,
        "minimize": cmd_minimize,
        "decompose": cmd_decompose,
        "sglobal": cmd_sglobal,
        "census": cmd_census,
    }
    try:
        if args.command in handlers:
            return handlers[args.command](args, out)
        if args.command == "graded":
            if args.graded_command == "orbit":
                return cmd_graded_orbit(args, out)
            if args.graded_command == "census":
                return cmd_graded_census(args, out)
            print("graded: choose orbit or census", file=sys.stderr)
            return EXIT_PARSE
        if args.command == "derdim":
            if args.derdim_command == "decide":
                return cmd_derdim_decide(args, out)
            if args.derdim_command == "bound":
                return cmd_derdim_bound(args, out)
            if args.derdim_command == "crosscheck":
                return cmd_derdim_crosscheck(args, out)
            print("derdim: choose decide, bound or crosscheck",
                  file=sys.stderr)
            return EXIT_PARSE
        print("missing or unknown subcommand", file=sys.stderr)
        return EXIT_PARSE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (AlgebraError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
