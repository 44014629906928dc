"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 failed internal verification.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import rankweyl as rw
from .chevalley import centralizer_dim, lie_algebra
from .exactalg import FieldConfig
from .kacautos import counting_check, grading, kac_automorphism
from .rootsystem import affine_diagram, build
from .weyl import generate

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 2, 3

MD_HEADER = "| Kac diagram | m | w | r | W_c | L | θ\\|_L |\n|---|---|---|---|---|---|---|"


def _md_row(row: dict) -> str:
    cells = [row["kac"], str(row["order"]), row["carter"], str(row["rank"]),
             row["little_weyl"]["name"], row["kw"]["reduction"], row["kw"]["theta_on_L"]]
    return "| " + " | ".join(cells) + " |"


def format_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, ensure_ascii=False, indent=2)
    return "\n".join([MD_HEADER] + [_md_row(r) for r in rows])


def cmd_tables(args) -> int:
    try:
        res = rw.classify(args.type, char=args.char, seed=args.seed)
    except (rw.RankDisagreement, AssertionError, RuntimeError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rows = [r.to_json() for r in res.rows]
    print(format_rows(rows, args.format))
    notes = [f"{r.kac}: {n}" for r in res.rows for n in r.notes]
    for n in notes:
        print(f"note: {n}", file=sys.stderr)
    return EXIT_OK


def _dossier(rep: rw.DiagramReport) -> dict:
    g = rep.generic
    out = {
        "type": rep.type_key,
        "kac": str(rep.diagram),
        "order": rep.order,
        "dims": list(rep.dims),
        "g0": rep.g0_type[0] + (f"+T{rep.g0_type[1]}" if rep.g0_type[1] else ""),
        "rank": rep.rank,
        "rank_weyl": rep.weyl_rank,
        "stabilizer_samples": g.samples,
        "notes": list(rep.notes),
    }
    if rep.rank == 0:
        gr = grading(kac_automorphism(rep.diagram, lie_algebra(TYPES_BASE[rep.type_key])), rep.F, rep.order)
        x = rw.dense_orbit_witness(gr) or g.witness
        out["zero_rank"] = {
            "dim_g0": g.dim_g0,
            "dim_g1": g.dim_g1,
            "witness": str(x) if x is not None else None,
            "witness_centralizer_in_g0": centralizer_dim(x, gr.spaces[0]) if x is not None else None,
        }
        return out
    lw = rep.little_weyl
    out.update({
        "carter": rep.carter,
        "cartan_subspace_weyl_model": [str(x) for x in rep.cartan.basis],
        "semisimple_witness": str(g.semisimple_witness) if g.semisimple_witness else None,
        "little_weyl": {"name": lw.name, "order": lw.order, "degrees": list(lw.degrees),
                        "centralizer_order": lw.centralizer_order,
                        "certificates": list(lw.certificates)},
        "kw": {"reduction": rep.kw.reduction, "theta_on_L": rep.kw.theta_on_L,
               "subsystem": rep.kw.subsystem, "n_regular": rep.kw.n_regular,
               "degrees": list(rep.kw.degrees), "criterion": rep.kw.criterion,
               "witness": str(rep.kw.witness)},
    })
    return out


TYPES_BASE = {k: v[0] for k, v in rw.TYPES.items()}


def cmd_analyze(args) -> int:
    try:
        rep = rw.analyze_diagram(args.type, args.diagram, char=args.char, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (rw.RankDisagreement, AssertionError, RuntimeError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(json.dumps(_dossier(rep), ensure_ascii=False, indent=2))
    return EXIT_OK


def cmd_classes(args) -> int:
    base, twist = rw.TYPES[args.type]
    if twist == 3:
        for c in rw.weyl_candidates(args.type):
            print(f"{c.label}\torder {c.order}\t|Z_W(D4)| {len(c.centralizer)}")
        return EXIT_OK
    W = generate(build(base))
    for cc in W.classes:
        print(f"{cc.label}\torder {cc.element_order}\tsize {cc.class_size}\t|Z| {cc.centralizer_order}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites; each yields (item, ok, detail)


def _suite_counting(seed):
    for t, base in (("g2", "G2"), ("f4", "F4")):
        aff = affine_diagram(base)
        for m in range(2, sum(aff.marks) + 1):
            lhs, rhs, ok = counting_check(aff, m)
            yield f"{t} m={m}", ok, f"{lhs} = {rhs}" if ok else f"{lhs} != {rhs}"


def _suite_zero_rank(seed):
    alg = lie_algebra("F4")
    reference = {"00011": "e_0010+e_0001", "00010": "e_0010+f_1231"}
    for t in rw.TYPES:
        for rep in rw.classify(t, seed=seed).zero_rank:
            gr = grading(kac_automorphism(rep.diagram, lie_algebra(TYPES_BASE[t])), rep.F, rep.order)
            x = rw.dense_orbit_witness(gr) or rep.generic.witness
            if t == "f4" and str(rep.diagram) in reference:
                x = alg.parse(reference[str(rep.diagram)], gr.F)
            ok = x is not None and len(gr.spaces[0]) - centralizer_dim(x, gr.spaces[0]) == len(gr.spaces[1])
            detail = f"dim g0={len(gr.spaces[0])} dim g1={len(gr.spaces[1])} witness={x}"
            yield f"{t} {rep.diagram}", ok, detail


def _suite_criterion(seed):
    for t in rw.TYPES:
        for key, rep in rw.classify(t, seed=seed).reports.items():
            if rep.rank == 0:
                continue
            lw = rep.little_weyl
            yield f"{t} {key}", lw.is_wc, f"W̄={lw.name} certificates={','.join(lw.certificates)}"


def _suite_kw(seed):
    for t in rw.TYPES:
        for key, rep in rw.classify(t, seed=seed).reports.items():
            if rep.rank == 0:
                continue
            kw = rep.kw
            yield (f"{t} {key}", kw.verified,
                   f"L={kw.reduction or kw.subsystem} {kw.theta_on_L} degrees={list(kw.degrees)}")


def _suite_jacobi(seed):
    for base, exhaustive in (("G2", True), ("F4", False), ("D4", False)):
        bad = lie_algebra(base).jacobi_violations(exhaustive=exhaustive, samples=10_000, seed=seed)
        yield base, not bad, "exhaustive" if exhaustive else "10000 random triples"


SUITES = {"counting": _suite_counting, "zero-rank": _suite_zero_rank, "criterion": _suite_criterion,
          "kw-sections": _suite_kw, "jacobi": _suite_jacobi}


def cmd_verify(args) -> int:
    ok_all = True
    try:
        for item, ok, detail in SUITES[args.suite](args.seed):
            ok_all &= bool(ok)
            print(f"{'PASS' if ok else 'FAIL'}\t{args.suite}\t{item}\t{detail}")
    except (rw.RankDisagreement, AssertionError, RuntimeError) as exc:
        print(f"FAIL\t{args.suite}\t{exc}")
        return EXIT_FAIL
    return EXIT_OK if ok_all else EXIT_FAIL


def _char(text: str) -> int:
    p = int(text)
    if p == 0:
        return 0
    try:
        FieldConfig.prime(1, p)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thetagroups",
                                 description="Positive-rank theta-groups of G2, F4 and D4^(3).")
    sub = ap.add_subparsers(dest="command", required=True)
    types = sorted(rw.TYPES)

    t = sub.add_parser("tables", help="regenerate a classification table")
    t.add_argument("--type", required=True, choices=types)
    t.add_argument("--format", default="md", choices=("json", "md"))
    t.add_argument("--char", type=_char, default=0, help="0 or a prime > 3")
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=cmd_tables)

    a = sub.add_parser("analyze", help="dossier for one Kac diagram")
    a.add_argument("--type", required=True, choices=types)
    a.add_argument("--diagram", required=True)
    a.add_argument("--char", type=_char, default=0)
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("classes", help="list Weyl group conjugacy classes")
    c.add_argument("--type", required=True, choices=types)
    c.set_defaults(func=cmd_classes)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
