"""Acceptance criteria 1-10.

Each test prints one ``ACCEPT <n> PASS|FAIL`` line (collected again in the
terminal summary).  Numeric tolerances are pinned below; every other check
is an exact comparison.

Expected rows are transcribed from the published tables.  One entry differs
on purpose: the little Weyl group of the twisted F4 row is mu4, the value the
source's own lemma derives for that class, while its printed table shows
mu12 (see the decisions ledger).
"""
import json
import subprocess
import sys
import time
from math import gcd

import sympy

from thetagroups import rankweyl as rw
from thetagroups.chevalley import centralizer_dim, lie_algebra
from thetagroups.kacautos import counting_check, grading, kac_automorphism
from thetagroups.rootsystem import affine_diagram, build
from thetagroups.weyl import generate

#: wall-clock limits (seconds), pinned
G2_TIME_LIMIT = 10.0
F4_TIME_LIMIT = 120.0

RESULTS: list[str] = []


def report(n, ok, detail):
    line = f"ACCEPT {n:>2} {'PASS' if ok else 'FAIL'}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


TABLE1 = [("111", 6, "G2", 1, "μ6", (6,), "N-reg.", ""),
          ("011", 3, "A2", 1, "μ6", (6,), "N-reg.", ""),
          ("010", 2, "A1×Ã1", 2, "W(G2)", (2, 6), "N-reg.", "")]

TABLE2 = [("11111", 12, "F4", 1, "μ12", (12,), "N-reg.", ""),
          ("11101", 8, "B4", 1, "μ8", (8,), "Spin(9)", "Coxeter"),
          ("10101", 6, "F4(a1)", 2, "G5", (6, 12), "N-reg.", ""),
          ("01010", 6, "C3", 1, "μ6", (6,), "Sp(6)", "Coxeter"),
          ("11100", 6, "B3", 1, "μ6", (6,), "Spin(7)", "Coxeter"),
          ("10100", 4, "D4(a1)", 2, "G8", (8, 12), "N-reg.", ""),
          ("01001", 4, "B2", 1, "μ4", (4,), "Spin(5)", "Coxeter"),
          ("00100", 3, "A2×Ã2", 2, "G5", (6, 12), "N-reg.", ""),
          ("11000", 3, "A2", 1, "μ6", (6,), "Spin(7)", "positive 3-cycle"),
          ("10001", 3, "Ã2", 1, "μ6", (6,), "Sp(6)", "positive 3-cycle"),
          ("01000", 2, "A1^4", 4, "W(F4)", (2, 6, 8, 12), "N-reg.", ""),
          ("00001", 2, "Ã1", 1, "μ2", (2,), "short SL(2)", "Coxeter")]

TABLE3 = [("111", 12, "F4", 1, "μ4", (4,), "N-reg.", ""),
          ("101", 6, "F4(a1)", 2, "G4", (4, 6), "N-reg.", ""),
          ("010", 6, "C3", 1, "μ2", (2,), "SL(2)^3", "τ"),
          ("001", 3, "A2×Ã2", 2, "G4", (4, 6), "N-reg.", ""),
          ("100", 3, "Ã2", 1, "μ2", (2,), "SL(2)^3", "τ²")]

TABLES = {"g2": TABLE1, "f4": TABLE2, "d4-3": TABLE3}


def as_tuple(row: dict):
    lw, kw = row["little_weyl"], row["kw"]
    return (row["kac"], row["order"], row["carter"], row["rank"], lw["name"], tuple(lw["degrees"]),
            kw["reduction"], kw["theta_on_L"])


def cli_rows(type_key, *extra):
    t0 = time.perf_counter()
    out = subprocess.run([sys.executable, "-m", "thetagroups", "tables", "--type", type_key,
                          "--format", "json", *extra], capture_output=True, text=True, check=True)
    return json.loads(out.stdout), time.perf_counter() - t0


def diff(got, want):
    bad = [f"{g} != {w}" for g, w in zip(got, want) if g != w]
    if len(got) != len(want):
        bad.append(f"{len(got)} rows, expected {len(want)}")
    return bad


def test_criterion_01_table1():
    rows, dt = cli_rows("g2")
    bad = diff([as_tuple(r) for r in rows], TABLE1)
    report(1, not bad and dt < G2_TIME_LIMIT,
           f"G2 table {len(rows)} rows, exact match={not bad}, {dt:.1f}s (limit {G2_TIME_LIMIT}s) {bad}")


def test_criterion_02_table2():
    rows, dt = cli_rows("f4")
    bad = diff([as_tuple(r) for r in rows], TABLE2)
    report(2, not bad and dt < F4_TIME_LIMIT,
           f"F4 table {len(rows)} rows, exact match={not bad}, {dt:.1f}s (limit {F4_TIME_LIMIT}s) {bad}")


def test_criterion_03_table3():
    res = rw.classify("d4-3")
    bad = diff([as_tuple(r.to_json()) for r in res.rows], TABLE3)
    order9 = [(str(z.diagram), z.rank) for z in res.zero_rank if z.order == 9]
    ok = not bad and order9 and all(r == 0 for _, r in order9)
    report(3, ok, f"D4^(3) table exact match={not bad} {bad}; order-9 diagrams {order9} zero rank; "
                  "row 111 W_c=μ4 per the lemma (printed table: μ12)")


def test_criterion_04_zero_rank_certificates():
    alg = lie_algebra("F4")
    got = []
    for s, witness in (("00011", "e_0010+e_0001"), ("00010", "e_0010+f_1231")):
        rep = rw.analyze_diagram("f4", s, full=False)
        gr = grading(kac_automorphism(rep.diagram, alg), m=rep.order)
        x = alg.parse(witness, gr.F)
        in_g1 = gr.theta.apply(x) == gr.zeta(1) * x
        got.append((s, rep.rank, gr.dims[0], gr.dims[1], centralizer_dim(x, gr.spaces[0]), in_g1))
    want = [("00011", 0, 16, 5, 11, True), ("00010", 0, 18, 8, 10, True)]
    report(4, got == want, f"(diagram, rank, dim g0, dim g1, dim z_g0(x), x in g1) = {got}")


def test_criterion_05_centralizer_orders():
    W = generate(build("F4"))
    z = {c.label: len(W.centralizer(c.representative)) for c in W.classes if c.label in ("F4(a1)", "D4(a1)")}
    d4 = next(c for c in rw.weyl_candidates("d4-3") if c.label == "A2×Ã2")
    got = (z["F4(a1)"], z["D4(a1)"], len(d4.centralizer))
    report(5, got == (72, 96, 24), f"|Z(F4(a1))|, |Z(D4(a1))|, |Z_W(D4)(A2×Ã2)| = {got}")


def test_criterion_06_counting():
    aff = affine_diagram("F4")
    out = []
    for m in (2, 3, 4, 6):
        lhs, _, _ = counting_check(aff, m)
        # independent count of order-m points of a rank-4 torus (Mobius inversion)
        rhs = sum(sympy.mobius(m // d) * d ** 4 for d in sympy.divisors(m))
        out.append((m, lhs, int(rhs)))
    report(6, all(a == b for _, a, b in out), f"(m, lhs, rhs) = {out}")


W_DEGREES = {"g2": (2, 6), "f4": (2, 6, 8, 12)}


def expected_degrees(type_key, m):
    if type_key in W_DEGREES:
        return tuple(d for d in W_DEGREES[type_key] if d % m == 0)
    # triality fixes the degree 2 and 6 invariants and scales the two degree 4
    # ones by the two primitive cube roots of unity
    out = [d for d in (2, 6) if d % m == 0]
    if m // gcd(m, 4) == 3:
        out.append(4)
    return tuple(sorted(out))


def test_criterion_07_degree_identity():
    got = []
    for t in rw.TYPES:
        for r in rw.classify(t).rows:
            if r.kw["reduction"] == "N-reg.":
                got.append((t, r.kac, tuple(r.little_weyl["degrees"]), expected_degrees(t, r.order)))
    bad = [g for g in got if g[2] != g[3]]
    report(7, not bad and len(got) == 11, f"{len(got)} N-regular rows, mismatches {bad}")


def test_criterion_08_field_independence():
    base = {r.kac: r.to_json() for r in rw.classify("f4").rows if r.order in (2, 3, 4, 6)}
    out = []
    for p in (7, 13):
        res = rw.classify("f4", char=p, orders=(2, 3, 4, 6))
        rows = {r.kac: r.to_json() for r in res.rows}
        native = sum(1 for r in res.rows if not r.notes)
        out.append((p, rows == base, native, len(rows)))
    ok = all(same for _, same, _, _ in out) and all(n > 0 for _, _, n, _ in out)
    report(8, ok, "(p, identical, rows computed over F_p, rows) = " + str(out))


def test_criterion_09_property_suites():
    checks = {}
    checks["jacobi G2 exhaustive"] = not lie_algebra("G2").jacobi_violations(exhaustive=True)
    for t in ("F4", "D4"):
        checks[f"jacobi {t} 10^4"] = not lie_algebra(t).jacobi_violations(samples=10_000, seed=0)
    n_auto = 0
    compat = True
    for t in rw.TYPES:
        res = rw.classify(t)
        autos = [rep for rep in res.reports.values() if rep.rank > 0]
        autos += [z for z in res.zero_rank if t == "d4-3" and z.order == 9]
        for rep in autos:
            gr = grading(kac_automorphism(rep.diagram, lie_algebra(rw.TYPES[t][0])), m=rep.order)
            compat &= gr.theta.automorphism_violations() == []
            compat &= gr.compatibility_violations(pairs=4000, seed=0) == []
            if rep.rank:
                th = rep.matches[0].theta
                compat &= th.automorphism_violations() == []
                compat &= grading(th, m=rep.order).compatibility_violations(pairs=4000, seed=0) == []
            n_auto += 1
    checks[f"grading compatibility ({n_auto} automorphisms)"] = compat and n_auto == 22
    phi2 = all(rw.phi2_trivial_on_c(m.candidate, rep.order)
               for t in rw.TYPES for rep in rw.classify(t).reports.values() if rep.rank
               for m in rep.matches[:1])
    checks["W(Phi2) trivial on c"] = phi2
    agree = [(t, k) for t in rw.TYPES for k, rep in rw.classify(t).reports.items()
             if rep.rank != rep.weyl_rank or (rep.rank and rep.cartan.dim != rep.rank)]
    n_diag = sum(len(rw.classify(t).reports) for t in rw.TYPES)
    checks[f"rank agreement ({n_diag} diagrams)"] = not agree
    report(9, all(checks.values()), "; ".join(f"{k}={v}" for k, v in checks.items()))


def test_criterion_10_kw_evidence():
    got = []
    for t in rw.TYPES:
        for rep in rw.classify(t).reports.values():
            if rep.rank:
                kw = rep.kw
                ok = kw.verified and rep.cartan.verify() and kw.degrees == rep.little_weyl.degrees
                got.append((t, str(rep.diagram), ok))
    bad = [g for g in got if not g[2]]
    report(10, len(got) == 20 and not bad, f"{len(got) - len(bad)}/{len(got)} rows verified {bad}")
