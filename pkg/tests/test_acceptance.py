"""End-to-end acceptance checks. Each test prints exactly one PASS/FAIL line."""
from __future__ import annotations

import json
import random
import time

import pytest

from mockq.bailey import INFINITY, PAIR_NAMES, builtin_pair, chain_step, limit_identity, verify_pair
from mockq.catalog import eval_named
from mockq.cli import main
from mockq.indefinite import f_indef, hm_check
from mockq.products import poch_infinite
from mockq.qcore import monomial
from mockq.verifier import builtin_suite, check_identity, parse_suite, perturbed, select

from _oracle import as_dict, pentagonal, series_to_list
from test_indefinite import double_sum


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            print(f"\n[acceptance {number:2d}] {status}  {title}" + (f"  ({detail})" if detail else ""))
        assert ok, f"criterion {number} failed: {detail}"
    return emit


def _run(specs, order=None):
    reports = [check_identity(s, order) for s in specs]
    bad = [f"{r.identity}: {r.status}" for r in reports if not r.ok]
    return reports, bad


def test_main_theorem(report):
    spec = select(builtin_suite(), names=["thm-main"])[0]
    t0 = time.perf_counter()
    r = check_identity(spec, 100)
    secs = time.perf_counter() - t0
    report(1, "main theorem, all coefficients below q^100 vanish", r.ok and secs < 120, f"{r.status}, {secs:.2f}s")


def test_hm_decomposition(report):
    x, y = monomial(-1, 2), monomial(-1, 3)
    failures = []
    slowest = 0.0
    for n, p in [(1, 1), (2, 1), (3, 1), (1, 2), (3, 2)]:
        t0 = time.perf_counter()
        ok, mismatch, _ = hm_check(n, p, x, y, 40)
        slowest = max(slowest, time.perf_counter() - t0)
        if not ok or slowest > 60:
            failures.append(f"(n,p)=({n},{p}) {mismatch}")
    report(2, "f - g - theta vanishes below q^40 for five (n,p)", not failures,
           "; ".join(failures) or f"slowest {slowest:.2f}s")


def test_m_function_laws(report):
    xs = ["-q", "-q^2", "2*q", "q^3", "-1/2*q"]
    zs = ["q^2", "-q", "-q^3"]
    lines = []
    k = 0
    for xa in xs:
        for za in zs:
            k += 1
            lines.append(f"inv{k} @40 : m({xa}, 5, {za}) == ({xa})^-1*m(({xa})^-1, 5, ({za})^-1)")
            lines.append(f"shz{k} @40 : m({xa}, 5, {za}) == m({xa}, 5, q^5*{za})")
            lines.append(f"chz{k} @40 : m({xa}, 5, {za}) == m({xa}, 5, q^4) + delta({xa}, 5, {za}, q^4)")
    reports, _ = _run(parse_suite("\n".join(lines)))
    # grid points with a vanishing denominator are rejected up front, not evaluated
    skipped = [r for r in reports if r.status == "error" and "NonGenericParameters" in r.error]
    bad = [f"{r.identity}: {r.status}" for r in reports if not r.ok and r not in skipped]
    _, bad_reg = _run(select(builtin_suite(), tags=["m-props"]), 40)
    checked = len(reports) - len(skipped)
    report(3, f"m-function laws at base q^5 on {checked} grid instances", not (bad or bad_reg) and checked >= 24,
           "; ".join(bad + bad_reg) or f"{len(skipped)} non-generic points skipped")


def test_bailey_machinery(report):
    problems = []
    for name in PAIR_NAMES:
        if not verify_pair(builtin_pair(name), 12, 40).ok:
            problems.append(f"pair {name}")
    for rho1, rho2 in [(INFINITY, INFINITY), (monomial(-1), INFINITY), (monomial(-1), monomial(-1, 1))]:
        for name in ("fifth_order", "slater_L6"):
            if not verify_pair(chain_step(builtin_pair(name), rho1, rho2), 8, 30).ok:
                problems.append(f"chain {name} {rho1} {rho2}")
    lhs, rhs = limit_identity(builtin_pair("fifth_order"), INFINITY, INFINITY, 60)
    if not (lhs.eq_up_to(rhs, 60)[0] and lhs.eq_up_to(eval_named("f1", (), 60), 60)[0]):
        problems.append("fifth-order limit")
    lhs, rhs = limit_identity(builtin_pair("early_conditions", 2), INFINITY, INFINITY, 60)
    scaled = lhs * poch_infinite(monomial(-1, 1), 2, 60)
    if not (lhs.eq_up_to(rhs, 60)[0] and scaled.eq_up_to(eval_named("J1", (), 60), 60)[0]):
        problems.append("base-two limit")
    report(4, "Bailey pairs, chain steps and limiting identities", not problems, "; ".join(problems))


def test_indefinite_theta_identities(report):
    suite = builtin_suite()
    specs = select(suite, tags=["indef", "b1k"])
    expected = {"f1-indef", "J1-indef", "Mk-k1", "Mk-k2", "V-f321", "W-f121", "Y-f146", "hikami"}
    expected |= {f"b1k-k{k}-{form}" for k in (1, 2, 3) for form in ("appell", "jm")}
    _, bad = _run(specs, 40)
    missing = expected - {s.name for s in specs}
    bad += [f"missing {m}" for m in sorted(missing)]
    report(5, f"{len(specs)} indefinite-theta identities below q^40", not bad, "; ".join(bad))


def test_transformation_suite(report):
    specs = select(builtin_suite(), tags=["transform"])
    _, bad = _run(specs, 40)
    report(6, f"{len(specs)} transformation identities below q^40", not bad and len(specs) >= 20, "; ".join(bad))


def test_consistency_anchors(report):
    specs = select(builtin_suite(), tags=["consistency"])
    _, bad = _run(specs, 60)
    report(7, f"{len(specs)} consistency anchors below q^60", not bad and len(specs) == 4, "; ".join(bad))


def test_oracles(report):
    problems = []
    _, bad = _run(select(builtin_suite(), tags=["oracle"]), 60)
    problems += bad
    if series_to_list(poch_infinite(monomial(1, 1), 1, 60), 60) != pentagonal(60):
        problems.append("pentagonal list oracle")
    rng = random.Random(20240611)
    cases = 0
    while cases < 12:
        a, c = rng.randint(1, 3), rng.randint(1, 3)
        b = rng.randint(int((a * c) ** 0.5) + 1, 5)
        xc, yc = rng.choice([1, -1, 2]), rng.choice([1, -1, -2])
        xe, ye = rng.randint(-1, 3), rng.randint(-1, 3)
        got = f_indef(a, b, c, monomial(xc, xe), monomial(yc, ye), 1, 30)
        want = double_sum(a, b, c, xc, xe, yc, ye, 30)
        if as_dict(got, min([0, *want]) - 5, 30) != want:
            problems.append(f"f_{{{a},{b},{c}}}({xc}q^{xe}, {yc}q^{ye})")
        cases += 1
    report(8, "product/sum oracles below q^60 and 12 random double-sum checks below q^30",
           not problems, "; ".join(problems))


def test_fault_injection(report):
    names = ["fofq", "Sspec", "T1-def", "X-445", "euler-pentagonal"]
    misses = []
    for spec in select(builtin_suite(), names=names):
        r = check_identity(perturbed(spec))
        mm = r.first_mismatch
        if r.status != "fail" or mm is None or mm.exponent != spec.order - 1:
            misses.append(f"{spec.name}: {r.status} at {mm and mm.exponent}")
    report(9, "perturbed copies of 5 identities fail at q^(N-1)", not misses and len(names) == 5, "; ".join(misses))


def test_parallel_runs_agree(report, tmp_path, capsys):
    paths = []
    codes = []
    for jobs in (1, 8):
        path = tmp_path / f"jobs{jobs}.json"
        codes.append(main(["--jobs", str(jobs), "--json", str(path)]))
        paths.append(path)
    capsys.readouterr()
    rows = [[{k: v for k, v in r.items() if k != "ms"} for r in json.loads(p.read_text())] for p in paths]
    same = rows[0] == rows[1]
    report(10, f"full suite with --jobs 1 and --jobs 8 gives identical JSON ({len(rows[0])} identities)",
           same and codes == [0, 0], f"exit codes {codes}")
