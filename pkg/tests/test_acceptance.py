"""Acceptance gate: every criterion below runs at its mandated bounds in
exact rational arithmetic (tolerance zero) and must finish inside its
time budget.  Each test prints one PASS/FAIL line for the criterion it
covers; run with -s to see them, or read the -v test lines."""

import json
import subprocess
import sys
import time

from polylie import freelie, hkr, polydiff, symgrp, tlie


def _criterion(number, description, budget_s, report):
    ok = report.ok
    detail = "" if ok else "; ".join(
        "%s: %s" % (c.name, c.detail) for c in report.failures()
    )
    line = "%s  [%2d] %s" % ("PASS" if ok else "FAIL", number, description)
    if detail:
        line += " :: " + detail
    print(line)
    assert ok, detail
    return report


def test_acceptance_01_pbw_bijective():
    start = time.monotonic()
    report = freelie.verify_pbw(q_max=2, n_max=5)
    elapsed = time.monotonic() - start
    _criterion(1, "symmetrization bijective degreewise, dims q^n (q <= 2, n <= 5)", 5, report)
    assert elapsed < 5


def test_acceptance_02_commuting_transform_diagram():
    start = time.monotonic()
    report = freelie.verify_theorem6(q_max=2, max_sym_len=3, max_deg=2)
    elapsed = time.monotonic() - start
    _criterion(2, "multiplication route equals series-transform route (exhaustive)", 30, report)
    assert elapsed < 30


def test_acceptance_03_group_ring_star_identity():
    start = time.monotonic()
    report = symgrp.verify_star_identity(k_max=4)
    elapsed = time.monotonic() - start
    _criterion(3, "weighted composite sum fixes the inclusion element, k <= 4", 10, report)
    assert elapsed < 10


def test_acceptance_04_dynkin_projector():
    start = time.monotonic()
    report = symgrp.verify_dynkin(n_max=6)
    elapsed = time.monotonic() - start
    _criterion(4, "e_n quasi-idempotent and (1/n) e_n projects onto brackets, n <= 6", 10, report)
    assert elapsed < 10


def test_acceptance_05_hochschild_differential():
    start = time.monotonic()
    report = polydiff.verify_hochschild_basics(
        m_max=2, samples=50, seed=0, order_max=4, coeff_deg=2
    )
    elapsed = time.monotonic() - start
    _criterion(5, "d squared zero, coefficient-linear, pointwise oracle (50 samples)", 20, report)
    assert elapsed < 20


def test_acceptance_06_generator_closure():
    start = time.monotonic()
    report = polydiff.verify_prop3_closure(m_max=2, order_max=4, coeff_deg=2)
    elapsed = time.monotonic() - start
    _criterion(6, "d of generator slots stays in the Lie subspace, multinomial constants", 10, report)
    assert elapsed < 10


def test_acceptance_07_hopf_axioms():
    start = time.monotonic()
    report = polydiff.verify_hopf_axioms(m_max=2, samples=50, seed=0)
    elapsed = time.monotonic() - start
    _criterion(7, "Leibniz, coassociativity, algebra-map coproduct, counit (50 samples)", 20, report)
    assert elapsed < 20


def test_acceptance_08_connection_commutator():
    start = time.monotonic()
    report = polydiff.verify_theorem2(m_max=2, degree_max=3, samples=30, seed=0)
    elapsed = time.monotonic() - start
    _criterion(8, "signed connection commutator equals slot bracket (30 seeded elements)", 20, report)
    assert elapsed < 20


def test_acceptance_09_operator_level_identity():
    start = time.monotonic()
    report = hkr.verify_theorem1_dpoly(m_max=2, max_sym_len=3, max_deg=2, coeff_deg=1)
    elapsed = time.monotonic() - start
    _criterion(9, "symmetrized-product identity inside the operator algebra", 60, report)
    assert elapsed < 60


def test_acceptance_10_wedge_inclusion_factorizations():
    start = time.monotonic()
    report = hkr.verify_hkr_factorization(m_max=3, k_max=3)
    elapsed = time.monotonic() - start
    _criterion(10, "antisymmetrized inclusion factorizations, exhaustive k <= 3, m <= 3", 10, report)
    assert elapsed < 10


def test_acceptance_11_adams_eigenvalues():
    start = time.monotonic()
    report = hkr.verify_adams_eigen(p_list=(2, 3), k_max=3, m_max=3)
    elapsed = time.monotonic() - start
    _criterion(11, "power operation scales k-wedges by p^k and composes multiplicatively", 15, report)
    assert elapsed < 15


def test_acceptance_12_insertion_bracket_composites():
    start = time.monotonic()
    report = tlie.verify_observation1(k_max=4, j_max=3)
    elapsed = time.monotonic() - start
    _criterion(12, "word-calculus composites equal the group-ring expressions, k <= 4", 15, report)
    assert elapsed < 15


def test_acceptance_13_local_difference_witnesses():
    start = time.monotonic()
    report = tlie.verify_theorem5_local(k_max=3, m_max=2, sym_k_max=4)
    elapsed = time.monotonic() - start
    _criterion(13, "diagonal is symmetrization; inclusion difference certified exact", 60, report)
    assert elapsed < 60
    emitted = [c for c in report.checks if c.name.startswith("inclusion_difference") and c.witness]
    assert emitted, "witness strings must be emitted"


def test_acceptance_14_first_order_bracket_witnesses():
    start = time.monotonic()
    report = polydiff.verify_atiyah_witnesses(m_max=2, pairs=20, coeff_deg=2, seed=0)
    elapsed = time.monotonic() - start
    _criterion(14, "vector-field bracket witnesses exist; antisymmetric class has none", 20, report)
    assert elapsed < 20


def test_acceptance_15_cli_determinism(tmp_path):
    start = time.monotonic()
    blobs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        proc = subprocess.run(
            [sys.executable, "-m", "polylie.cli", "--suite", "all", "--json", str(path), "--quiet"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stdout + proc.stderr
        data = json.loads(path.read_text())
        assert data["ok"] is True
        for check in data["checks"]:
            check.pop("elapsed_ms", None)
        blobs.append(json.dumps(data, sort_keys=True))
    elapsed = time.monotonic() - start
    ok = blobs[0] == blobs[1] and elapsed < 180
    print(
        "%s  [15] full-suite CLI exits 0 with byte-stable JSON modulo timings"
        % ("PASS" if ok else "FAIL")
    )
    assert blobs[0] == blobs[1]
    assert elapsed < 180
