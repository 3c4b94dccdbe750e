"""The ten acceptance criteria, each at its stated tolerance and runtime budget.

Every test prints one ``ACn PASS|FAIL`` line (shown even without ``-s``).
"""
import math

import pytest

from artifact import acceptance as ac


def _report(capsys, res):
    line = (f"{res['id']:>5} {res['status'].upper():4} {res['runtime_ms'] / 1e3:8.2f}s "
            f"(budget {res['budget_ms'] / 1e3:.0f}s)  {res['title']}: {res['detail']}")
    with capsys.disabled():
        print("\n" + line)
    assert res["status"] == "pass", line


def test_ac1_polynomial_coefficients(capsys):
    res = ac.check_polynomials()
    _report(capsys, res)
    assert res["tol"] == 1e-12


def test_ac2_ode_residuals(capsys):
    res = ac.check_ode()
    _report(capsys, res)
    assert res["value"] <= 1e-9


def test_ac3_family_a_gram(capsys):
    res = ac.check_eq9()
    _report(capsys, res)
    assert res["tol"] == 1e-8 and res["expected"] == pytest.approx(list(ac.EQ9_DIAG))


def test_ac4_family_b_gram(capsys):
    res = ac.check_eq17()
    _report(capsys, res)
    assert res["tol"] == 1e-8
    assert res["expected"][:3] == pytest.approx([15 * math.sqrt(math.pi) / 8, 3 * math.sqrt(math.pi) / 4,
                                                 math.sqrt(math.pi) / 5])


def test_ac5_parseval_corpus(capsys):
    assert len(ac.parseval_corpus()) == 6
    res = ac.check_parseval()
    _report(capsys, res)
    assert res["tol"] == 1e-6


@pytest.mark.slow
def test_ac6_first_transformed_family(capsys, jobs):
    res = ac.check_theorem1(jobs=jobs)
    _report(capsys, res)
    assert res["tol"] == 1e-6


@pytest.mark.slow
def test_ac7_second_transformed_family(capsys, jobs):
    res = ac.check_theorem2(jobs=jobs)
    _report(capsys, res)
    assert res["tol"] == 1e-6


def test_ac8_transform_calibration(capsys):
    res = ac.check_calibration()
    _report(capsys, res)
    assert res["tol"] == 1e-8


def test_ac9_closed_form_consistency(capsys):
    res = ac.check_consistency()
    _report(capsys, res)
    assert res["tol"] == 1e-10


def test_ac10_findings_recorded(capsys):
    res = ac.check_findings()
    _report(capsys, res)
    assert res["value"] != "agree" and "s=1: closed=4.847730786" in res["finding"]
