import pytest

from superstar import Signature, poisson
from superstar.checks import CHECKS, run_checks


@pytest.mark.parametrize("sig", [Signature(0, 0, 0), Signature(1, 0, 0), Signature(0, 2, 1), Signature(2, 1, 1)],
                         ids=str)
def test_suite_passes(sig):
    results = run_checks(sig, degree=3, cases=12, seed=1)
    assert len(results) == len(CHECKS)
    assert all(r.passed for r in results), [r.line() for r in results if not r.passed]


def test_crash_counts_as_failure(monkeypatch):
    def boom(*args):
        raise RuntimeError("boom")

    monkeypatch.setattr(poisson, "poisson_bracket", boom)
    results = {r.name: r for r in run_checks(Signature(1, 1, 1), cases=4)}
    assert not results["poisson: super-Jacobi"].passed
    assert "RuntimeError" in results["poisson: super-Jacobi"].failures[0]


def test_progress_callback():
    seen = []
    run_checks(Signature(1, 0, 0), cases=2, progress=seen.append)
    assert [r.name for r in seen] == [name for name, _ in CHECKS]
