"""The verification suites must pass on their own seeded trials."""

from goimll.verify import (
    verify_adjunction,
    verify_assoc,
    verify_category,
    verify_invariance,
    verify_matrix,
)


def test_adjunction_suite():
    report = verify_adjunction(trials=40, seed=42)
    assert report.ok, report.format()
    assert report.format().endswith("40/40 pass")


def test_invariance_suite():
    assert verify_invariance(trials=30, seed=1).ok


def test_assoc_suite():
    assert verify_assoc(trials=30, seed=2).ok


def test_matrix_suite():
    assert verify_matrix(trials=20, seed=3).ok


def test_category_suite():
    report = verify_category(seed=4, window=2**12, trials=10)
    assert report.ok, report.format()


def test_reports_are_deterministic():
    a = verify_adjunction(trials=25, seed=9)
    b = verify_adjunction(trials=25, seed=9)
    assert a == b
