"""One test per acceptance criterion; each prints a single pass/fail line."""
import pytest

from motent.verify import CRITERIA, SUITES


@pytest.mark.parametrize("criterion", sorted(CRITERIA), ids=lambda n: f"C{n}-{CRITERIA[n]}")
def test_criterion(criterion, capsys):
    checks = SUITES[CRITERIA[criterion]]()
    failed = [c for c in checks if not c.passed]
    status = "PASS" if not failed else "FAIL"
    summary = "; ".join(f"{c.name}" + (f" ({c.detail})" if c.detail else "") for c in failed) or f"{len(checks)} checks"
    with capsys.disabled():
        print(f"\n[{status}] criterion {criterion} ({CRITERIA[criterion]}): {summary}")
    assert not failed, "\n".join(c.line() for c in failed)
