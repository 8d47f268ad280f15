"""Acceptance criteria 1-9, each with its runtime bound.

Under pytest the per-criterion lines appear in the terminal summary; run this
file directly (``python tests/test_acceptance.py``) to print only those lines.
"""
import sys

import pytest

from laurent_duality.report import FAIL, PASS
from laurent_duality.suite import CRITERIA, SuiteConfig, run_criterion

RESULTS = {}


def _line(c, rep, elapsed):
    counts = rep.counts()
    bound = f", bound {c.time_limit:g}s" if c.time_limit else ""
    status = "PASS" if rep.passed else "FAIL"
    return (f"criterion {c.number}: {status}  {c.title}  "
            f"({counts[PASS]}/{len(rep.assertions)} assertions, {elapsed:.2f}s{bound})")


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{c.number}" for c in CRITERIA])
def test_criterion(criterion):
    rep, elapsed = run_criterion(criterion, SuiteConfig.from_env())
    RESULTS[criterion.number] = _line(criterion, rep, elapsed)
    failed = [f"{a.id}: {a.witness}" for a in rep.assertions if a.status != PASS]
    assert rep.passed, "\n".join(failed[:10])
    assert all(a.status != FAIL for a in rep.assertions)
    if criterion.time_limit is not None:
        assert elapsed < criterion.time_limit


if __name__ == "__main__":
    ok = True
    for c in CRITERIA:
        rep, elapsed = run_criterion(c, SuiteConfig.from_env())
        print(_line(c, rep, elapsed), flush=True)
        ok &= rep.passed
    sys.exit(0 if ok else 1)
