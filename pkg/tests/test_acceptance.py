"""Acceptance criteria; each check prints one PASS/FAIL line (run with -s to see them).

Tolerances are pinned in hessrec.acceptance: worked example under 30 s,
each random round-trip batch under 10 s, diagonal-form checks under 60 s.
"""
import pytest

from hessrec.acceptance import CRITERIA


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    checks = CRITERIA[k](seed=0)
    assert checks
    for c in checks:
        print(c.line())
    failed = [c.line() for c in checks if not c.ok]
    assert not failed, "\n".join(failed)
