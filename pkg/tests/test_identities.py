from fractions import Fraction

import pytest

import reference_tables as ref
from srstirling import identities
from srstirling.indexset import ALL, ODD, parse

GRID = [parse(s) for s in ref.GRID_SETS]


@pytest.mark.parametrize("S", GRID, ids=str)
@pytest.mark.parametrize("name", sorted(identities.SECOND_KIND))
def test_second_kind_identity(S, name):
    for r in range(4):
        assert identities.SECOND_KIND[name](S, r, 7) == []


@pytest.mark.parametrize("S", GRID, ids=str)
@pytest.mark.parametrize("name", sorted(identities.FIRST_KIND))
def test_first_kind_identity(S, name):
    for r in range(4):
        assert identities.FIRST_KIND[name](S, r, 6) == []


def test_broder_recurrence():
    for r in range(4):
        assert identities.check_broder(r, 8) == []


def test_check_all_reports_every_family():
    report = identities.check_all(ALL, 1, 4)
    assert set(report) == set(identities.SECOND_KIND) | set(identities.FIRST_KIND) | {"broder"}
    assert "broder" not in identities.check_all(ODD, 1, 4)


def test_mismatch_detection():
    # a wrong coefficient must be reported with both sides
    out = []
    identities._record(out, "probe", {"n": 3}, Fraction(1), Fraction(2))
    assert len(out) == 1
    assert str(out[0]) == "probe(n=3): lhs=1 rhs=2"
