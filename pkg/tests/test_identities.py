"""
Tests for the identity catalog: every entry, the derivation chains, the
scalar witnesses and the failure reporting.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.identities import (
    IdentityEntry,
    UnknownEntryError,
    catalog,
    catalog_index,
    check_chain,
    check_scalar,
    lookup,
    verify_all,
    verify_identity,
)
from src.qexpr import Dissect, EvaluationError, f, q

SMALL_TRUNC = 40


def _params(entries):
    return [pytest.param(entry, id=entry.id) for entry in entries]


ALL = _params(catalog())
CHAINED = _params(e for e in catalog() if e.parent is not None)
SCALED = _params(e for e in catalog() if e.scalar is not None)


class TestCatalog:
    """Structure of the catalog."""

    def test_ids_unique(self):
        ids = [entry.id for entry in catalog()]
        assert len(ids) == len(set(ids))
        assert len(catalog_index()) == len(ids)

    @pytest.mark.parametrize("entry_id", [
        "HirSel3diss", "mun3n1", "nn1", "mun6n", "nn2", "lemma-18n2",
        "e-2n", "e-2n1", "e-16n11", "e-16n15", "e-32n29",
    ])
    def test_named_entries_present(self, entry_id):
        assert lookup(entry_id).id == entry_id

    def test_parents_resolve(self):
        index = catalog_index()
        for entry in catalog():
            if entry.parent is not None:
                assert entry.parent in index
                assert entry.chain, f"{entry.id} has a parent but no steps"

    def test_modes(self):
        assert lookup("HirSel3diss").mode == "exact"
        assert lookup("lemma-18n2").mode == "mod 8"
        assert lookup("delta-odd-squares-mod2").modulus == 2

    def test_unknown_id(self):
        with pytest.raises(UnknownEntryError):
            lookup("no-such-identity")
        with pytest.raises(KeyError):
            lookup("no-such-identity")

    def test_entry_validation(self):
        with pytest.raises(ValueError):
            IdentityEntry("x", f(1), f(1), modulus=1)
        with pytest.raises(ValueError):
            IdentityEntry("x", f(1), f(1), scalar=1)
        with pytest.raises(ValueError):
            IdentityEntry("x", f(1), f(1), chain=(Dissect(2, 0),))


class TestVerification:
    """Every entry holds at a small truncation."""

    @pytest.mark.parametrize("entry", ALL)
    def test_entry_holds(self, entry):
        report = verify_identity(entry, SMALL_TRUNC)
        assert report.passed, f"{entry.id} differs at {report.counterexample}"
        assert report.checked == SMALL_TRUNC
        assert report.note == entry.mode

    @pytest.mark.slow
    def test_default_truncations(self):
        failures = [r.id for r in verify_all() if not r.passed]
        assert failures == []

    @pytest.mark.slow
    @pytest.mark.parametrize("entry_id", ["e-16n11", "e-16n15"])
    def test_sixteen_dissections_hold_at_default_truncation(self, entry_id):
        entry = lookup(entry_id)
        assert not entry.finding
        report = verify_identity(entry)
        assert report.passed, f"{entry_id} differs at {report.counterexample}"
        assert check_chain(entry).passed
        assert check_scalar(entry).passed

    def test_counterexample_is_first_difference(self):
        bad = IdentityEntry("bad", f(1), f(1) + q(3))
        report = verify_identity(bad, 20)
        assert report.status == "fail"
        assert report.counterexample == (3, -1)

    def test_congruence_counterexample_is_reduced(self):
        bad = IdentityEntry("bad-mod", f(1), f(1) + 3 * q(4), modulus=8)
        assert verify_identity(bad, 20).counterexample == (4, 5)

    def test_finding_note(self):
        bad = IdentityEntry("bad-finding", f(1), f(2), finding=True)
        report = verify_identity(bad, 20)
        assert not report.passed
        assert "finding" in report.note
        assert report.finding
        assert not report.failed

    def test_minimum_truncation(self):
        with pytest.raises(ValueError):
            verify_identity(lookup("pentagonal"), 15)

    def test_evaluation_error_names_entry(self):
        broken = IdentityEntry("broken", 1 / (2 + q()), f(1))
        with pytest.raises(EvaluationError, match="^broken: "):
            verify_identity(broken, 20)


class TestChains:
    """Replaying derivations on the displays."""

    @pytest.mark.parametrize("entry", CHAINED)
    def test_chain_step(self, entry):
        report = check_chain(entry, SMALL_TRUNC)
        assert report.id == f"chain {entry.parent} -> {entry.id}"
        assert report.passed, f"{report.id} differs at {report.counterexample}"

    def test_no_parent(self):
        with pytest.raises(ValueError):
            check_chain(lookup("mun3n1"), SMALL_TRUNC)


class TestScalars:
    """Every coefficient of a left side is divisible by its witness."""

    @pytest.mark.parametrize("entry", SCALED)
    def test_divisible(self, entry):
        report = check_scalar(entry, SMALL_TRUNC)
        assert report.id == f"{entry.id} divisible by {entry.scalar}"
        assert report.passed, f"{report.id} fails at {report.counterexample}"

    def test_no_scalar(self):
        with pytest.raises(ValueError):
            check_scalar(lookup("pentagonal"), SMALL_TRUNC)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
