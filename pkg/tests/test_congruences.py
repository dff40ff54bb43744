"""
Tests for progression claims, the theorem generators, equivalences and the
congruence scan.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src import series as S
from src.config import ResourceRefusal
from src.congruences import (
    FINDING_NOTE,
    ClaimParameterError,
    check_equivalence,
    check_many,
    check_progression,
    confirm_counterexample,
    default_suite,
    family_offsets,
    inv_mod,
    james3_residues,
    scan,
    theorem_claims,
    theorem_ids,
)
from src.models import ProgressionClaim


def _triples(claims):
    return [(c.ell, c.A, c.B, c.M) for c in claims]


class CountingProvider:
    """Series provider that records what it was asked to build."""

    def __init__(self):
        self.calls = []

    def __call__(self, ell, trunc, modulus):
        self.calls.append((ell, trunc, modulus))
        return S.rast_series(ell, trunc, modulus)


class TestProgressionChecks:
    """Checking a single claim."""

    def test_elthm_passes(self):
        for claim in theorem_claims("elthm"):
            report = check_progression(claim, 100)
            assert report.passed, f"{claim.id}: {report.counterexample}"
            assert report.checked == 100
            assert "consistent with proved theorem" in report.note

    def test_weakened_claim_fails_at_first_term(self):
        report = check_progression(ProgressionClaim(3, 9, 4, 24), 1)
        assert report.status == "fail"
        assert report.counterexample == (0, 12)

    def test_counterexample_reduced_mod_m(self):
        report = check_progression(ProgressionClaim(3, 1, 0, 5), 10)
        assert report.counterexample == (0, 1)
        report = check_progression(ProgressionClaim(3, 3, 0, 2), 5)
        assert report.counterexample == (0, 1)

    def test_start_offset(self):
        claim = ProgressionClaim.normalized(3, 9, 13, 12)
        assert (claim.B, claim.start) == (4, 1)
        assert claim.position(0) == 13
        assert check_progression(claim, 50).passed

    def test_ceiling(self):
        with pytest.raises(ResourceRefusal):
            check_progression(ProgressionClaim(6, 54, 38, 8), 10, ceiling=100)

    def test_custom_provider(self):
        provider = CountingProvider()
        check_progression(ProgressionClaim(3, 3, 1, 2), 20, provider=provider)
        assert provider.calls == [(3, 61, 2)]

    def test_confirm_counterexample(self):
        report = check_progression(ProgressionClaim(3, 9, 4, 24), 1)
        assert confirm_counterexample(report) is True
        assert confirm_counterexample(check_progression(ProgressionClaim(3, 3, 1, 2), 5)) is None


class TestGrouping:
    """Many claims, one series per (ell, M)."""

    def test_one_build_per_group(self):
        claims = theorem_claims("thm-ellr", ell=5) + theorem_claims("thm-2ell", ell=3)
        provider = CountingProvider()
        reports = list(check_many(claims, 40, provider=provider))
        assert len(reports) == len(claims)
        assert all(r.passed for r in reports)
        assert sorted((ell, M) for ell, _, M in provider.calls) == [(5, 2), (6, 2)]

    def test_group_built_to_largest_need(self):
        claims = [ProgressionClaim(3, 3, 1, 2), ProgressionClaim(3, 9, 4, 2)]
        provider = CountingProvider()
        list(check_many(claims, 10, provider=provider))
        assert provider.calls == [(3, 94, 2)]

    def test_fast_theorems(self):
        claims = (theorem_claims("elthm") + theorem_claims("thm3n", k=1) + theorem_claims("thm3n", k=2)
                  + theorem_claims("saik", k=3) + theorem_claims("thm-ellr", ell=4))
        failures = [r.id for r in check_many(claims, 150) if not r.passed]
        assert failures == []

    @pytest.mark.slow
    def test_default_suite(self):
        reports = list(check_many(default_suite(), 3))
        failures = [(r.id, r.counterexample) for r in reports if r.failed]
        assert failures == []
        assert [r.id for r in reports if r.finding and not r.passed] == ["R27(27n+19)~0 mod 3"]


class TestGenerators:
    """Side conditions and offsets."""

    def test_registry(self):
        ids = theorem_ids()
        assert ids["conj-128"] == "conjecture"
        assert ids["nine-power"] == "cited"
        assert ids["t4"] == "theorem"

    def test_unknown_theorem(self):
        with pytest.raises(KeyError):
            theorem_claims("nosuch")

    def test_unknown_parameter(self):
        with pytest.raises(ClaimParameterError):
            theorem_claims("elthm", k=2)

    def test_family_offsets(self):
        assert family_offsets([11, 13], 2) == (368082, 74324)
        assert _triples(theorem_claims("family-mf", p=[3], j=1)) == [(6, 162, 47, 8)]

    def test_family_equal_primes(self):
        claims = theorem_claims("family-mf", p=[5, 5], j=1)
        assert _triples(claims) == [(6, 18 * 5 ** 4, 9 * 5 ** 3 + (9 * 5 ** 4 - 1) // 4, 8)]

    @pytest.mark.parametrize("params", [
        {"p": [17], "j": 1},
        {"p": [3], "j": 3},
        {"p": [9], "j": 1},
        {"p": [], "j": 1},
    ])
    def test_family_side_conditions(self, params):
        with pytest.raises(ClaimParameterError):
            theorem_claims("family-mf", **params)

    def test_t4(self):
        assert _triples(theorem_claims("t4", p=3, s=17)) == [(6, 54, 38, 8)]
        assert _triples(theorem_claims("t4", p=3, s=17, k_max=1)) == [(6, 54, 38, 8), (6, 486, 344, 8)]

    @pytest.mark.parametrize("s", [9, 5, 33])
    def test_t4_side_conditions(self, s):
        with pytest.raises(ClaimParameterError):
            theorem_claims("t4", p=3, s=s)

    def test_t4_single_depth(self):
        assert _triples(theorem_claims("t4", p=5, s=17, k=1)) == [(6, 2250, 956, 8)]

    def test_t4_claims_hold(self):
        for report in check_many(theorem_claims("t4", p=3, s=17, k_max=1), 6):
            assert report.passed, f"{report.id}: {report.counterexample}"

    def test_james3(self):
        assert james3_residues(5) == [2, 4]
        assert _triples(theorem_claims("james3", p=5)) == [(6, 15, 8, 8), (6, 15, 14, 8)]
        with pytest.raises(ClaimParameterError):
            james3_residues(3)

    def test_inv_mod(self):
        assert inv_mod(3, 7) == 5
        with pytest.raises(ClaimParameterError):
            inv_mod(3, 9)

    def test_conjecture_kind(self):
        claims = theorem_claims("conj-128")
        assert all(c.kind == "conjecture" for c in claims)
        report = check_progression(claims[0], 5)
        assert "numerical evidence" in report.note

    @pytest.mark.parametrize("theorem_id,params", [
        ("thm3n", {"k": 0}),
        ("saik", {"k": 2}),
        ("cited", {"j": 2}),
        ("nine-power", {"k": 0}),
    ])
    def test_parameter_ranges(self, theorem_id, params):
        with pytest.raises(ClaimParameterError):
            theorem_claims(theorem_id, **params)


class TestCitedFinding:
    """The cited 27n+19 statement, reported as a documented finding."""

    def _flagged(self, j):
        flagged = [c for c in theorem_claims("cited", j=j) if c.finding]
        assert len(flagged) == 1
        return flagged[0]

    def test_counterexample(self):
        claim = self._flagged(3)
        assert (claim.ell, claim.A, claim.B, claim.M) == (27, 27, 19, 3)
        report = check_progression(claim, 20)
        assert report.status == "fail"
        assert report.counterexample == (1, 2)
        assert report.finding
        assert not report.failed
        assert FINDING_NOTE in report.note

    def test_counterexample_confirmed_by_oracle(self):
        report = check_progression(self._flagged(3), 20)
        assert confirm_counterexample(report) is True

    @pytest.mark.parametrize("j", [4, 5])
    def test_larger_j_fails_at_same_place(self, j):
        report = check_progression(self._flagged(j), 10)
        assert report.counterexample[0] == 1
        assert not report.failed

    def test_other_cited_claims_hold(self):
        others = [c for c in theorem_claims("cited") if not c.finding]
        assert len(others) == 6
        failures = [r.id for r in check_many(others, 200) if not r.passed]
        assert failures == []


class TestAcceptance:
    """Theorem families at their documented bounds."""

    @pytest.mark.slow
    def test_nathsel(self):
        reports = list(check_many(theorem_claims("nathsel"), 1000))
        assert len(reports) == 11
        assert [r.id for r in reports if not r.passed] == []

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_james3(self, p):
        claims = theorem_claims("james3", p=p)
        assert len(claims) == len(james3_residues(p)) > 0
        assert [r.id for r in check_many(claims, 1000) if not r.passed] == []

    def test_james1_james2(self):
        claims = theorem_claims("james1") + theorem_claims("james2")
        assert [r.id for r in check_many(claims, 1000) if not r.passed] == []

    @pytest.mark.parametrize("j", [1, 2])
    def test_family_single_prime(self, j):
        claims = theorem_claims("family-mf", p=[3], j=j)
        assert _triples(claims) == [(6, 162, 27 * j + 20, 8)]
        assert check_progression(claims[0], 500).passed

    @pytest.mark.slow
    def test_family_two_primes(self):
        claim = theorem_claims("family-mf", p=[11, 13], j=2)[0]
        assert check_progression(claim, 3).passed

    def test_t4_depth_one(self):
        reports = list(check_many(theorem_claims("t4", p=3, s=17, k_max=1), 500))
        assert [r.id for r in reports] == ["R6(54n+38)~0 mod 8", "R6(486n+344)~0 mod 8"]
        assert all(r.passed for r in reports)

    def test_conjecture_to_300(self):
        reports = list(check_many(theorem_claims("conj-128"), 300))
        assert len(reports) == 2
        for report in reports:
            assert report.passed, f"{report.id}: {report.counterexample}"
            assert "numerical evidence to n_max" in report.note

    def test_scan_rediscovers_elthm(self):
        found = _triples(scan(3, 9, {12, 48}, 200))
        assert (3, 9, 4, 12) in found
        assert (3, 9, 7, 48) in found

    def test_scan_rediscovers_sixteen_step_claims(self):
        found = _triples(scan(8, 16, {8, 16, 64, 128}, 200))
        for triple in [(8, 16, 9, 8), (8, 16, 11, 16), (8, 16, 13, 64), (8, 16, 15, 128)]:
            assert triple in found

    def test_scan_agrees_with_verify(self):
        found = scan(8, 16, {8, 16, 64, 128}, 200)
        assert found
        reports = list(check_many(found, 200))
        assert len(reports) == len(found)
        assert all(r.passed for r in reports)


class TestEquivalence:
    """R6 far out on the progression against R6(18n+2) mod 8."""

    def test_p3(self):
        report = check_equivalence(3, 20)
        assert report.id == "R6(162n+20) = R6(18n+2) mod 8"
        assert report.passed, str(report.counterexample)

    def test_rejects_one_mod_eight(self):
        with pytest.raises(ClaimParameterError):
            check_equivalence(17, 1)


class TestScan:
    """Rediscovering congruences from the numbers."""

    def test_rediscovers_ell_three(self):
        found = scan(3, 3, {2, 4}, 60)
        assert sorted(_triples(found)) == [(3, 3, 1, 2), (3, 3, 2, 2), (3, 3, 2, 4)]
        assert all(c.kind == "empirical" for c in found)

    def test_nothing_for_small_steps(self):
        assert scan(3, 1, {2}, 10) == []

    def test_ceiling(self):
        with pytest.raises(ResourceRefusal):
            scan(3, 100, {2}, 1000, ceiling=5000)

    def test_invalid(self):
        with pytest.raises(ValueError):
            scan(3, 0, {2}, 10)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
