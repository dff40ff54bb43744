"""
Worked examples.

These tests pin down values that can be checked by hand or against
published tables, so that a regression in any layer (series engine,
dissection, claim checking) shows up as a wrong number rather than a
failed invariant.

Test design:
- Each example is a separate test method with the scenario in its docstring
- Expected values are literal numbers, not recomputed
"""

import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src import series as S
from src.congruences import check_progression, theorem_claims
from src.enumeration import count_rbar_dp
from src.models import ProgressionClaim
from src.modforms import ETA4_6, eta_expand
from src.parser import parse_expression
from src.qexpr import evaluate


class TestExamples:
    """Hand-checkable values."""

    def test_example1_first_terms(self):
        """
        Example 1: the first terms of R*_3.

        Scenario:
        - n = 4 has 14 overpartitions; the two with a plain 3 are excluded
        - Expected: 1, 2, 4, 7, 12

        This tests the generating function f2*f3/f1^2 from its text form.
        """
        assert evaluate(parse_expression("f2*f3/f1^2"), 4).to_list() == [1, 2, 4, 7, 12]

    @pytest.mark.parametrize("n,expected", [
        (5, 24), (9, 152), (11, 336), (13, 704), (15, 1408), (21, 9152), (29, 79616),
    ])
    def test_example2_r8_values(self, n, expected):
        """
        Example 2: R*_8 at odd arguments.

        Scenario:
        - Below 8 every part is allowed, so R*_8(n) is the overpartition count
        - Beyond that the plain 8s are removed

        This tests the DP oracle and the series engine against the same table.
        """
        assert count_rbar_dp(8, n)[n] == expected
        assert S.rast_series(8, n)[n] == expected

    def test_example3_weakened_congruence(self):
        """
        Example 3: R*_3(9n+4) is divisible by 12 but not by 24.

        Scenario:
        - R*_3(4) = 12
        - Claim: R*_3(9n+4) = 0 (mod 24)
        - Expected: fails at n = 0 with residue 12
        """
        report = check_progression(ProgressionClaim(3, 9, 4, 24), 5)
        assert report.counterexample == (0, 12)
        assert check_progression(ProgressionClaim(3, 9, 4, 12), 200).passed

    def test_example4_eta4_6(self):
        """
        Example 4: eta(4z)^6 = q - 6q^5 + 9q^9 + 10q^13 - 30q^17 + ...

        Scenario:
        - The coefficient of q^5 is -6, not 0
        - So the support is 1 mod 4 exactly, and 1 mod 8 only mod 2
        """
        values = eta_expand(ETA4_6, 25)
        assert values.nonzero_terms() == [(1, 1), (5, -6), (9, 9), (13, 10), (17, -30), (25, 11)]

    def test_example5_mod_eight_squares(self):
        """
        Example 5: R*_6(18n+2) mod 8.

        Scenario:
        - R*_6(18n+2) = 4 (mod 8) when 8n+1 is a square, 0 otherwise
        - n = 0, 1, 3, 6, 10 give 1, 9, 25, 49, 81

        This tests the theta-product construction mod 8 over a long range.
        """
        values = S.rast_series(6, 18 * 300 + 2, 8)
        for n in range(301):
            square = math.isqrt(8 * n + 1) ** 2 == 8 * n + 1
            assert values[18 * n + 2] == (4 if square else 0), f"n={n}"

    def test_example6_t4_instance(self):
        """
        Example 6: the first instance of the quadratic-nonresidue family.

        Scenario:
        - p = 3, s = 17: (17/3) = -1
        - Claim: R*_6(54n+38) = 0 (mod 8)
        """
        claim = theorem_claims("t4", p=3, s=17)[0]
        assert claim.id == "R6(54n+38)~0 mod 8"
        assert check_progression(claim, 500).passed


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
