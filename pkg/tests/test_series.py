"""
Tests for the truncated power series engine.

Covers construction, ring operations, division, dissection and the two
constructions of the counting series (theta product and division).
"""

import random
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src import series as S
from src.series import ModulusMismatchError, NonUnitError, Series

PARTITIONS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def random_series(rng: random.Random, trunc: int, modulus=None, unit=False, density=1.0):
    values = [rng.randint(-50, 50) if rng.random() < density else 0 for _ in range(trunc + 1)]
    if unit:
        values[0] = rng.choice([1, -1]) if modulus is None else rng.choice([1, modulus - 1])
    return Series.from_coefficients(values, modulus)


def naive_product(a: Series, b: Series) -> list:
    trunc = min(a.trunc, b.trunc)
    out = [0] * (trunc + 1)
    for i in range(trunc + 1):
        for j in range(trunc + 1 - i):
            out[i + j] += a[i] * b[j]
    if a.modulus is not None:
        out = [v % a.modulus for v in out]
    return out


class TestConstruction:
    """Constructors and storage."""

    def test_from_coefficients_pads_and_reduces(self):
        s = Series.from_coefficients([1, -3, 0, 5], modulus=4)
        assert s.to_list() == [1, 1, 0, 1]
        padded = Series.from_coefficients([1, 2], trunc=4)
        assert padded.to_list() == [1, 2, 0, 0, 0]

    def test_word_mode_uses_int64(self):
        assert S.one(5, 8).coeffs.dtype == np.int64
        assert S.one(5, 10 ** 9 + 7).coeffs.dtype == object
        assert S.one(5).coeffs.dtype == object

    def test_coefficients_are_read_only(self):
        s = S.series_f(1, 10)
        with pytest.raises(ValueError):
            s.coeffs[0] = 5

    def test_pentagonal_series(self):
        assert S.series_f(1, 8).to_list() == [1, -1, -1, 0, 0, 1, 0, 1, 0]

    def test_pentagonal_matches_naive_product(self):
        assert S.series_f(1, 300) == S.naive_eta_product(1, 300)
        assert S.series_f(3, 300, 8) == S.naive_eta_product(3, 300, 8)

    def test_jacobi_cube(self):
        assert S.jacobi_cube_sum(400) == S.eta_power(1, 3, 400)

    def test_monomial_beyond_truncation_is_zero(self):
        assert S.monomial(10, 3, 5).to_list() == [0] * 6

    def test_index_outside_truncation(self):
        with pytest.raises(IndexError):
            S.one(3)[4]


class TestArithmetic:
    """Ring operations."""

    @pytest.mark.parametrize("seed", range(100))
    def test_product_matches_schoolbook(self, seed):
        rng = random.Random(seed)
        for _ in range(10):
            trunc = rng.randint(0, 40)
            modulus = rng.choice([None, 8, 12, 2 ** 31 - 1])
            a = random_series(rng, trunc, modulus, density=rng.choice([0.1, 1.0]))
            b = random_series(rng, trunc, modulus, density=rng.choice([0.1, 1.0]))
            assert S.mul(a, b).to_list() == naive_product(a, b), f"seed {seed}, trunc {trunc}"

    def test_binary_operations_take_min_trunc(self):
        assert S.add(S.one(3), S.one(7)).trunc == 3
        assert S.mul(S.one(9), S.one(4)).trunc == 4

    def test_mixed_moduli_rejected(self):
        with pytest.raises(ModulusMismatchError):
            S.add(S.one(3), S.one(3, 8))

    def test_operators(self):
        a = Series.from_coefficients([1, 2, 3])
        b = Series.from_coefficients([0, 1, 1])
        assert (a + b).to_list() == [1, 3, 4]
        assert (a - b).to_list() == [1, 1, 2]
        assert (3 * a).to_list() == [3, 6, 9]
        assert (-a).to_list() == [-1, -2, -3]
        assert (b ** 2).to_list() == [0, 0, 1]


class TestDivision:
    """Division and inverses."""

    @pytest.mark.parametrize("seed", range(100))
    def test_division_inverts_product(self, seed):
        rng = random.Random(1000 + seed)
        for _ in range(10):
            trunc = rng.randint(0, 300)
            modulus = rng.choice([None, 2, 64, 97, 10 ** 12 + 39])
            a = random_series(rng, trunc, modulus, unit=True, density=rng.choice([0.02, 0.5, 1.0]))
            u = random_series(rng, trunc, modulus)
            assert S.mul(a, S.divide(u, a)) == u, f"seed {seed}, trunc {trunc}, mod {modulus}"

    def test_partition_numbers(self):
        assert S.inverse(S.series_f(1, 10)).to_list() == PARTITIONS

    def test_inverse_squared(self):
        expected = [1, 2, 5, 10, 20, 36, 65]
        assert S.power(S.series_f(1, 6), -2).to_list() == expected
        assert S.eta_power(1, -2, 6).to_list() == expected

    def test_non_unit_rejected_over_integers(self):
        with pytest.raises(NonUnitError, match="2"):
            S.inverse(Series.from_coefficients([2, 1]))

    def test_non_unit_mod_m(self):
        with pytest.raises(NonUnitError):
            S.inverse(Series.from_coefficients([3, 1], modulus=9))
        inverse = S.inverse(Series.from_coefficients([2, 1, 0, 0], modulus=9))
        assert S.mul(inverse, Series.from_coefficients([2, 1, 0, 0], modulus=9)) == S.one(3, 9)


class TestEtaPowers:
    """f_k^e from the pentagonal recurrence."""

    def test_cube(self):
        assert S.eta_power(1, 3, 6).to_list() == [1, -3, 0, 5, 0, 0, -7]

    def test_negative_power_is_partitions(self):
        assert S.eta_power(1, -1, 10).to_list() == PARTITIONS

    @pytest.mark.parametrize("k,e", [(1, 5), (2, -3), (3, 7), (4, -6), (1, 24)])
    def test_matches_repeated_multiplication(self, k, e):
        expected = S.power(S.series_f(k, 120), e)
        assert S.eta_power(k, e, 120) == expected

    def test_modular_reduction(self):
        exact = S.eta_power(2, -5, 200)
        assert S.eta_power(2, -5, 200, 16) == S.reduce_mod(exact, 16)


class TestTransforms:
    """Dissection, magnification, shifts and q -> -q."""

    def test_dissect_truncation(self):
        a = Series.from_coefficients(range(11))
        part = S.dissect(a, 3, 1)
        assert part.trunc == 3
        assert part.to_list() == [1, 4, 7, 10]

    def test_dissect_residue_above_truncation(self):
        with pytest.raises(ValueError):
            S.dissect(S.one(2), 5, 4)

    def test_magnify_then_dissect_recovers(self):
        a = S.series_f(1, 30)
        assert S.dissect(S.magnify(a, 4), 4, 0) == a
        assert S.magnify(a, 4).trunc == 4 * 30

    def test_magnify_scales_truncation(self):
        assert S.magnify(Series.from_coefficients([1, 1]), 3).to_list() == [1, 0, 0, 1]

    def test_shift(self):
        shifted = S.shift(Series.from_coefficients([1, 2]), 3)
        assert shifted.to_list() == [0, 0, 0, 1, 2]

    def test_reduce_mod_requires_divisor(self):
        with pytest.raises(ValueError):
            S.reduce_mod(S.one(3, 8), 3)
        assert S.reduce_mod(S.one(3, 8), 4).modulus == 4

    def test_alternate(self):
        assert S.alternate(Series.from_coefficients([1, 1, 1, 1])).to_list() == [1, -1, 1, -1]
        assert S.alternate(Series.from_coefficients([1, 1], modulus=5)).to_list() == [1, 4]


class TestRingProperties:
    """Seeded algebraic laws over exact and modular coefficient rings."""

    MODULI = [None, 8, 2 ** 16, 2 ** 40]

    @pytest.mark.parametrize("seed", range(100))
    def test_ring_axioms(self, seed):
        rng = random.Random(seed)
        for _ in range(10):
            modulus = rng.choice(self.MODULI)
            trunc = rng.randint(0, 24)
            a, b, c = (random_series(rng, trunc, modulus, density=0.6) for _ in range(3))
            assert S.add(a, b) == S.add(b, a)
            assert S.mul(a, b) == S.mul(b, a)
            assert S.add(S.add(a, b), c) == S.add(a, S.add(b, c))
            assert S.mul(S.mul(a, b), c) == S.mul(a, S.mul(b, c))
            assert S.mul(a, S.add(b, c)) == S.add(S.mul(a, b), S.mul(a, c))

    @pytest.mark.parametrize("seed", range(100))
    def test_reduction_commutes_with_operations(self, seed):
        rng = random.Random(1000 + seed)
        for _ in range(10):
            M = 2 ** rng.randint(1, 12)
            trunc = rng.randint(0, 20)
            a = random_series(rng, trunc, unit=True)
            b = random_series(rng, trunc, density=0.5)
            e = rng.randint(-3, 5)
            reduced_a, reduced_b = S.reduce_mod(a, M), S.reduce_mod(b, M)
            assert S.reduce_mod(S.add(a, b), M) == S.add(reduced_a, reduced_b)
            assert S.reduce_mod(S.mul(a, b), M) == S.mul(reduced_a, reduced_b)
            assert S.reduce_mod(S.power(a, e), M) == S.power(reduced_a, e)

    @pytest.mark.parametrize("seed", range(100))
    def test_dissect_magnify_round_trip(self, seed):
        rng = random.Random(2000 + seed)
        for _ in range(10):
            m = rng.randint(1, 8)
            a = random_series(rng, rng.randint(1, 30), rng.choice(self.MODULI))
            spread = S.magnify(a, m)
            assert S.dissect(spread, m, 0) == a
            for r in range(1, m):
                assert not any(S.dissect(spread, m, r).to_list())
            r = rng.randrange(m) if m <= a.trunc else 0
            part = S.dissect(a, m, r)
            assert part.to_list() == [a[m * n + r] for n in range(part.trunc + 1)]
            pieces = [S.shift(S.magnify(S.dissect(a, m, r), m), r) for r in range(min(m, a.trunc + 1))]
            total = pieces[0]
            for piece in pieces[1:]:
                total = S.add(total, piece)
            assert total.trunc >= a.trunc - m + 1
            assert total == a.truncate(total.trunc)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_pentagonal_matches_naive_at_500(self, k):
        naive = S.naive_eta_product(k, 500)
        assert S.series_f(k, 500) == naive
        for e in (-2, 3):
            assert S.eta_power(k, e, 500) == S.power(naive, e)


class TestCountingSeries:
    """sum R*_ell(n) q^n through both constructions."""

    def test_small_values(self):
        assert S.rast_series(3, 4).to_list() == [1, 2, 4, 7, 12]

    @pytest.mark.parametrize("ell", [1, 2, 3, 6, 8])
    @pytest.mark.parametrize("modulus", [2, 8, 64, 4096])
    def test_theta_path_matches_division(self, ell, modulus):
        exact = S.rast_series(ell, 700)
        assert S.rast_series(ell, 700, modulus) == S.reduce_mod(exact, modulus)

    def test_odd_modulus_uses_division(self):
        exact = S.rast_series(6, 300)
        assert S.rast_series(6, 300, 24) == S.reduce_mod(exact, 24)

    @pytest.mark.parametrize("ell", [1, 2, 5, 8, 27])
    @pytest.mark.parametrize("modulus", [None, 3, 24, 2 ** 21])
    def test_single_division_matches_eta_quotient(self, ell, modulus):
        S.clear_rast_tables()
        expected = S.mul(S.mul(S.series_f(2, 400, modulus), S.series_f(ell, 400, modulus)),
                         S.eta_power(1, -2, 400, modulus))
        assert S.rast_series(ell, 400, modulus) == expected

    def test_shorter_request_is_cut_from_longest_table(self):
        S.clear_rast_tables()
        long_table = S.rast_series(8, 600, 3)
        short = S.rast_series(8, 150, 3)
        assert short.trunc == 150
        assert short == long_table.truncate(150)
        S.clear_rast_tables()
        assert S.rast_series(8, 150, 3) == short

    def test_growing_requests_rebuild_with_doubling(self, monkeypatch):
        S.clear_rast_tables()
        built = []
        build = S._build_rast

        def counting_build(ell, trunc, modulus):
            built.append(trunc)
            return build(ell, trunc, modulus)

        monkeypatch.setattr(S, "_build_rast", counting_build)
        for trunc in (100, 150, 120, 199, 200, 60):
            assert S.rast_series(6, trunc, 9).trunc == trunc
        assert built == [100, 200]
        S.clear_rast_tables()

    def test_phi_tower_is_overpartitions(self):
        assert S.phi_tower(300) == S.eta_power(1, -2, 300) * S.series_f(2, 300)

    def test_ell_one_is_distinct_parts(self):
        distinct = S.mul(S.series_f(2, 50), S.eta_power(1, -1, 50))
        assert S.rast_series(1, 50) == distinct


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
