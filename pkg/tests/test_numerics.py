"""Exact-arithmetic kernel: surds, enclosures, bisection, rank oracles."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from berger_spheres import (
    BracketError,
    DomainError,
    ResourceLimitError,
    Surd,
    bisect_root,
    harmonic_polynomial_dimension,
    invariant_harmonic_dimension,
    solve_quadratic_positive,
    sphere_multiplicity,
    sqrt_enclosure,
)
from berger_spheres.numerics import (
    kernel_dimension,
    laplacian_image,
    monomials,
    quadratic_residual,
)


class TestSurd:
    def test_canonicalization_extracts_squares(self):
        assert Surd.make(0, 1, 8) == Surd.make(0, 2, 2)
        assert Surd.make(0, 1, 8).delta == 2
        assert Surd.make(0, 1, 8).beta == 2

    def test_perfect_square_folds_to_rational(self):
        s = Surd.make(3, 2, 9)
        assert s.is_rational and s.as_fraction() == 9

    def test_rational_radicand(self):
        # sqrt(7/2) = sqrt(14)/2
        s = Surd.make(0, 1, Fraction(7, 2))
        assert (s.alpha, s.beta, s.delta) == (0, Fraction(1, 2), 14)

    def test_sign_all_quadrants(self):
        assert Surd.make(1, 1, 2).sign() == 1
        assert Surd.make(-1, -1, 2).sign() == -1
        assert Surd.make(-1, 1, 2).sign() == 1       # sqrt(2) > 1
        assert Surd.make(-2, 1, 2).sign() == -1      # sqrt(2) < 2
        assert Surd.make(1, -1, 2).sign() == -1
        assert Surd.make(2, -1, 2).sign() == 1
        assert Surd.make(0, 0, 0).sign() == 0

    def test_comparisons_with_rationals(self):
        root2 = Surd.make(0, 1, 2)
        assert Fraction(7, 5) < root2 < Fraction(3, 2)
        assert root2 > 1 and root2 < 2

    def test_cross_field_comparison(self):
        assert Surd.make(0, 1, 2) < Surd.make(0, 1, 3)
        assert Surd.make(1, 1, 2) > Surd.make(0, 1, 5)  # 2.414... vs 2.236...

    def test_equality_survives_unreduced_radicand(self):
        # 100003 is prime and above the trial-division bound, so the first
        # radicand stays unreduced; value equality must still hold.
        big = 100003
        a = Surd.make(0, 1, 2 * big * big)
        b = Surd.make(0, big, 2)
        assert a.delta != b.delta
        assert a == b and hash(a) == hash(b)
        assert not a < b and not a > b

    def test_field_arithmetic(self):
        root2 = Surd.make(0, 1, 2)
        x = (root2 + 1) * (root2 - 1)
        assert x.is_rational and x.as_fraction() == 1
        inv = 1 / (root2 + 1)
        assert inv == root2 - 1
        assert (root2 * root2).as_fraction() == 2

    def test_mixed_radicand_arithmetic_rejected(self):
        with pytest.raises(DomainError):
            Surd.make(0, 1, 2) + Surd.make(0, 1, 3)

    def test_enclosure_width_and_containment(self):
        s = Surd.make(-2, Fraction(3, 2), 2)
        enc = s.enclosure(Fraction(1, 10**15))
        assert enc.width <= Fraction(1, 10**15)
        assert enc.lo <= Fraction(12132034355964257, 10**17) <= enc.hi


class TestSqrtEnclosure:
    def test_exact_square(self):
        enc = sqrt_enclosure(Fraction(4), Fraction(1, 10**9))
        assert enc.lo <= 2 <= enc.hi and enc.width <= Fraction(1, 10**9)

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            sqrt_enclosure(Fraction(-1))

    @given(st.fractions(min_value=Fraction(1, 10**6), max_value=Fraction(10**6)))
    @settings(deadline=None, max_examples=60)
    def test_outward_rounding(self, x):
        enc = sqrt_enclosure(x, Fraction(1, 10**10))
        assert enc.lo * enc.lo <= x <= enc.hi * enc.hi
        assert enc.width <= Fraction(1, 10**10)


class TestQuadraticSolver:
    def test_known_roots(self):
        assert solve_quadratic_positive(4, 16, -3) == Surd.make(-2, Fraction(1, 2), 19)
        assert solve_quadratic_positive(6, 24, -3) == Surd.make(-2, Fraction(3, 2), 2)
        root = solve_quadratic_positive(1, 0, -4)
        assert root.is_rational and root.as_fraction() == 2

    def test_exact_residual(self):
        root = solve_quadratic_positive(6, 24, -3)
        assert quadratic_residual(6, 24, -3, root).sign() == 0

    def test_error_cases(self):
        with pytest.raises(DomainError, match="double root"):
            solve_quadratic_positive(1, -2, 1)
        with pytest.raises(DomainError, match="no positive root"):
            solve_quadratic_positive(1, 3, 2)
        with pytest.raises(DomainError, match="two positive roots"):
            solve_quadratic_positive(1, -3, 2)
        with pytest.raises(DomainError, match="no real root"):
            solve_quadratic_positive(1, 0, 1)
        with pytest.raises(DomainError, match="leading coefficient"):
            solve_quadratic_positive(-1, 0, 1)

    @given(
        st.integers(min_value=1, max_value=400),
        st.integers(min_value=-400, max_value=400),
        st.integers(min_value=-400, max_value=-1),
    )
    @settings(deadline=None, max_examples=80)
    def test_roundtrip_property(self, a, b, c):
        # c < 0 guarantees exactly one positive root
        root = solve_quadratic_positive(a, b, c)
        assert quadratic_residual(a, b, c, root).sign() == 0
        enc = root.enclosure(Fraction(1, 10**30))
        for x in (enc.lo, enc.hi):
            assert abs(a * x * x + b * x + c) < Fraction(1, 10**25)


class TestBisection:
    def test_linear_root(self):
        enc = bisect_root(lambda s: s - 1, 0, 2, Fraction(1, 10**6))
        assert enc.lo == enc.hi == 1

    def test_decreasing_function(self):
        f = lambda s: Fraction(1) / s + 4 - 2 * s  # root at (4+sqrt(24))/4... > 0
        enc = bisect_root(f, Fraction(1, 100), 100, Fraction(1, 10**12))
        assert enc.width <= Fraction(1, 10**12)
        assert f(enc.lo) * f(enc.hi) <= 0

    def test_bracket_errors(self):
        with pytest.raises(BracketError):
            bisect_root(lambda s: s + 1, 0, 2, Fraction(1, 10))
        with pytest.raises(BracketError):
            bisect_root(lambda s: s, 0, 2, Fraction(1, 10))  # zero endpoint
        with pytest.raises(BracketError):
            bisect_root(lambda s: s - 1, 2, 0, Fraction(1, 10))
        with pytest.raises(DomainError):
            bisect_root(lambda s: s - 1, 0, 2, 0)


class TestRankOracles:
    def test_explicit_harmonic_cubic_in_nine_vars(self):
        # x0**3 - 3*x0*x1**2 is harmonic: its Laplacian images cancel exactly.
        image: dict = {}
        for mon, coeff in (((3, 0, 0, 0, 0, 0, 0, 0, 0), 1),
                           ((1, 2, 0, 0, 0, 0, 0, 0, 0), -3)):
            for out, c in laplacian_image(mon).items():
                image[out] = image.get(out, 0) + coeff * c
        assert all(v == 0 for v in image.values())

    def test_harmonic_dimension_small(self):
        assert harmonic_polynomial_dimension(9, 2) == 44
        assert harmonic_polynomial_dimension(5, 2) == 14
        assert harmonic_polynomial_dimension(3, 0) == 1

    @pytest.mark.parametrize("m", range(2, 11))
    def test_sphere_multiplicity_matches_rank_oracle(self, m):
        for k in range(7):
            assert sphere_multiplicity(m, k) == harmonic_polynomial_dimension(m + 1, k)

    def test_invariant_dimensions_match_round_four_sphere(self):
        # the n = 1 quaternionic base is a round 4-sphere of radius 1/2
        for q in range(4):
            expected = 1 if q == 0 else sphere_multiplicity(4, q)
            assert invariant_harmonic_dimension(1, q) == expected

    def test_invariant_dimension_n2(self):
        assert invariant_harmonic_dimension(2, 1) == 14

    def test_feasibility_guard(self):
        with pytest.raises(ResourceLimitError) as exc:
            invariant_harmonic_dimension(2, 30)
        assert exc.value.required > exc.value.limit
        with pytest.raises(ResourceLimitError):
            # (1, 9) is not memoized by any other test, so the guard fires
            invariant_harmonic_dimension(1, 9, max_monomials=10)

    def test_kernel_dimension_trivial(self):
        # operator mapping everything to zero: kernel is the whole space
        domain = monomials(3, 2)
        assert kernel_dimension(domain, [lambda mon: {}]) == len(domain)

    def test_memo_table_safe_under_concurrent_readers(self):
        from concurrent.futures import ThreadPoolExecutor

        import berger_spheres.numerics as num

        num._invariant_dim_cache.pop((1, 2), None)
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda _: invariant_harmonic_dimension(1, 2), range(16)))
        assert results == [14] * 16
