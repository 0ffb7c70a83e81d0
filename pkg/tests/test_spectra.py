"""Branch model: descriptors, admissibility, branch values, enumeration."""

from fractions import Fraction

import pytest

from berger_spheres import (
    AdmissibilityError,
    DomainError,
    Family,
    ResourceLimitError,
    Status,
    UnsupportedQueryError,
    admissible_pairs,
    base_eigenvalue,
    base_multiplicity,
    branch_multiplicity,
    branch_value,
    descriptor,
    enumerate_spectrum_below,
    fiber_eigenvalue,
    sphere_eigenvalue,
    sphere_multiplicity,
)

U1 = descriptor("u", 1)
U2 = descriptor("u", 2)
SP1 = descriptor("sp", 1)
SP2 = descriptor("sp", 2)
K9 = descriptor("spin9")
ALL = [U1, U2, SP1, SP2, K9]


class TestDescriptor:
    def test_structural_constants(self):
        assert (U2.m, U2.fiber_dim, U2.completeness_constant) == (5, 1, 4)
        assert (SP2.m, SP2.fiber_dim, SP2.completeness_constant) == (11, 3, 8)
        assert (K9.m, K9.fiber_dim, K9.completeness_constant) == (15, 7, 8)
        assert K9.n is None

    def test_spin9_rejects_n(self):
        with pytest.raises(DomainError, match="spin9 takes no n"):
            descriptor("spin9", 1)

    def test_u_sp_require_n(self):
        with pytest.raises(DomainError):
            descriptor("u")
        with pytest.raises(DomainError):
            descriptor("sp", 0)
        with pytest.raises(DomainError):
            descriptor("nope", 1)

    @pytest.mark.parametrize("desc", ALL)
    def test_completeness_slope_identity(self, desc):
        # mu_k - phi_k == c * k for every k (checked through k = 50)
        for k in range(1, 51):
            assert sphere_eigenvalue(desc.m, k) - fiber_eigenvalue(desc, k) \
                == desc.completeness_constant * k


class TestSphereSpectra:
    def test_eigenvalues(self):
        assert sphere_eigenvalue(3, 1) == 3
        assert sphere_eigenvalue(15, 2) == 32
        # degree-3 harmonics in 9 variables (see the explicit harmonic cubic
        # check in test_numerics): 3 * (3 + 7) = 30
        assert sphere_eigenvalue(8, 3) == 30

    def test_eigenvalue_domain(self):
        with pytest.raises(DomainError):
            sphere_eigenvalue(0, 1)
        with pytest.raises(DomainError):
            sphere_eigenvalue(3, -1)

    def test_multiplicities(self):
        assert sphere_multiplicity(2, 1) == 3
        assert sphere_multiplicity(8, 2) == 44
        assert sphere_multiplicity(4, 2) == 14
        assert sphere_multiplicity(5, 0) == 1

    def test_fiber_eigenvalues(self):
        assert fiber_eigenvalue(U1, 0) == 0
        assert fiber_eigenvalue(SP1, 1) == 3
        assert fiber_eigenvalue(K9, 2) == 16


class TestAdmissibility:
    def test_u_k3(self):
        assert admissible_pairs(U1, 3) == [(3, Status.CERTAIN), (1, Status.CERTAIN)]

    def test_sp_k4(self):
        assert admissible_pairs(SP1, 4) == [
            (4, Status.CERTAIN), (2, Status.CANDIDATE), (0, Status.CERTAIN)]

    @pytest.mark.parametrize("desc", ALL)
    def test_k0_constants(self, desc):
        assert admissible_pairs(desc, 0) == [(0, Status.CERTAIN)]

    @pytest.mark.parametrize("desc", ALL)
    def test_parity_and_certain_set(self, desc):
        for k in range(61):
            pairs = admissible_pairs(desc, k)
            assert [j for j, _ in pairs] == list(range(k, -1, -2))
            for j, status in pairs:
                expect_certain = (j == k or j == 0
                                  or (desc.family is Family.U and j in (1, 2)))
                assert (status is Status.CERTAIN) == expect_certain, (desc, k, j)


class TestBranchValue:
    def test_spec_values(self):
        assert branch_value(U1, 1, 1, 1) == 3
        # the (2, 0) branch is t-independent
        for t in (Fraction(1, 7), 1, 3):
            assert branch_value(SP1, 2, 0, t) == 16
        assert branch_value(K9, 1, 1, Fraction(1, 2)) == 36

    def test_inadmissible_rejected(self):
        with pytest.raises(AdmissibilityError):
            branch_value(U1, 2, 1, 1)
        with pytest.raises(AdmissibilityError):
            branch_value(U1, 1, 2, 1)

    def test_domain(self):
        with pytest.raises(DomainError):
            branch_value(U1, 1, 1, 0)
        with pytest.raises(DomainError):
            branch_value(U1, 1, 1, 1, s=1)

    @pytest.mark.parametrize("desc", ALL)
    def test_collapse_at_t_one(self, desc):
        for k in range(61):
            for j, _ in admissible_pairs(desc, k):
                assert branch_value(desc, k, j, s=Fraction(1)) == sphere_eigenvalue(desc.m, k)

    @pytest.mark.parametrize("desc", [U1, SP2, K9])
    def test_lower_bound_c_times_k(self, desc):
        grid = [Fraction(10) ** e for e in range(-3, 4)]
        for k in range(1, 61):
            for j, _ in admissible_pairs(desc, k):
                for t in grid:
                    assert branch_value(desc, k, j, t) >= desc.completeness_constant * k


class TestBaseBranch:
    def test_eigenvalues(self):
        assert base_eigenvalue(SP1, 1) == 16
        assert base_eigenvalue(K9, 2) == 72
        for desc in ALL:
            assert base_eigenvalue(desc, 0) == 0
        assert base_eigenvalue(U2, 1) == 12  # 4q(q+n)

    def test_multiplicities(self):
        assert base_multiplicity(SP1, 1) == 5
        assert base_multiplicity(K9, 1) == 9
        for desc in (SP1, SP2, K9):
            assert base_multiplicity(desc, 0) == 1
        # the n = 1 base is a half-radius round 4-sphere
        for q in range(1, 7):
            assert base_multiplicity(SP1, q) == sphere_multiplicity(4, q)

    @pytest.mark.parametrize("desc", [U1, SP2, K9])
    def test_base_branch_is_t_independent(self, desc):
        for q in range(6):
            expected = base_eigenvalue(desc, q)
            for t in (Fraction(1, 100), Fraction(2, 3), 1, 7):
                assert branch_value(desc, 2 * q, 0, t) == expected

    def test_u_unsupported(self):
        with pytest.raises(UnsupportedQueryError):
            base_multiplicity(U1, 1)

    def test_oracle_limit_propagates(self):
        with pytest.raises(ResourceLimitError):
            base_multiplicity(SP2, 3)  # 12376 monomials > default practical cap


class TestBranchMultiplicity:
    def test_known_cases(self):
        assert branch_multiplicity(U1, 0, 0) == 1
        assert branch_multiplicity(U1, 1, 1) == 4
        assert branch_multiplicity(SP2, 1, 1) == 12
        assert branch_multiplicity(K9, 1, 1) is None
        assert branch_multiplicity(U1, 2, 0) == 3
        assert branch_multiplicity(U1, 4, 0) is None
        assert branch_multiplicity(SP1, 4, 0) == 14
        assert branch_multiplicity(K9, 2, 0) == 9
        assert branch_multiplicity(SP1, 3, 3) is None


class TestEnumeration:
    def test_round_sphere_slice(self):
        sl = enumerate_spectrum_below(U1, 1, cutoff=9)
        certain = {v for v, b in sl.certain_entries()}
        assert certain == {0, 3, 8}

    def test_sp_slice_contains_base_branch(self):
        sl = enumerate_spectrum_below(SP1, Fraction(3, 10), cutoff=20)
        hit = [(v, b) for v, b in sl.entries if (b.k, b.j) == (2, 0)]
        assert len(hit) == 1
        value, branch = hit[0]
        assert value == 16 and branch.status is Status.CERTAIN and branch.multiplicity == 5

    def test_u2_min_positive_certain(self):
        sl = enumerate_spectrum_below(U2, Fraction(1, 5), cutoff=13)
        assert sl.min_positive(certain_only=True) == 12
        best = [b for v, b in sl.entries if v == 12]
        assert any((b.k, b.j) == (2, 0) for b in best)

    def test_entries_sorted_and_complete(self):
        sl = enumerate_spectrum_below(SP1, Fraction(1, 2), cutoff=60)
        values = [(v, b.k, b.j) for v, b in sl.entries]
        assert values == sorted(values)
        assert sl.k_max_used >= Fraction(60, 8)
        # spot check completeness: every admissible branch with value <= cutoff
        # and k <= k_max appears
        seen = {(b.k, b.j) for _, b in sl.entries}
        for k in range(sl.k_max_used + 1):
            for j, _ in admissible_pairs(SP1, k):
                if branch_value(SP1, k, j, s=Fraction(1, 4)) <= 60:
                    assert (k, j) in seen

    def test_resource_guard_names_required_k(self):
        with pytest.raises(ResourceLimitError) as exc:
            enumerate_spectrum_below(U1, 1, cutoff=10**9)
        assert exc.value.required == 500_000_000
        assert exc.value.limit == 100_000

    def test_cutoff_domain(self):
        with pytest.raises(DomainError):
            enumerate_spectrum_below(U1, 1, cutoff=0)
