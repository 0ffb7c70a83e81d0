"""Cross-verification suite: every closed form checked against an independent
oracle, with a machine-readable report.

Each check pits two code paths against each other: closed-form values against
exact enumeration, surd roots against certified bisection, published
multiplicities against exact-rank polynomial computations. The suite is
deterministic and runs in well under a minute at the default limits.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Any, Callable

from .bifurcation import (
    degeneracy_value,
    degeneracy_values,
    gap_critical_point,
    gap_function,
    morse_index,
    morse_index_by_enumeration,
    sp_closed_form_s,
    spin9_closed_form_s,
)
from .errors import BergerError
from .families import (
    lambda1,
    lambda1_breakpoint_s,
    lambda1_multiplicity,
    threshold,
    threshold_coefficients,
)
from .numerics import (
    bisect_root,
    harmonic_polynomial_dimension,
    invariant_harmonic_dimension,
    solve_quadratic_positive,
    sqrt_enclosure,
)
from .spectra import (
    Family,
    FamilyDescriptor,
    admissible_pairs,
    base_eigenvalue,
    branch_value,
    descriptor,
    fiber_eigenvalue,
    sphere_eigenvalue,
    sphere_multiplicity,
)

SCHEMA_VERSION = 1

AGREEMENT_TOL = Fraction(1, 10**10)


def _log_grid(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    """Deterministic geometric-ish grid of rationals in [lo, hi]."""
    ratio = hi / lo
    points = []
    for i in range(count):
        # interpolate exponents with rational powers via repeated squaring of
        # a float only for spacing; the grid VALUES are exact rationals.
        f = float(lo) * float(ratio) ** (i / (count - 1))
        points.append(Fraction(f).limit_denominator(10**9))
    points[0], points[-1] = lo, hi
    return points


def _all_descriptors(n_max: int) -> list[FamilyDescriptor]:
    out = [descriptor(Family.U, n) for n in range(1, n_max + 1)]
    out += [descriptor(Family.SP, n) for n in range(1, n_max + 1)]
    out.append(descriptor(Family.SPIN9))
    return out


def check_lambda1_enumeration(t_points: int = 60, n_max: int = 5) -> dict[str, Any]:
    """Closed-form first eigenvalue == enumeration minimum, on a log t-grid."""
    grid = _log_grid(Fraction(1, 100), Fraction(100), t_points)
    checked = 0
    for desc in _all_descriptors(n_max):
        for t in grid:
            lambda1(desc, t, check=True)  # raises ConsistencyError on mismatch
            checked += 1
    return {"points_checked": checked, "t_range": ["0.01", "100"], "n_max": n_max}


def check_lambda1_breakpoints(n_max: int = 10) -> dict[str, Any]:
    """The two closed-form pieces agree exactly at the breakpoint, and the
    three-case multiplicities are consistent (at-value = below + above)."""
    rows = []
    for desc in _all_descriptors(n_max):
        if desc.family is Family.SP or desc.family is Family.U:
            bp = lambda1_breakpoint_s(desc)
            v = lambda1(desc, s=bp, check=True)
            below = lambda1_multiplicity(desc, s=bp / 2)
            at = lambda1_multiplicity(desc, s=bp)
            above = lambda1_multiplicity(desc, s=bp * 2)
            assert at == below + above, (desc, below, at, above)
            rows.append({"family": str(desc), "breakpoint_s": str(bp),
                         "value": str(v), "multiplicities": [below, at, above]})
        else:
            bp = lambda1_breakpoint_s(desc)
            v = lambda1(desc, s=bp, check=True)
            assert v == 32, v
            rows.append({"family": str(desc), "breakpoint_s": str(bp),
                         "value": str(v), "multiplicities": None})
    return {"breakpoints": rows}


def check_sp_breakpoint_factor(n_max: int = 10) -> dict[str, Any]:
    """The middle family's first-eigenvalue pieces 8(1+n) and 4n + 3/s cross
    at s = 3/(4(2+n)). The variant constant s = 1/(4(2+n)), i.e. the same
    expression without the first fiber eigenvalue 3, is sometimes quoted as
    the breakpoint; it does not satisfy the piece equality for any n, so only
    the corrected value is used. (The other two families' quoted breakpoints
    do carry their phi_1 factors, 1 and 7.)"""
    rows = []
    for n in range(1, n_max + 1):
        desc = descriptor(Family.SP, n)
        bp = lambda1_breakpoint_s(desc)
        assert bp == Fraction(3, 4 * (2 + n))
        low = Fraction(8 * (1 + n))
        assert low == 4 * n + 3 / bp
        variant = Fraction(1, 4 * (2 + n))
        mismatch = (4 * n + 3 / variant) - low
        assert mismatch != 0
        rows.append({"n": n, "breakpoint_s": str(bp), "variant_s": str(variant),
                     "variant_piece_mismatch": str(mismatch)})
    u_bp = lambda1_breakpoint_s(descriptor(Family.U, 3))
    assert u_bp == Fraction(1, 10) and 4 * (1 + 3) == 2 * 3 + 1 / u_bp
    k_bp = lambda1_breakpoint_s(descriptor(Family.SPIN9))
    assert k_bp == Fraction(7, 24) and 32 == 8 + 7 / k_bp
    return {"per_n": rows,
            "conclusion": "pieces agree exactly only at s = 3/(4(2+n))"}


def check_threshold_normal_form(n_max: int = 5) -> dict[str, Any]:
    """threshold(s) == a/s + b - c*s exactly, on a rational grid."""
    grid = [Fraction(i, 7) for i in range(1, 40)] + [Fraction(1, 10**6), Fraction(10**6)]
    count = 0
    for desc in _all_descriptors(n_max):
        coeffs = threshold_coefficients(desc)
        phi1 = fiber_eigenvalue(desc, 1)
        assert coeffs.a < phi1, (desc, coeffs.a, phi1)
        for s in grid:
            assert threshold(desc, s=s) == coeffs.value(s)
            count += 1
    return {"points_checked": count}


def _u_piece_polynomials(n: int) -> tuple[list[Fraction], list[Fraction]]:
    """Coefficient lists (ascending powers of s) of s * (lambda1 piece - threshold)
    for family U: the large-t piece and the small-t piece."""
    zero, one = Fraction(0), Fraction(1)
    # threshold * s = (2n+2)s - s^2
    thr_s = [zero, Fraction(2 * n + 2), -one]
    # large-t piece * s = 2ns + 1; small-t piece * s = 4(1+n)s
    high_s = [one, Fraction(2 * n), zero]
    low_s = [zero, Fraction(4 * (1 + n)), zero]
    high_diff = [a - b for a, b in zip(high_s, thr_s)]
    low_diff = [a - b for a, b in zip(low_s, thr_s)]
    return high_diff, low_diff


def check_u_rigidity(n_max: int = 10, t_points: int = 50) -> dict[str, Any]:
    """Family U: threshold <= lambda1 with equality only at t = 1.

    Symbolic part, per n: multiplied by s > 0, the large-t piece minus the
    threshold has coefficients exactly those of (s - 1)**2, and the small-t
    piece minus the threshold has nonnegative coefficients with a positive
    linear term. Numeric part: exact grid comparison and morse_index == 0.
    """
    grid = _log_grid(Fraction(1, 100), Fraction(100), t_points)
    for n in range(1, n_max + 1):
        desc = descriptor(Family.U, n)
        high_diff, low_diff = _u_piece_polynomials(n)
        assert high_diff == [Fraction(1), Fraction(-2), Fraction(1)]  # (s-1)^2
        assert low_diff[0] == 0 and low_diff[1] > 0 and low_diff[2] >= 0
        for t in grid:
            s = t * t
            thr = threshold(desc, s=s)
            lam = lambda1(desc, s=s, check=False)
            if s >= lambda1_breakpoint_s(desc):
                assert lam - thr == (s - 1) ** 2 / s, (n, t)
            if s != 1:
                assert thr < lam, (n, t)
            assert morse_index(desc, s=s) == 0
        assert threshold(desc, s=Fraction(1)) == lambda1(desc, s=Fraction(1), check=False)
    return {"n_max": n_max, "points_per_n": t_points}


def check_non_crossing(k_max: int = 40, n_max: int = 4) -> dict[str, Any]:
    """Branches with j >= 1 never dip below the threshold: every gap maximum
    is < 0 except branch (1, 1), whose maximum is exactly 0 at s* = 1."""
    descs = [descriptor(Family.U, n) for n in range(1, n_max + 1)]
    descs += [descriptor(Family.SP, n) for n in range(1, n_max + 1)]
    descs.append(descriptor(Family.SPIN9))
    pairs_checked = 0
    for desc in descs:
        for k in range(1, k_max + 1):
            for j, _status in admissible_pairs(desc, k):
                if j < 1:
                    continue
                crit = gap_critical_point(gap_function(desc, k, j))
                assert crit is not None, (desc, k, j)
                s_star, max_value = crit
                if (k, j) == (1, 1):
                    assert s_star == 1 and max_value == 0, (desc, s_star, max_value)
                else:
                    assert max_value.sign() < 0, (desc, k, j, max_value)
                pairs_checked += 1
    return {"pairs_checked": pairs_checked, "k_max": k_max, "n_max": n_max}


def check_degeneracy_closed_forms(q_max: int = 20, n_max: int = 5,
                                  precision: Fraction = Fraction(1, 10**12)) -> dict[str, Any]:
    """Closed-form degeneracy values == quadratic-surd roots == bisection, and
    t_0 = 1 is an exact tangency of the threshold with branch (1, 1)."""
    count = 0
    for n in range(1, n_max + 1):
        desc = descriptor(Family.SP, n)
        assert threshold(desc, s=Fraction(1)) == branch_value(desc, 1, 1, s=Fraction(1))
        for q in range(1, q_max + 1):
            dv = degeneracy_value(desc, q, precision, resolve_jump=False)
            assert dv.s == sp_closed_form_s(n, q)
            count += 1
    k9 = descriptor(Family.SPIN9)
    assert threshold(k9, s=Fraction(1)) == branch_value(k9, 1, 1, s=Fraction(1))
    for q in range(1, q_max + 1):
        dv = degeneracy_value(k9, q, precision, resolve_jump=False)
        assert dv.s == spin9_closed_form_s(q)
        count += 1
    return {"values_checked": count, "q_max": q_max, "n_max": n_max,
            "agreement": f"exact surd equality + bisection enclosures at {precision}"}


def check_spin9_radicand_comparison(q_max: int = 20) -> dict[str, Any]:
    """The 15-sphere closed form requires the squared radicand: the unsquared
    variant misses the degeneracy equation's root for every q >= 1."""
    rows = []
    ok = True
    for q in range(1, q_max + 1):
        dv = degeneracy_value(descriptor(Family.SPIN9), q, resolve_jump=False)
        squared = spin9_closed_form_s(q, squared_radicand=True)
        unsquared = spin9_closed_form_s(q, squared_radicand=False)
        # the two forms live in different quadratic fields; compare enclosures
        gap = squared.enclosure(Fraction(1, 10**15)) - unsquared.enclosure(Fraction(1, 10**15))
        deviation = gap.midpoint
        matches = squared == dv.s
        deviates = gap.lo > AGREEMENT_TOL or gap.hi < -AGREEMENT_TOL
        ok = ok and matches and deviates
        t_unsquared = None
        if unsquared.sign() > 0:
            enc = unsquared.enclosure(Fraction(1, 10**15))
            t_unsquared = float(sqrt_enclosure(enc.midpoint, Fraction(1, 10**12)).midpoint)
        rows.append({
            "q": q,
            "squared_radicand_s": str(squared),
            "squared_radicand_t": float(dv.t_interval.midpoint),
            "unsquared_radicand_s": str(unsquared),
            "unsquared_radicand_t": t_unsquared,
            "s_deviation": float(deviation),
            "solves_equation": matches,
        })
    assert ok, "unsquared-radicand variant unexpectedly matched a root"
    return {"per_q": rows, "conclusion":
            "only the squared-radicand form solves the degeneracy equation"}


def _profile_sample_descriptors() -> list[tuple[FamilyDescriptor, Fraction, Fraction]]:
    return [
        (descriptor(Family.U, 1), Fraction(1, 20), Fraction(2)),
        (descriptor(Family.U, 2), Fraction(1, 20), Fraction(2)),
        (descriptor(Family.SP, 1), Fraction(1, 20), Fraction(2)),
        (descriptor(Family.SP, 2), Fraction(1, 10), Fraction(2)),
        (descriptor(Family.SPIN9), Fraction(1, 20), Fraction(2)),
    ]


def check_morse_profiles(samples: int = 100) -> dict[str, Any]:
    """Closed-form Morse index == enumeration count at sampled t, per family."""
    rows = []
    for desc, t_lo, t_hi in _profile_sample_descriptors():
        step = (t_hi - t_lo) / (samples - 1)
        max_index = 0
        for i in range(samples):
            t = t_lo + i * step
            closed = morse_index(desc, t)
            enumerated = morse_index_by_enumeration(desc, t)
            assert closed == enumerated, (desc, t, closed, enumerated)
            max_index = max(max_index, closed)
        rows.append({"family": str(desc), "t_range": [str(t_lo), str(t_hi)],
                     "samples": samples, "max_index_seen": max_index})
    return {"per_family": rows}


def check_morse_jumps_and_trend(q_trend: int = 20) -> dict[str, Any]:
    """Index jumps match the base multiplicities computed by the exact-rank
    oracles, N == 0 above the first degeneracy value, and N keeps growing."""
    sp1 = descriptor(Family.SP, 1)
    k9 = descriptor(Family.SPIN9)
    jumps_sp = [invariant_harmonic_dimension(1, q) for q in (1, 2, 3)]
    assert jumps_sp == [5, 14, 30], jumps_sp
    assert [sphere_multiplicity(4, q) for q in (1, 2, 3)] == jumps_sp
    jumps_k9 = [harmonic_polynomial_dimension(9, q) for q in (1, 2, 3)]
    assert jumps_k9 == [9, 44, 156], jumps_k9
    assert [sphere_multiplicity(8, q) for q in (1, 2, 3)] == jumps_k9

    trend = {}
    for desc in (sp1, k9):
        values = degeneracy_values(desc, q_trend, Fraction(1, 10**12), resolve_jump=False)
        eps = Fraction(1, 10**6)
        just_above_t1 = values[1].t_interval.hi + eps
        assert morse_index(desc, just_above_t1) == 0
        below_10 = morse_index(desc, values[10].t_interval.lo - eps)
        below_20 = morse_index(desc, values[20].t_interval.lo - eps)
        assert below_20 > below_10 > 0, (desc, below_10, below_20)
        trend[str(desc)] = {"index_below_t10": below_10, "index_below_t20": below_20}
    return {"sp_first_jumps": jumps_sp, "spin9_first_jumps": jumps_k9, "trend": trend}


def check_oracle_self_consistency() -> dict[str, Any]:
    """The invariant-harmonic oracle agrees with the round-4-sphere closed form
    (the n = 1 base is isometric to it), and the plain harmonic-rank oracle
    agrees with the binomial multiplicity formula."""
    inv = {q: invariant_harmonic_dimension(1, q) for q in range(4)}
    for q, dim in inv.items():
        assert dim == sphere_multiplicity(4, q) if q else dim == 1
    sphere_checks = 0
    for m in range(2, 11):
        for k in range(7):
            assert sphere_multiplicity(m, k) == harmonic_polynomial_dimension(m + 1, k)
            sphere_checks += 1
    return {"invariant_dims_n1": inv, "sphere_rank_checks": sphere_checks}


def check_surd_roundtrip(samples: int = 100) -> dict[str, Any]:
    """Random quadratics with one positive root: the surd solution substitutes
    back to exact zero, and its width-1e-30 enclosure leaves residual < 1e-25."""
    rng = random.Random(20260810)
    width = Fraction(1, 10**30)
    bound = Fraction(1, 10**25)
    for _ in range(samples):
        a = Fraction(rng.randint(1, 500), rng.randint(1, 50))
        b = Fraction(rng.randint(-500, 500), rng.randint(1, 50))
        c = Fraction(-rng.randint(1, 500), rng.randint(1, 50))
        root = solve_quadratic_positive(a, b, c)
        exact = root * root * a + root * b + c
        assert exact.sign() == 0, (a, b, c, exact)
        enc = root.enclosure(width)
        residuals = [a * x * x + b * x + c for x in (enc.lo, enc.hi)]
        assert all(abs(rv) < bound for rv in residuals), (a, b, c, residuals)
    return {"samples": samples, "enclosure_width": "1e-30", "residual_bound": "1e-25"}


def check_degeneracy_monotonicity(q_max: int = 20) -> dict[str, Any]:
    """Degeneracy sequences strictly decrease from t_0 = 1 toward 0."""
    out = {}
    for desc in (descriptor(Family.SP, 1), descriptor(Family.SP, 3), descriptor(Family.SPIN9)):
        values = degeneracy_values(desc, q_max, Fraction(1, 10**12),
                                   resolve_jump=False)  # asserts monotone
        assert values[0].t_interval.midpoint == 1
        assert values[q_max].t_interval.hi < values[q_max - 1].t_interval.lo
        out[str(desc)] = [float(v.t_interval.midpoint) for v in values[:6]]
    return {"first_values": out, "q_max": q_max}


def check_second_variation_at_degeneracies(q_max: int = 5) -> dict[str, Any]:
    """At each degeneracy value the crossing eigenvalue sits exactly on the
    threshold, so the second-variation coefficient vanishes there (exact in
    the value's quadratic field, and within any interval enclosure)."""
    count = 0
    for desc in (descriptor(Family.SP, 1), descriptor(Family.SP, 2), descriptor(Family.SPIN9)):
        for q in range(1, q_max + 1):
            dv = degeneracy_value(desc, q, resolve_jump=False)
            gf = gap_function(desc, 2 * q, 0)
            assert gf.value_at_surd(dv.s).sign() == 0, (desc, q)
            lam = base_eigenvalue(desc, q)
            # interval version: (m-1)*lam - scal(t) straddles 0 on the enclosure
            lo, hi = dv.t_interval.lo, dv.t_interval.hi
            vals = [(desc.m - 1) * (Fraction(lam) - threshold(desc, t=x)) for x in (lo, hi)]
            assert min(vals) <= 0 <= max(vals), (desc, q, vals)
            count += 1
    return {"degeneracies_checked": count}


def check_completeness_and_collapse(k_max: int = 60) -> dict[str, Any]:
    """Branch values stay >= c*k on a wide t-grid (the enumeration-truncation
    bound), collapse to round-sphere eigenvalues at t = 1, and the slope
    identity mu_k - phi_k = c*k holds."""
    t_grid = [Fraction(10) ** e for e in range(-3, 4)] + [Fraction(1, 3), Fraction(3, 7)]
    descs = [descriptor(Family.U, 1), descriptor(Family.U, 3),
             descriptor(Family.SP, 1), descriptor(Family.SP, 3),
             descriptor(Family.SPIN9)]
    checks = 0
    for desc in descs:
        c = desc.completeness_constant
        for k in range(0, k_max + 1):
            if k >= 1:
                assert sphere_eigenvalue(desc.m, k) - fiber_eigenvalue(desc, k) == c * k
            assert branch_value(desc, k, k if k % 2 else 0, s=Fraction(1)) \
                == sphere_eigenvalue(desc.m, k)
            for j, _ in admissible_pairs(desc, k):
                assert branch_value(desc, k, j, s=Fraction(1)) == sphere_eigenvalue(desc.m, k)
                for t in t_grid:
                    assert branch_value(desc, k, j, t) >= c * k
                    checks += 1
    return {"branch_evaluations": checks, "k_max": k_max}


def check_diagram_intersections(precision: Fraction = Fraction(1, 10**9)) -> dict[str, Any]:
    """Grid-detected crossings of threshold and (2q, 0) branches refine to the
    exact degeneracy values; the (1, 1) branch is tangent at t = 1.

    Mirrors the plotted diagram: family sp, n = 1, branches with k <= 6,
    t in [0.05, 2] at step 0.005.
    """
    desc = descriptor(Family.SP, 1)
    step = Fraction(5, 1000)
    grid = [Fraction(5, 100) + i * step for i in range(int((2 - Fraction(5, 100)) / step) + 1)]
    found: dict[int, float] = {}
    for q in (1, 2, 3):
        gf = gap_function(desc, 2 * q, 0)
        for t_prev, t_next in zip(grid, grid[1:]):
            v_prev, v_next = gf.value(t_prev ** 2), gf.value(t_next ** 2)
            if v_prev > 0 > v_next:
                enc = bisect_root(gf.value, t_prev ** 2, t_next ** 2, precision / 10)
                root_t = sqrt_enclosure(enc.midpoint, precision / 10).midpoint
                found[q] = float(root_t)
    deviations = {}
    for q, approx_t in found.items():
        exact = degeneracy_value(desc, q).t_interval.midpoint
        deviations[q] = abs(float(exact) - approx_t)
        assert deviations[q] < 1e-6, (q, deviations[q])
    assert sorted(found) == [1, 2, 3], found
    crit = gap_critical_point(gap_function(desc, 1, 1))
    assert crit is not None and crit[0] == 1 and crit[1] == 0
    return {"intersections_t": found, "deviations": deviations,
            "tangency": "branch (1,1) touches the threshold exactly at t = 1"}


ALL_CHECKS: list[tuple[str, Callable[[], dict[str, Any]]]] = [
    ("lambda1_enumeration", check_lambda1_enumeration),
    ("lambda1_breakpoints", check_lambda1_breakpoints),
    ("sp_breakpoint_factor", check_sp_breakpoint_factor),
    ("threshold_normal_form", check_threshold_normal_form),
    ("u_family_rigidity", check_u_rigidity),
    ("non_crossing_j_ge_1", check_non_crossing),
    ("degeneracy_closed_forms", check_degeneracy_closed_forms),
    ("spin9_radicand_comparison", check_spin9_radicand_comparison),
    ("morse_profile_consistency", check_morse_profiles),
    ("morse_jumps_and_trend", check_morse_jumps_and_trend),
    ("oracle_self_consistency", check_oracle_self_consistency),
    ("surd_roundtrip", check_surd_roundtrip),
    ("degeneracy_monotonicity", check_degeneracy_monotonicity),
    ("second_variation_at_degeneracies", check_second_variation_at_degeneracies),
    ("completeness_and_collapse", check_completeness_and_collapse),
    ("diagram_intersections", check_diagram_intersections),
]


def run_suite(echo: Callable[[str], None] | None = None) -> dict[str, Any]:
    """Run every check; return the full report (report['passed'] is the verdict)."""
    checks = []
    all_passed = True
    for name, fn in ALL_CHECKS:
        start = time.perf_counter()
        try:
            details = fn()
            passed = True
        except (AssertionError, BergerError) as exc:
            details = {"error": f"{type(exc).__name__}: {exc}"}
            passed = False
        elapsed = time.perf_counter() - start
        checks.append({"name": name, "passed": passed,
                       "elapsed_s": round(elapsed, 3), "details": details})
        all_passed = all_passed and passed
        if echo is not None:
            echo(f"{'PASS' if passed else 'FAIL'}  {name}  ({elapsed:.2f}s)")
    return {
        "schema_version": SCHEMA_VERSION,
        "suite": "berger-spheres-verify",
        "passed": all_passed,
        "checks": checks,
    }
