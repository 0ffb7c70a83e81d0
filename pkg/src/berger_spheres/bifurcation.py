"""Degeneracy analysis: gap functions, exact degeneracy values, Morse-index
profiles, and the rigid/bifurcation classification of every parameter value.

The gap function of a branch is threshold - branch value, written in s = t**2
as p/s + r - c*s. Branches with j >= 1 have p < 0, a unique interior maximum
at s* = sqrt(-p/c), and maximum value r - 2*sqrt(-p*c) <= 0 (zero only for the
branch (1, 1), at s* = 1): they never cross below the threshold. Branches
(2q, 0) have p >= 0 and a strictly decreasing gap, so each crosses zero at
most once; those crossings are the degeneracy values, exact quadratic surds.
Crossing one as t decreases raises the Morse index by the multiplicity of the
q-th base eigenvalue, which certifies a bifurcation there; everywhere else the
family is locally rigid.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AdmissibilityError,
    ConsistencyError,
    DomainError,
    NoDegeneracyError,
    ResourceLimitError,
)
from .numerics import (
    Enclosure,
    RationalInput,
    Surd,
    as_fraction,
    bisect_root,
    solve_quadratic_positive,
    sqrt_enclosure,
)
from .spectra import (
    Family,
    FamilyDescriptor,
    Status,
    base_multiplicity,
    enumerate_spectrum_below,
    fiber_eigenvalue,
    is_admissible,
    sphere_eigenvalue,
    squared_parameter,
)
from .families import threshold, threshold_coefficients

#: Default width of verified t-enclosures of degeneracy values.
DEFAULT_PRECISION = Fraction(1, 10**12)

#: Default tolerance when classifying a parameter against degeneracy values.
DEFAULT_CLASSIFY_PRECISION = Fraction(1, 10**9)


# ---------------------------------------------------------------------------
# Gap functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GapFunction:
    """threshold - branch value of branch (k, j), as p/s + r - c*s in s = t**2."""

    desc: FamilyDescriptor
    k: int
    j: int
    p: Fraction
    r: Fraction
    c: Fraction

    def value(self, s: RationalInput) -> Fraction:
        s = as_fraction(s)
        if s <= 0:
            raise DomainError(f"gap functions are defined for s > 0, got {s}")
        return self.p / s + self.r - self.c * s

    def value_at_surd(self, s: Surd) -> Surd:
        if s.sign() <= 0:
            raise DomainError("gap functions are defined for s > 0")
        return self.p / s + Surd.make(self.r) - s * self.c


def gap_function(desc: FamilyDescriptor, k: int, j: int) -> GapFunction:
    """Exact gap-function coefficients for an admissible branch."""
    if not is_admissible(k, j):
        raise AdmissibilityError(
            f"(k={k}, j={j}) is not admissible: need 0 <= j <= k with k - j even")
    coeffs = threshold_coefficients(desc)
    phi = fiber_eigenvalue(desc, j)
    mu = sphere_eigenvalue(desc.m, k)
    return GapFunction(desc, k, j, coeffs.a - phi, coeffs.b - mu + phi, coeffs.c)


def gap_critical_point(gf: GapFunction) -> tuple[Surd, Surd] | None:
    """Unique interior maximum of the gap function, or None if it has none.

    For p < 0 (every j >= 1 branch) the derivative -p/s**2 - c vanishes only
    at s* = sqrt(-p/c), a global maximum with value r - 2*sqrt(-p*c); both are
    returned as exact surds. For p >= 0 the gap is strictly decreasing on
    s > 0 and there is no critical point.
    """
    if gf.p >= 0:
        return None
    s_star = Surd.make(0, 1, -gf.p / gf.c)
    max_value = Surd.make(gf.r, -2, -gf.p * gf.c)
    return s_star, max_value


# ---------------------------------------------------------------------------
# Degeneracy values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegeneracyValue:
    """A parameter value where the threshold meets an eigenvalue branch.

    For q >= 1, s = t**2 is the unique positive root of c*s**2 - r*s - p = 0
    for the (2q, 0) gap function, stored exactly; t_interval is a verified
    enclosure of t of width at most the requested precision. index_jump is
    the Morse-index jump across the value (the q-th base multiplicity), or
    None when its oracle computation is infeasible. q = 0 is the tangency of
    the threshold with branch (1, 1) at t = 1: a degeneracy in every family,
    with no Morse-index jump.
    """

    q: int
    branch: tuple[int, int]
    s: Surd
    t_interval: Enclosure
    index_jump: int | None


def _sqrt_interval(s: Surd, precision: Fraction) -> Enclosure:
    """Verified enclosure of sqrt(s) of width <= precision, s a positive surd."""
    width = precision / 4
    while True:
        se = s.enclosure(width)
        lo = sqrt_enclosure(max(se.lo, Fraction(0)), width).lo
        hi = sqrt_enclosure(se.hi, width).hi
        out = Enclosure(lo, hi)
        if out.width <= precision:
            return out
        width /= 16


def _root_bracket(gf: GapFunction) -> tuple[Fraction, Fraction]:
    """Bracket [lo, hi] with gap(lo) > 0 > gap(hi) for a decreasing gap (p > 0)."""
    hi = Fraction(1)
    while gf.value(hi) >= 0:
        hi *= 2
    lo = min(Fraction(1, 2), hi / 2)
    while gf.value(lo) <= 0:
        lo /= 2
    return lo, hi


def sp_closed_form_s(n: int, q: int) -> Surd:
    """Closed-form s = t**2 of the q-th degeneracy value of the 4n+3 family."""
    if n < 1 or q < 1:
        raise DomainError("need n >= 1 and q >= 1")
    x = Fraction(2, 3) * (n - 2 * q * n - 2 * q + 2) \
        - Fraction(q, 3) * (2 * q + Fraction(1, n) + Fraction(q, n))
    y = 4 * q * n * n - 2 * n * n + 2 * q * q * n + 4 * q * n - 4 * n + q * q + q
    return Surd.make(x, Fraction(1, 6 * n), 18 * n + 4 * y * y)


def spin9_closed_form_s(q: int, *, squared_radicand: bool = True) -> Surd:
    """Closed-form s = t**2 of the q-th degeneracy value of the 15-sphere family.

    With squared_radicand=True (the default) this is
    2 - 7q/2 - q**2/2 + sqrt(3 + (q**2 + 7q - 4)**2)/2, which solves the
    degeneracy equation exactly. The squared_radicand=False variant leaves the
    quadratic term unsquared under the radical; it does not solve the equation
    for any q >= 1 (it even goes negative) and is kept only so the verify
    report can document its deviation.
    """
    if q < 1:
        raise DomainError("need q >= 1")
    inner = q * q + 7 * q - 4
    radicand = 3 + (inner * inner if squared_radicand else inner)
    if radicand < 0:
        raise DomainError(f"negative radicand {radicand}")
    return Surd.make(2 - Fraction(7 * q, 2) - Fraction(q * q, 2), Fraction(1, 2), radicand)


def degeneracy_value(desc: FamilyDescriptor, q: int,
                     precision: RationalInput = DEFAULT_PRECISION,
                     *, check: bool = True, resolve_jump: bool = True) -> DegeneracyValue:
    """The q-th degeneracy value, as an exact surd with a verified t-enclosure.

    q = 0 is t = 1 exactly, for every family. For q >= 1 the value exists only
    for the SP and SPIN9 families (family U's (2q, 0) gap functions have no
    positive root; NoDegeneracyError reports that). With check=True the exact
    root is cross-checked against certified bisection of the gap function and
    against the family's closed form; disagreement raises ConsistencyError.
    resolve_jump=False skips the index-jump multiplicity (stores None), which
    avoids potentially expensive oracle work when only the value is needed.
    """
    precision = as_fraction(precision)
    if precision <= 0:
        raise DomainError(f"precision must be positive, got {precision}")
    if q < 0:
        raise DomainError(f"q must be >= 0, got {q}")
    if q == 0:
        one = Surd.make(1)
        return DegeneracyValue(0, (1, 1), one, Enclosure(Fraction(1), Fraction(1)), 0)
    gf = gap_function(desc, 2 * q, 0)
    if desc.family is Family.U:
        # gap(s) = (2n+2) - 2q(2q+2n) - s < 0 for all s > 0: no root.
        raise NoDegeneracyError(
            f"family u has no degeneracy values besides t = 1 (gap root of "
            f"branch ({2 * q}, 0) is non-positive)")
    root = solve_quadratic_positive(gf.c, -gf.r, -gf.p)
    if check:
        lo, hi = _root_bracket(gf)
        certified = bisect_root(gf.value, lo, hi, precision)
        se = root.enclosure(precision / 4)
        if se.lo > certified.hi or se.hi < certified.lo:
            raise ConsistencyError(
                f"surd root {root} of branch ({2 * q}, 0) disagrees with "
                f"bisection enclosure [{certified.lo}, {certified.hi}]")
        closed = sp_closed_form_s(desc.n, q) if desc.family is Family.SP \
            else spin9_closed_form_s(q)
        if closed != root:
            raise ConsistencyError(
                f"closed form {closed} != gap root {root} for {desc}, q={q}")
    jump: int | None = None
    if resolve_jump:
        try:
            jump = base_multiplicity(desc, q)
        except ResourceLimitError:
            jump = None
    return DegeneracyValue(q, (2 * q, 0), root, _sqrt_interval(root, precision), jump)


def degeneracy_values(desc: FamilyDescriptor, q_max: int,
                      precision: RationalInput = DEFAULT_PRECISION,
                      *, check: bool = True, resolve_jump: bool = True) -> list[DegeneracyValue]:
    """Degeneracy values for q = 0..q_max, asserting the strict decrease in t.

    For family U the list is [t = 1] for any q_max (there is nothing else).
    """
    if q_max < 0:
        raise DomainError(f"q_max must be >= 0, got {q_max}")
    values = [degeneracy_value(desc, 0, precision)]
    if desc.family is Family.U:
        return values
    for q in range(1, q_max + 1):
        values.append(degeneracy_value(desc, q, precision, check=check,
                                       resolve_jump=resolve_jump))
    for prev, cur in zip(values, values[1:]):
        # s_q < s_{q-1} exactly, via the strictly decreasing gap of the later
        # branch: gap_{2q,0}(s_{q-1}) < 0 iff s_{q-1} > s_q.
        q = cur.q
        if q >= 1:
            gf = gap_function(desc, 2 * q, 0)
            if not (gf.value_at_surd(prev.s).sign() < 0):
                raise ConsistencyError(
                    f"degeneracy values not strictly decreasing at q={q} for {desc}")
    return values


# ---------------------------------------------------------------------------
# Morse index
# ---------------------------------------------------------------------------


def morse_index(desc: FamilyDescriptor,
                t: RationalInput | None = None, *,
                s: RationalInput | None = None) -> int:
    """Number of positive eigenvalues (with multiplicity) below the threshold.

    Equals the sum of the base multiplicities over the degeneracy values above
    t. Exact: at t equal to a degeneracy value the crossing eigenvalue sits
    exactly on the threshold and is not counted, which reproduces the
    half-open convention of the closed-form step function. Branches with
    j >= 1 never contribute (their gap maxima are <= 0; see
    gap_critical_point), so only (2q, 0) branches are scanned. Family U's
    index is 0 at every t.
    """
    s = squared_parameter(t, s)
    if desc.family is Family.U:
        return 0
    total = 0
    q = 1
    while True:
        gf = gap_function(desc, 2 * q, 0)
        # gap > 0 at s iff s < s_q; the roots s_q strictly decrease in q, so
        # the first non-positive gap ends the scan.
        if gf.value(s) > 0:
            total += base_multiplicity(desc, q)
            q += 1
        else:
            return total


def morse_index_by_enumeration(desc: FamilyDescriptor,
                               t: RationalInput | None = None, *,
                               s: RationalInput | None = None) -> int:
    """Independent Morse-index count from a full spectrum enumeration.

    Enumerates every admissible branch value up to the threshold and counts
    the positive Certain j = 0 values strictly below it, weighted by
    multiplicity. Asserts along the way that no j >= 1 admissible value lies
    strictly below the threshold.
    """
    s = squared_parameter(t, s)
    level = threshold(desc, s=s)
    if level <= 0:
        return 0
    sl = enumerate_spectrum_below(desc, s=s, cutoff=level)
    total = 0
    for value, branch in sl.entries:
        if branch.j >= 1 and value < level:
            raise ConsistencyError(
                f"branch ({branch.k}, {branch.j}) value {value} lies below the "
                f"threshold {level} at s={s}; the j >= 1 non-crossing property failed")
        if branch.j == 0 and branch.k >= 2 and 0 < value < level:
            if branch.status is not Status.CERTAIN:
                raise ConsistencyError(
                    f"j = 0 branch ({branch.k}, 0) unexpectedly not Certain")
            if branch.multiplicity is None:
                raise ResourceLimitError(
                    f"multiplicity of branch ({branch.k}, 0) unavailable for {desc}",
                    required=-1, limit=-1)
            total += branch.multiplicity
    return total


@dataclass(frozen=True)
class MorsePiece:
    """One step of the Morse-index step function: index on [t_lower, t_upper).

    t_upper is None on the rightmost piece (extends to +infinity); t_lower is
    None when the piece extends to 0 (family U's single piece).
    """

    q: int
    t_lower: Enclosure | None
    t_upper: Enclosure | None
    index: int


@dataclass(frozen=True)
class MorseProfile:
    """The Morse index as an ordered step function of t (decreasing t order)."""

    desc: FamilyDescriptor
    pieces: tuple[MorsePiece, ...]


def morse_profile(desc: FamilyDescriptor, q_max: int,
                  precision: RationalInput = DEFAULT_PRECISION) -> MorseProfile:
    """Step-function profile of the Morse index down to the q_max-th degeneracy."""
    if desc.family is Family.U:
        return MorseProfile(desc, (MorsePiece(0, None, None, 0),))
    values = degeneracy_values(desc, q_max + 1, precision)
    pieces = [MorsePiece(0, values[1].t_interval, None, 0)]
    running = 0
    for q in range(1, q_max + 1):
        jump = values[q].index_jump
        if jump is None:
            raise ResourceLimitError(
                f"index jump at q={q} unavailable for {desc}", required=-1, limit=-1)
        running += jump
        pieces.append(MorsePiece(q, values[q + 1].t_interval, values[q].t_interval, running))
    return MorseProfile(desc, tuple(pieces))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


class Kind(enum.Enum):
    LOCALLY_RIGID = "locally_rigid"
    BIFURCATION = "bifurcation"
    TRIVIAL_BIFURCATION = "trivial_bifurcation"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Classification:
    """Classification of one parameter value.

    For BIFURCATION, q >= 1 identifies the degeneracy value, index_jump the
    Morse-index jump across it, and breaks_symmetry records that every
    bifurcating solution is non-homogeneous. TRIVIAL_BIFURCATION is t = 1
    (the round metric) in every family. UNDETERMINED means t matched a
    degeneracy value but the jump could not be certified.
    """

    kind: Kind
    q: int | None = None
    index_jump: int | None = None
    breaks_symmetry: bool | None = None


def _sqrt_diff_exceeds(s_small: "Surd | Fraction", s_large: "Surd | Fraction",
                       p: Fraction) -> int:
    """Exact sign of sqrt(s_large) - sqrt(s_small) - p (p > 0).

    Both arguments must be in the same quadratic field (or rational). Uses
    only field arithmetic: sqrt(s_large) - sqrt(s_small) > p iff
    s_large - s_small - p**2 > 0 and (s_large - s_small - p**2)**2 > 4p**2*s_small.
    """
    a = s_large if isinstance(s_large, Surd) else Surd.make(s_large)
    b = s_small if isinstance(s_small, Surd) else Surd.make(s_small)
    lhs = a - b - Surd.make(p * p)
    if lhs.sign() <= 0:
        return -1
    rhs = b * (4 * p * p)
    return (lhs * lhs - rhs).sign()


def classify(desc: FamilyDescriptor,
             t: RationalInput | None = None, *,
             s: RationalInput | None = None,
             precision: RationalInput = DEFAULT_CLASSIFY_PRECISION) -> Classification:
    """Classify a parameter value as rigid, bifurcation, or the trivial t = 1.

    A value within `precision` of a degeneracy value (in t) is classified by
    that value; the t = 1 check takes precedence. All tolerance comparisons
    are decided exactly in the degeneracy value's quadratic field.
    """
    s = squared_parameter(t, s)
    p = as_fraction(precision)
    if not 0 < p < 1:
        raise DomainError(f"precision must be in (0, 1), got {p}")
    if (1 - p) ** 2 <= s <= (1 + p) ** 2:
        return Classification(Kind.TRIVIAL_BIFURCATION, q=0)
    if desc.family is Family.U:
        return Classification(Kind.LOCALLY_RIGID)
    q = 1
    while True:
        gf = gap_function(desc, 2 * q, 0)
        s_q = solve_quadratic_positive(gf.c, -gf.r, -gf.p)
        if _sqrt_diff_exceeds(s_q, s, p) > 0:
            # sqrt(s) - sqrt(s_q) > p: every later degeneracy value is smaller
            # still, so nothing matches.
            return Classification(Kind.LOCALLY_RIGID)
        if _sqrt_diff_exceeds(s, s_q, p) <= 0:
            # within precision of t_q
            try:
                jump: int | None = base_multiplicity(desc, q)
            except ResourceLimitError:
                jump = None
            if jump is None:
                return Classification(Kind.UNDETERMINED, q=q)
            return Classification(Kind.BIFURCATION, q=q, index_jump=jump,
                                  breaks_symmetry=True)
        q += 1
