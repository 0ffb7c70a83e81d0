"""Eigenvalue branches of the Laplacians of the three homogeneous sphere families.

Each family scales the round metric along the fibers of a Hopf fibration by a
factor t**2. Every eigenvalue of the scaled Laplacian lies on a branch

    value(k, j; t) = mu_k + (1/t**2 - 1) * phi_j

where mu_k is a round-sphere eigenvalue of the total space and phi_j a fiber
eigenvalue. Only pairs with 0 <= j <= k and k - j even are admissible, and of
those only some are established to actually occur; branches therefore carry an
explicit Certain/Candidate status.

All arithmetic is exact in s = t**2 (a rational), so eigenvalue coincidences
are decidable equalities, not floating-point near-misses.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import AdmissibilityError, DomainError, ResourceLimitError, UnsupportedQueryError
from .numerics import (
    RationalInput,
    as_fraction,
    invariant_harmonic_dimension,
)

#: Cap on the truncation degree of spectrum enumerations.
DEFAULT_K_LIMIT = 100_000

#: Default cap on the monomial-basis size base_multiplicity may hand to the
#: exact-rank oracle. Deliberately far below the oracle's own hard limit:
#: elimination beyond ~10**4 monomials takes tens of seconds, and production
#: surfaces degrade to "unknown" rather than stall. Pass a larger value to
#: compute anyway.
BASE_MULTIPLICITY_MONOMIAL_LIMIT = 5_000


class Family(enum.Enum):
    """The three one-parameter families of homogeneous metrics on spheres."""

    U = "u"          # S^(2n+1), circle fibers over complex projective space
    SP = "sp"        # S^(4n+3), 3-sphere fibers over quaternionic projective space
    SPIN9 = "spin9"  # S^15, 7-sphere fibers over the round 8-sphere of radius 1/2

    @staticmethod
    def parse(value: "Family | str") -> "Family":
        if isinstance(value, Family):
            return value
        try:
            return Family(value.lower())
        except (ValueError, AttributeError):
            raise DomainError(f"unknown family {value!r}; expected one of u, sp, spin9") from None


class Status(enum.Enum):
    """Whether a branch provably occurs in the spectrum or is merely admissible."""

    CERTAIN = "certain"
    CANDIDATE = "candidate"


@dataclass(frozen=True)
class FamilyDescriptor:
    """Structural constants of one family.

    m is the total dimension, fiber_dim the Hopf fiber dimension, and
    completeness_constant the slope c in the lower bound
    value(k, j; t) >= c * k, which makes finite spectrum enumeration complete.
    The identity mu_k - phi_k = c * k holds for every k.
    """

    family: Family
    n: int | None
    m: int
    fiber_dim: int
    completeness_constant: int

    def __str__(self) -> str:
        if self.family is Family.SPIN9:
            return "spin9"
        return f"{self.family.value}(n={self.n})"


def descriptor(family: Family | str, n: int | None = None) -> FamilyDescriptor:
    """Validated descriptor for a family.

    n is required (>= 1) for families U and SP; the SPIN9 family is a single
    space and rejects any n.
    """
    family = Family.parse(family)
    if family is Family.SPIN9:
        if n is not None:
            raise DomainError("family spin9 takes no n")
        return FamilyDescriptor(family, None, 15, 7, 8)
    if n is None or n < 1:
        raise DomainError(f"family {family.value} needs an integer n >= 1, got {n!r}")
    if family is Family.U:
        return FamilyDescriptor(family, n, 2 * n + 1, 1, 2 * n)
    return FamilyDescriptor(family, n, 4 * n + 3, 3, 4 * n)


def squared_parameter(t: RationalInput | None = None, s: RationalInput | None = None) -> Fraction:
    """Resolve the scaling parameter: exactly one of t (returns t**2) or s = t**2.

    Passing s directly keeps exactness for parameters whose square is rational
    but whose value is not (e.g. breakpoints like t = 1/sqrt(6))."""
    if (t is None) == (s is None):
        raise DomainError("specify exactly one of t and s")
    if t is not None:
        t = as_fraction(t)
        if t <= 0:
            raise DomainError(f"scaling parameter must be positive, got t={t}")
        return t * t
    value = as_fraction(s)
    if value <= 0:
        raise DomainError(f"scaling parameter must be positive, got s={value}")
    return value


# ---------------------------------------------------------------------------
# Round-sphere and fiber spectra
# ---------------------------------------------------------------------------


def sphere_eigenvalue(m: int, k: int) -> int:
    """k-th eigenvalue k*(k+m-1) of the round m-sphere."""
    if m < 1:
        raise DomainError(f"sphere dimension must be >= 1, got {m}")
    if k < 0:
        raise DomainError(f"degree must be >= 0, got {k}")
    return k * (k + m - 1)


def sphere_multiplicity(m: int, k: int) -> int:
    """Multiplicity of the k-th eigenvalue of the round m-sphere.

    This is the dimension of degree-k harmonic homogeneous polynomials in
    m + 1 variables: C(m+k, k) - C(m+k-2, k-2)."""
    if m < 2:
        raise DomainError(f"sphere dimension must be >= 2, got {m}")
    if k < 0:
        raise DomainError(f"degree must be >= 0, got {k}")
    second = math.comb(m + k - 2, k - 2) if k >= 2 else 0
    return math.comb(m + k, k) - second


def fiber_eigenvalue(desc: FamilyDescriptor, j: int) -> int:
    """j-th eigenvalue phi_j of the Hopf fiber: j**2, j(j+2), j(j+6) for the
    circle, 3-sphere and 7-sphere fibers respectively."""
    if j < 0:
        raise DomainError(f"fiber degree must be >= 0, got {j}")
    return j * (j + desc.fiber_dim - 1)


def is_admissible(k: int, j: int) -> bool:
    return 0 <= j <= k and (k - j) % 2 == 0


def admissible_pairs(desc: FamilyDescriptor, k: int) -> list[tuple[int, Status]]:
    """Admissible fiber degrees j = k, k-2, ..., with their occurrence status.

    Certain entries are those with an explicit eigenfunction construction:
    j = k for every k and j = 0 for even k in all families; families over the
    complex projective base additionally have j = 1 (k odd) and j = 2 (k even).
    Everything else admissible is a Candidate: not decided either way.
    """
    if k < 0:
        raise DomainError(f"degree must be >= 0, got {k}")
    pairs: list[tuple[int, Status]] = []
    for j in range(k, -1, -2):
        if j == k or j == 0:
            status = Status.CERTAIN
        elif desc.family is Family.U and j in (1, 2):
            status = Status.CERTAIN
        else:
            status = Status.CANDIDATE
        pairs.append((j, status))
    return pairs


def branch_value(desc: FamilyDescriptor, k: int, j: int,
                 t: RationalInput | None = None, *, s: RationalInput | None = None) -> Fraction:
    """Exact branch value mu_k + (1/s - 1) * phi_j at s = t**2."""
    if not is_admissible(k, j):
        raise AdmissibilityError(
            f"(k={k}, j={j}) is not admissible: need 0 <= j <= k with k - j even")
    s = squared_parameter(t, s)
    mu = sphere_eigenvalue(desc.m, k)
    phi = fiber_eigenvalue(desc, j)
    return mu + (1 / s - 1) * phi


# ---------------------------------------------------------------------------
# Base (j = 0) branches
# ---------------------------------------------------------------------------


def base_eigenvalue(desc: FamilyDescriptor, q: int) -> int:
    """q-th base-space eigenvalue: the t-independent value of branch (2q, 0)."""
    if q < 0:
        raise DomainError(f"base degree must be >= 0, got {q}")
    return sphere_eigenvalue(desc.m, 2 * q)


def base_multiplicity(desc: FamilyDescriptor, q: int,
                      max_monomials: int = BASE_MULTIPLICITY_MONOMIAL_LIMIT) -> int:
    """Multiplicity of the q-th base eigenvalue (= dim of the (2q, 0) eigenspace).

    SPIN9: the base is a round 8-sphere, so this is sphere_multiplicity(8, q).
    SP: computed by the invariant-harmonic-polynomial oracle (degree-2q
    harmonic polynomials constant along the quaternionic Hopf fibers); for
    n = 1 the base is isometric to a round 4-sphere and the closed form
    sphere_multiplicity(4, q) is used, cross-checked against the oracle in
    the test suite. U: not provided (only the first value is published,
    exposed through the first-eigenvalue multiplicity instead).

    Raises ResourceLimitError when the oracle computation would exceed
    max_monomials basis monomials.
    """
    if q < 0:
        raise DomainError(f"base degree must be >= 0, got {q}")
    if desc.family is Family.U:
        raise UnsupportedQueryError(
            "base multiplicities for family u are not provided beyond q = 1; "
            "see lambda1_multiplicity")
    if q == 0:
        return 1
    if desc.family is Family.SPIN9:
        return sphere_multiplicity(8, q)
    if desc.n == 1:
        return sphere_multiplicity(4, q)
    return invariant_harmonic_dimension(desc.n, q, max_monomials)


# ---------------------------------------------------------------------------
# Branches and spectrum slices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralBranch:
    """One candidate eigenvalue curve, indexed by total-space and fiber degrees."""

    k: int
    j: int
    status: Status
    multiplicity: int | None  # None when the sources do not determine it


def branch_multiplicity(desc: FamilyDescriptor, k: int, j: int) -> int | None:
    """Multiplicity of a branch when determined by the published results, else None.

    Known cases: the constants (0, 0); branch (1, 1) (the full first
    eigenspace of the round total sphere, except for SPIN9 where no value is
    published); and j = 0 branches via the base multiplicity."""
    if not is_admissible(k, j):
        raise AdmissibilityError(
            f"(k={k}, j={j}) is not admissible: need 0 <= j <= k with k - j even")
    n = desc.n
    if k == 0:
        return 1
    if (k, j) == (1, 1):
        if desc.family is Family.U:
            return 2 * (n + 1)
        if desc.family is Family.SP:
            return 4 * (n + 1)
        return None
    if j == 0:
        if desc.family is Family.U:
            return n * (n + 2) if k == 2 else None
        return base_multiplicity(desc, k // 2)
    return None


@dataclass(frozen=True)
class SpectrumSlice:
    """All branch values <= cutoff at a fixed parameter, verifiably complete.

    Every admissible branch with degree k <= k_max_used is evaluated, and
    k_max_used = ceil(cutoff / c) guarantees no branch with a value <= cutoff
    is missed (branch values are bounded below by c * k for every t > 0).
    Entries are sorted by (value, k, j).
    """

    s: Fraction
    cutoff: Fraction
    entries: tuple[tuple[Fraction, SpectralBranch], ...]
    k_max_used: int

    @property
    def t(self) -> float:
        return math.sqrt(self.s)

    def certain_entries(self) -> list[tuple[Fraction, SpectralBranch]]:
        return [(v, b) for v, b in self.entries if b.status is Status.CERTAIN]

    def min_positive(self, *, certain_only: bool = False) -> Fraction | None:
        for value, branch in self.entries:
            if value > 0 and (not certain_only or branch.status is Status.CERTAIN):
                return value
        return None


def enumerate_spectrum_below(
    desc: FamilyDescriptor,
    t: RationalInput | None = None,
    *,
    s: RationalInput | None = None,
    cutoff: RationalInput,
    k_limit: int = DEFAULT_K_LIMIT,
) -> SpectrumSlice:
    """Every admissible branch value <= cutoff, as a complete finite enumeration.

    Branch multiplicities are attached where determined; a multiplicity whose
    oracle computation would exceed its resource limit degrades to None rather
    than failing the enumeration.
    """
    s = squared_parameter(t, s)
    cutoff = as_fraction(cutoff)
    if cutoff <= 0:
        raise DomainError(f"cutoff must be positive, got {cutoff}")
    k_max = math.ceil(cutoff / desc.completeness_constant)
    if k_max > k_limit:
        raise ResourceLimitError(
            f"enumeration below {cutoff} needs k_max = {k_max}, above the limit {k_limit}",
            required=k_max, limit=k_limit)
    inv_s_minus_1 = 1 / s - 1
    entries: list[tuple[Fraction, SpectralBranch]] = []
    for k in range(k_max + 1):
        mu = sphere_eigenvalue(desc.m, k)
        for j, status in admissible_pairs(desc, k):
            value = mu + inv_s_minus_1 * fiber_eigenvalue(desc, j)
            if value <= cutoff:
                try:
                    mult = branch_multiplicity(desc, k, j)
                except ResourceLimitError:
                    mult = None
                entries.append((value, SpectralBranch(k, j, status, mult)))
    entries.sort(key=lambda item: (item[0], item[1].k, item[1].j))
    return SpectrumSlice(s=s, cutoff=cutoff, entries=tuple(entries), k_max_used=k_max)
