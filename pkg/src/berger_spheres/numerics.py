"""Verified numeric kernel: exact rationals, quadratic surds, certified enclosures,
interval bisection, and exact-rank dimension oracles for harmonic polynomials.

Everything here is exact: values are `fractions.Fraction`, `Surd` (a + b*sqrt(d))
or `Enclosure` (a rational interval certified to contain the represented real).
No floating point enters any computation; floats are accepted as *inputs* and
converted to the exact rational they denote.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt
from typing import Callable, Iterable, Sequence

from .errors import BracketError, DomainError, ResourceLimitError

RationalInput = int | float | str | Fraction

#: Default width for enclosures of irrational values.
DEFAULT_ENCLOSURE_WIDTH = Fraction(1, 10**12)

#: Trial-division bound for squarefree reduction of radicands. Factors with a
#: prime divisor above this bound are left under the radical; comparisons stay
#: exact regardless (see Surd._compare).
SQUAREFREE_TRIAL_BOUND = 100_000


def as_fraction(x: RationalInput) -> Fraction:
    """Convert an input to the exact rational it denotes.

    Floats convert via their exact binary value; strings via decimal parsing
    (so "0.3" means 3/10, not the float nearest 0.3).
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise DomainError(f"cannot interpret {x!r} as a rational number")


# ---------------------------------------------------------------------------
# Enclosures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Enclosure:
    """A closed rational interval [lo, hi] certified to contain a real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise DomainError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: RationalInput) -> bool:
        x = as_fraction(x)
        return self.lo <= x <= self.hi

    def __add__(self, other: "Enclosure | RationalInput") -> "Enclosure":
        if isinstance(other, Enclosure):
            return Enclosure(self.lo + other.lo, self.hi + other.hi)
        x = as_fraction(other)
        return Enclosure(self.lo + x, self.hi + x)

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other: "Enclosure | RationalInput") -> "Enclosure":
        if isinstance(other, Enclosure):
            return self + (-other)
        return self + (-as_fraction(other))

    def scale(self, factor: RationalInput) -> "Enclosure":
        f = as_fraction(factor)
        if f >= 0:
            return Enclosure(self.lo * f, self.hi * f)
        return Enclosure(self.hi * f, self.lo * f)

    def __float__(self) -> float:
        return float(self.midpoint)


def sqrt_enclosure(x: RationalInput, width: RationalInput = DEFAULT_ENCLOSURE_WIDTH) -> Enclosure:
    """Certified enclosure of sqrt(x) (x >= 0 rational) of at most the given width.

    Outward rounded: lo**2 <= x <= hi**2 always holds exactly.
    """
    x = as_fraction(x)
    width = as_fraction(width)
    if x < 0:
        raise DomainError(f"sqrt of negative rational {x}")
    if width <= 0:
        raise DomainError("enclosure width must be positive")
    if x == 0:
        return Enclosure(Fraction(0), Fraction(0))
    scale = 1
    two_over_width = 2 / width
    while scale < two_over_width:
        scale *= 2
    num, den = x.numerator, x.denominator
    t_floor = (num * scale * scale) // den
    lo = Fraction(isqrt(t_floor), scale)
    t_ceil = -((-num * scale * scale) // den)
    r = isqrt(t_ceil)
    if r * r < t_ceil:
        r += 1
    hi = Fraction(r, scale)
    return Enclosure(lo, hi)


# ---------------------------------------------------------------------------
# Quadratic surds
# ---------------------------------------------------------------------------


def _square_part(d: int, bound: int = SQUAREFREE_TRIAL_BOUND) -> tuple[int, int]:
    """Split d > 0 as f*f * core with core free of square factors p*p, p <= bound.

    A residual core that is itself a perfect square is also detected (isqrt is
    cheap at any size), so the returned core is never a perfect square > 1.
    """
    f, core = 1, 1
    p = 2
    while p * p <= d and p <= bound:
        if d % p == 0:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                core *= p
        p += 1 if p == 2 else 2
    core *= d  # unfactored remainder (prime, or composite with factors > bound)
    r = isqrt(core)
    if r * r == core:
        return f * r, 1
    return f, core


@dataclass(frozen=True)
class Surd:
    """Exact real number alpha + beta * sqrt(delta).

    Canonical form: delta is a nonnegative integer that is not a perfect
    square (squarefree whenever trial division up to SQUAREFREE_TRIAL_BOUND
    factors it fully), and beta == 0 implies delta == 0. Build instances with
    `Surd.make`, which canonicalizes arbitrary rational radicands.

    Comparisons against rationals and other surds are exact. Equality across
    different stored radicands is decided by squaring (value semantics), so
    partially reduced radicands still compare correctly.
    """

    alpha: Fraction
    beta: Fraction
    delta: int

    @staticmethod
    def make(alpha: RationalInput, beta: RationalInput = 0, delta: RationalInput = 0) -> "Surd":
        alpha, beta, delta = as_fraction(alpha), as_fraction(beta), as_fraction(delta)
        if delta < 0:
            raise DomainError(f"negative radicand {delta}")
        if beta == 0 or delta == 0:
            return Surd(alpha, Fraction(0), 0)
        # sqrt(num/den) = sqrt(num*den) / den
        d = delta.numerator * delta.denominator
        beta = beta / delta.denominator
        f, core = _square_part(d)
        beta *= f
        if core == 1:
            return Surd(alpha + beta, Fraction(0), 0)
        return Surd(alpha, beta, core)

    # -- predicates ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.beta == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return self.alpha

    # -- exact sign and comparisons -----------------------------------------

    def sign(self) -> int:
        a, b, d = self.alpha, self.beta, self.delta
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        lhs, rhs = a * a, b * b * d
        if lhs == rhs:  # only possible if sqrt(delta) were rational
            return 0
        if a > 0:  # b < 0
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def _compare(self, other: "Surd | RationalInput") -> int:
        if not isinstance(other, Surd):
            other = Surd(as_fraction(other), Fraction(0), 0)
        if self.beta == 0 or other.beta == 0 or self.delta == other.delta:
            beta = self.beta - other.beta
            delta = (self.delta or other.delta) if beta else 0
            return Surd(self.alpha - other.alpha, beta, delta).sign()
        if self._value_equals(other):
            return 0
        # Distinct irrational parts: refine enclosures until they separate.
        width = DEFAULT_ENCLOSURE_WIDTH
        while True:
            a, b = self.enclosure(width), other.enclosure(width)
            if a.lo > b.hi:
                return 1
            if a.hi < b.lo:
                return -1
            width /= 2**16

    def _value_equals(self, other: "Surd") -> bool:
        if self.alpha != other.alpha:
            return False
        if (self.beta > 0) != (other.beta > 0) or (self.beta < 0) != (other.beta < 0):
            return False
        return self.beta * self.beta * self.delta == other.beta * other.beta * other.delta

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Surd):
            return self._value_equals(other)
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.alpha == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.alpha)
        sign = 1 if self.beta > 0 else -1
        return hash((self.alpha, sign, self.beta * self.beta * self.delta))

    def __lt__(self, other: "Surd | RationalInput") -> bool:
        return self._compare(other) < 0

    def __le__(self, other: "Surd | RationalInput") -> bool:
        return self._compare(other) <= 0

    def __gt__(self, other: "Surd | RationalInput") -> bool:
        return self._compare(other) > 0

    def __ge__(self, other: "Surd | RationalInput") -> bool:
        return self._compare(other) >= 0

    # -- field arithmetic (within Q(sqrt(delta))) ----------------------------

    def _coerce(self, other: "Surd | RationalInput") -> "Surd":
        if isinstance(other, Surd):
            if other.beta != 0 and self.beta != 0 and other.delta != self.delta:
                raise DomainError(
                    f"cannot combine radicands sqrt({self.delta}) and sqrt({other.delta})")
            return other
        return Surd(as_fraction(other), Fraction(0), 0)

    def __add__(self, other: "Surd | RationalInput") -> "Surd":
        o = self._coerce(other)
        beta = self.beta + o.beta
        delta = (self.delta or o.delta) if beta else 0
        return Surd(self.alpha + o.alpha, beta, delta)

    def __radd__(self, other: RationalInput) -> "Surd":
        return self.__add__(other)

    def __neg__(self) -> "Surd":
        return Surd(-self.alpha, -self.beta, self.delta)

    def __sub__(self, other: "Surd | RationalInput") -> "Surd":
        return self.__add__(-self._coerce(other))

    def __rsub__(self, other: RationalInput) -> "Surd":
        return (-self).__add__(other)

    def __mul__(self, other: "Surd | RationalInput") -> "Surd":
        o = self._coerce(other)
        delta = self.delta or o.delta
        alpha = self.alpha * o.alpha + self.beta * o.beta * delta
        beta = self.alpha * o.beta + self.beta * o.alpha
        return Surd(alpha, beta, delta if beta else 0)

    def __rmul__(self, other: RationalInput) -> "Surd":
        return self.__mul__(other)

    def __truediv__(self, other: "Surd | RationalInput") -> "Surd":
        o = self._coerce(other)
        if o.sign() == 0:
            raise ZeroDivisionError("division by zero surd")
        norm = o.alpha * o.alpha - o.beta * o.beta * o.delta
        conj = Surd(o.alpha, -o.beta, o.delta)
        num = self.__mul__(conj)
        return Surd(num.alpha / norm, num.beta / norm, num.delta if num.beta else 0)

    def __rtruediv__(self, other: RationalInput) -> "Surd":
        return Surd(as_fraction(other), Fraction(0), 0).__truediv__(self)

    # -- output --------------------------------------------------------------

    def enclosure(self, width: RationalInput = DEFAULT_ENCLOSURE_WIDTH) -> Enclosure:
        if self.beta == 0:
            return Enclosure(self.alpha, self.alpha)
        inner = sqrt_enclosure(self.delta, as_fraction(width) / (2 * abs(self.beta)))
        return inner.scale(self.beta) + self.alpha

    def __float__(self) -> float:
        return float(self.enclosure(Fraction(1, 10**20)).midpoint)

    def __str__(self) -> str:
        if self.beta == 0:
            return str(self.alpha)
        return f"{self.alpha}+{self.beta}√{self.delta}"

    def __repr__(self) -> str:
        return f"Surd({self.alpha!r}, {self.beta!r}, {self.delta!r})"


def solve_quadratic_positive(a: RationalInput, b: RationalInput, c: RationalInput) -> Surd:
    """Unique positive root of a*s**2 + b*s + c = 0 (a > 0), as an exact surd.

    Raises DomainError when there is no real root, a double root, no positive
    root, or two positive roots. Substituting the result back into the
    polynomial gives exact zero.
    """
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if a <= 0:
        raise DomainError("leading coefficient must be positive")
    disc = b * b - 4 * a * c
    if disc < 0:
        raise DomainError("quadratic has no real root")
    if disc == 0:
        raise DomainError(f"quadratic has a double root at {-b / (2 * a)}")
    plus = Surd.make(-b / (2 * a), Fraction(1, 1) / (2 * a), disc)
    minus = Surd.make(-b / (2 * a), Fraction(-1, 1) / (2 * a), disc)
    if plus.sign() <= 0:
        raise DomainError("quadratic has no positive root")
    if minus.sign() > 0:
        raise DomainError("quadratic has two positive roots")
    return plus


def quadratic_residual(a: RationalInput, b: RationalInput, c: RationalInput, s: Surd) -> Surd:
    """Exact value of a*s**2 + b*s + c at a surd s."""
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    return s * s * a + s * b + c


# ---------------------------------------------------------------------------
# Certified bisection
# ---------------------------------------------------------------------------


def bisect_root(
    f: Callable[[Fraction], Fraction],
    lo: RationalInput,
    hi: RationalInput,
    precision: RationalInput = DEFAULT_ENCLOSURE_WIDTH,
) -> Enclosure:
    """Certified bisection of an exact sign-changing function.

    `f` must evaluate exactly on rationals. The bracket must satisfy
    f(lo) * f(hi) < 0 strictly; the sign change is re-certified at every step,
    so the returned enclosure (width <= precision) provably contains a root.
    """
    lo, hi, precision = as_fraction(lo), as_fraction(hi), as_fraction(precision)
    if precision <= 0:
        raise DomainError("precision must be positive")
    if lo >= hi:
        raise BracketError(f"invalid bracket [{lo}, {hi}]")
    flo, fhi = f(lo), f(hi)
    if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
        raise BracketError(
            f"no certified sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}")
    while hi - lo > precision:
        mid = (lo + hi) / 2
        fmid = f(mid)
        if fmid == 0:
            return Enclosure(mid, mid)
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return Enclosure(lo, hi)


# ---------------------------------------------------------------------------
# Exact-rank dimension oracles on monomial bases
# ---------------------------------------------------------------------------

Monomial = tuple[int, ...]
#: image of a monomial under a linear operator: output monomial -> integer coeff
MonomialOperator = Callable[[Monomial], dict[Monomial, int]]

#: Feasibility cap on the monomial-basis size of exact rank computations.
MAX_RANK_MONOMIALS = 200_000


def monomials(num_vars: int, degree: int) -> list[Monomial]:
    """All exponent tuples of the given total degree, in a fixed order."""
    if num_vars <= 0:
        raise DomainError("need at least one variable")
    if degree < 0:
        return []
    out: list[Monomial] = []

    def rec(prefix: list[int], remaining: int, pos: int) -> None:
        if pos == num_vars - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            prefix.append(e)
            rec(prefix, remaining - e, pos + 1)
            prefix.pop()

    rec([], degree, 0)
    return out


def laplacian_image(mon: Monomial) -> dict[Monomial, int]:
    """Image of a monomial under the flat Laplacian sum d^2/dx_i^2."""
    img: dict[Monomial, int] = {}
    for i, e in enumerate(mon):
        if e >= 2:
            out = list(mon)
            out[i] -= 2
            img[tuple(out)] = e * (e - 1)
    return img


def linear_vector_field(terms: Sequence[tuple[int, int, int]]) -> MonomialOperator:
    """Derivation sum c * x_a d/dx_b from (c, a, b) triples, as a monomial operator."""

    def apply(mon: Monomial) -> dict[Monomial, int]:
        img: dict[Monomial, int] = {}
        for c, a, b in terms:
            e = mon[b]
            if e:
                out = list(mon)
                out[b] -= 1
                out[a] += 1
                key = tuple(out)
                v = img.get(key, 0) + c * e
                if v:
                    img[key] = v
                else:
                    del img[key]
        return img

    return apply


def kernel_dimension(domain: Iterable[Monomial], operators: Sequence[MonomialOperator]) -> int:
    """Dimension of the joint kernel of the operators on span(domain).

    Exact integer row echelon (fraction-free cross-multiplication with gcd
    normalization); no floating point. Deterministic: domain order and
    first-seen column order fix the elimination completely.
    """
    col_ids: dict[tuple[int, Monomial], int] = {}
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    size = 0
    for mon in domain:
        size += 1
        row: dict[int, int] = {}
        for op_index, op in enumerate(operators):
            for out_mon, coeff in op(mon).items():
                key = (op_index, out_mon)
                col = col_ids.get(key)
                if col is None:
                    col = len(col_ids)
                    col_ids[key] = col
                row[col] = coeff
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
                pivots[lead] = row
                rank += 1
                break
            a, b = row[lead], piv[lead]
            new = {k: v * b for k, v in row.items()}
            for k, v in piv.items():
                nv = new.get(k, 0) - v * a
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = new
    return size - rank


def harmonic_polynomial_dimension(num_vars: int, degree: int,
                                  max_monomials: int = MAX_RANK_MONOMIALS) -> int:
    """Dimension of degree-`degree` harmonic homogeneous polynomials in `num_vars`
    variables, by exact kernel computation (independent of any closed form)."""
    if num_vars < 1 or degree < 0:
        raise DomainError("need num_vars >= 1 and degree >= 0")
    _check_feasible(num_vars, degree, max_monomials)
    return kernel_dimension(monomials(num_vars, degree), [laplacian_image])


def quaternion_fiber_fields(n: int) -> list[MonomialOperator]:
    """The three vector fields on R^(4n+4) generating the right action of unit
    quaternions on H^(n+1) (the tangent fields of the 3-sphere Hopf fibers).

    Coordinates are grouped in quadruples (x, y, z, w) per quaternionic
    coordinate; right multiplication by i, j, k gives the three derivations.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    v1: list[tuple[int, int, int]] = []
    v2: list[tuple[int, int, int]] = []
    v3: list[tuple[int, int, int]] = []
    for a in range(0, 4 * n + 4, 4):
        x, y, z, w = a, a + 1, a + 2, a + 3
        v1 += [(-1, x, y), (1, y, x), (1, z, w), (-1, w, z)]
        v2 += [(-1, x, z), (-1, y, w), (1, z, x), (1, w, y)]
        v3 += [(-1, x, w), (1, y, z), (-1, z, y), (1, w, x)]
    return [linear_vector_field(v1), linear_vector_field(v2), linear_vector_field(v3)]


def _check_feasible(num_vars: int, degree: int, max_monomials: int) -> None:
    required = comb(num_vars + degree - 1, degree)
    if required > max_monomials:
        raise ResourceLimitError(
            f"monomial basis of size {required} exceeds the configured limit "
            f"{max_monomials} (degree {degree} in {num_vars} variables)",
            required=required, limit=max_monomials)


_invariant_dim_cache: dict[tuple[int, int], int] = {}
_invariant_dim_lock = threading.Lock()


def invariant_harmonic_dimension(n: int, q: int,
                                 max_monomials: int = MAX_RANK_MONOMIALS) -> int:
    """Dimension of degree-2q harmonic homogeneous polynomials on R^(4n+4)
    annihilated by the three quaternion fiber fields.

    These are exactly the harmonic polynomials constant along the 3-sphere
    Hopf fibers of S^(4n+3). Computed by exact integer rank on the monomial
    basis; results are memoized (single writer, shared read-only)."""
    if n < 1 or q < 0:
        raise DomainError("need n >= 1 and q >= 0")
    cached = _invariant_dim_cache.get((n, q))
    if cached is not None:
        return cached
    if q == 0:
        dim = 1
    else:
        _check_feasible(4 * n + 4, 2 * q, max_monomials)
        domain = monomials(4 * n + 4, 2 * q)
        ops: list[MonomialOperator] = [laplacian_image]
        ops.extend(quaternion_fiber_fields(n))
        dim = kernel_dimension(domain, ops)
    with _invariant_dim_lock:
        _invariant_dim_cache[(n, q)] = dim
    return dim
