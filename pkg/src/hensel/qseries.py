"""Truncated q-expansions with exact coefficients, and their operators.

Everything algebraic here is exact (integers or fractions): the cusp-form
product expansion, the averaging operator at a prime, the eigenvalue check,
and the multiplicative coefficient recursion.  Only the two analytic
summation checks at the end of the module use floating point, with explicit
truncation tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .primes import is_prime


@dataclass(frozen=True)
class QExpansion:
    """A q-series sum a_n q^n known exactly through n = truncation."""

    weight: int
    coefficients: tuple
    level: int = 1

    def __post_init__(self):
        if len(self.coefficients) < 1:
            raise ValueError("need at least the constant coefficient")
        if self.level < 1:
            raise ValueError("level must be a positive integer")

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def coeff(self, n: int):
        if not 0 <= n <= self.truncation:
            raise IndexError(f"coefficient {n} beyond truncation {self.truncation}")
        return self.coefficients[n]

    @property
    def is_cuspidal(self) -> bool:
        return self.coefficients[0] == 0

    def __add__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        if self.weight != other.weight or self.level != other.level:
            raise ValueError("can only add expansions of equal weight and level")
        t = min(self.truncation, other.truncation)
        coeffs = tuple(
            self.coefficients[n] + other.coefficients[n] for n in range(t + 1)
        )
        return QExpansion(self.weight, coeffs, self.level)

    def scaled(self, factor) -> "QExpansion":
        return QExpansion(
            self.weight, tuple(factor * c for c in self.coefficients), self.level
        )

    def truncated(self, t: int) -> "QExpansion":
        if t > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return QExpansion(self.weight, self.coefficients[: t + 1], self.level)


def _pentagonal_terms(t: int) -> list:
    """Sparse expansion of prod_{n>=1} (1 - q^n) through q^t: the exponents
    are the generalized pentagonal numbers k(3k -+ 1)/2 with sign (-1)^k.
    The naive factor-by-factor expansion of the same product is kept in the
    test suite as an independent oracle for this identity."""
    terms = [(0, 1)]
    k = 1
    while k * (3 * k - 1) // 2 <= t:
        sign = -1 if k % 2 else 1
        terms.append((k * (3 * k - 1) // 2, sign))
        if k * (3 * k + 1) // 2 <= t:
            terms.append((k * (3 * k + 1) // 2, sign))
        k += 1
    return terms


def _sparse_multiply(dense: list, terms, t: int) -> list:
    out = [0] * (t + 1)
    for g, s in terms:
        if s == 1:
            for i in range(t + 1 - g):
                out[i + g] += dense[i]
        else:
            for i in range(t + 1 - g):
                out[i + g] -= dense[i]
    return out


def delta(truncation: int) -> QExpansion:
    """The weight-12 cusp form q prod_{n>=1} (1 - q^n)^24, exactly to q^T."""
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    t = truncation - 1  # room left after the leading factor q
    terms = _pentagonal_terms(t)
    acc = [1] + [0] * t
    for _ in range(24):
        acc = _sparse_multiply(acc, terms, t)
    return QExpansion(12, (0, *acc))


def _exact_power(p: int, e: int):
    """p^e as an int for e >= 0 and a Fraction below (never a float)."""
    return p**e if e >= 0 else Fraction(1, p**-e)


def hecke_apply(f: QExpansion, p: int, chi_p=1) -> QExpansion:
    """Averaging operator at p on q-expansions.

    Coefficient rule: b_n = a_{np} + chi(p) p^{k-1} a_{n/p}, the second term
    only when p | n.  Producing n requires a_{np}, so the output records the
    honest truncation floor(T/p) instead of padding.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    t_out = f.truncation // p
    if t_out < 1:
        raise ValueError(
            f"truncation {f.truncation} too small for the operator at {p}"
        )
    w = chi_p * _exact_power(p, f.weight - 1)
    coeffs = []
    for n in range(t_out + 1):
        b = f.coefficients[n * p]
        if n % p == 0:
            b = b + w * f.coefficients[n // p]
        coeffs.append(b)
    return QExpansion(f.weight, tuple(coeffs), f.level)


def eigencheck(f: QExpansion, p: int, depth: int | None = None):
    """Whether the operator at p sends f to a_p f, through the given depth.

    Requires a_1 = 1 (the eigenvalue of a normalized eigenform at p is the
    coefficient a_p itself).  Returns (is_eigen, a_p).
    """
    if f.coeff(1) != 1:
        raise ValueError("eigencheck requires a normalized series with a_1 = 1")
    hf = hecke_apply(f, p)
    if depth is None:
        depth = hf.truncation
    if depth > hf.truncation:
        raise ValueError(
            f"depth {depth} needs input truncation at least {depth * p}"
        )
    lam = f.coeff(p)
    ok = all(hf.coeff(n) == lam * f.coeff(n) for n in range(depth + 1))
    return ok, lam


def euler_coefficients(ap: dict, weight: int, truncation: int, chi=None) -> list:
    """Coefficients a_1..a_T generated from prime data by the two rules
    behind the degree-2 local factors:

        a_{p^{r+1}} = a_p a_{p^r} - chi(p) p^{k-1} a_{p^{r-1}}
        a_{mn}      = a_m a_n                 for coprime m, n.

    chi is a callable giving the character value at a prime (default 1).
    Returns a list indexed by n (entry 0 is unused and set to 0).
    """
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    if chi is None:
        chi = lambda _p: 1
    a = [0] * (truncation + 1)
    a[1] = 1
    spf = list(range(truncation + 1))  # smallest prime factor
    for q in range(2, truncation + 1):
        if spf[q] == q:
            for mult in range(q * q, truncation + 1, q):
                if spf[mult] == mult:
                    spf[mult] = q
    for n in range(2, truncation + 1):
        p = spf[n]
        e, m = 0, n
        while m % p == 0:
            m //= p
            e += 1
        if p not in ap:
            raise ValueError(f"missing coefficient for prime {p}")
        if m > 1:
            a[n] = a[m] * a[p**e]
        elif e == 1:
            a[n] = ap[p]
        else:
            a[n] = ap[p] * a[p ** (e - 1)] - chi(p) * _exact_power(
                p, weight - 1
            ) * a[p ** (e - 2)]
    return a


# -- double-coset representatives --------------------------------------------

Matrix = tuple[tuple[int, int], tuple[int, int]]


def hecke_coset_reps(p: int) -> list[Matrix]:
    """The p + 1 integral representatives of determinant-p matrices modulo
    the unimodular action on the left: [[1, u], [0, p]] for 0 <= u < p and
    [[p, 0], [0, 1]]."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    reps = [((1, u), (0, p)) for u in range(p)]
    reps.append(((p, 0), (0, 1)))
    return reps


def hecke_coset_reduce(mat: Matrix) -> Matrix:
    """Reduce an integral matrix of prime determinant to its representative.

    Row reduction over the integers (left multiplication by determinant-one
    matrices): clear the lower-left entry with an extended-gcd step, then
    shift the upper-right entry into [0, lower-right).  Idempotent, and two
    matrices reduce to the same representative exactly when they differ by
    a unimodular factor on the left.
    """
    (a, b), (c, d) = mat
    det = a * d - b * c
    if not is_prime(det):
        raise ValueError(f"determinant {det} is not prime")
    if c == 0:
        g, x, y = abs(a), (1 if a > 0 else -1), 0
    else:
        g, x, y = _xgcd(a, c)
    # [[x, y], [-c//g, a//g]] has determinant 1 and sends column 1 to (g, 0)
    b2 = x * b + y * d
    d2 = (-c // g) * b + (a // g) * d
    assert g * d2 == det
    return ((g, b2 % d2), (0, d2))


def _xgcd(a: int, b: int):
    """(g, x, y) with g = gcd(a, b) > 0 and x a + y b = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def left_unimodular_equivalent(m1: Matrix, m2: Matrix) -> bool:
    """Whether m2 = g m1 for some integral g with det g = 1 (exact check:
    m2 adj(m1) must be divisible by det(m1) and the quotient unimodular)."""
    (a, b), (c, d) = m1
    det = a * d - b * c
    (e, f), (g2, h) = m2
    # m2 * adj(m1)
    q = ((e * d - f * c, -e * b + f * a), (g2 * d - h * c, -g2 * b + h * a))
    if any(entry % det for row in q for entry in row):
        return False
    u = tuple(tuple(entry // det for entry in row) for row in q)
    return u[0][0] * u[1][1] - u[0][1] * u[1][0] == 1


# -- analytic summation checks -------------------------------------------------


def theta_functional_equation_residual(t: float, m_max: int = 50) -> float:
    """|sum_{|n|<=M} e^{-pi n^2 t} - t^{-1/2} sum_{|n|<=M} e^{-pi n^2 / t}|.

    Both sides are the purely imaginary-axis specialization of the theta
    transformation law, where they are real; the truncation tail is below
    e^{-pi M^2 min(t, 1/t)}.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    s1 = 1.0 + 2.0 * sum(math.exp(-math.pi * n * n * t) for n in range(1, m_max + 1))
    s2 = 1.0 + 2.0 * sum(math.exp(-math.pi * n * n / t) for n in range(1, m_max + 1))
    return abs(s1 - s2 / math.sqrt(t))


def poisson_residual(s: float, m_max: int = 50) -> float:
    """Residual of the summation formula for the Gaussian e^{-pi x^2 / s}:
    the transform side sqrt(s) sum e^{-pi n^2 s} against sum e^{-pi n^2/s}."""
    if s <= 0:
        raise ValueError("s must be positive")
    lhs = math.sqrt(s) * (
        1.0 + 2.0 * sum(math.exp(-math.pi * n * n * s) for n in range(1, m_max + 1))
    )
    rhs = 1.0 + 2.0 * sum(
        math.exp(-math.pi * n * n / s) for n in range(1, m_max + 1)
    )
    return abs(lhs - rhs)
