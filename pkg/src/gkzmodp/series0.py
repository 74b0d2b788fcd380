"""Exact pi-adic bookkeeping for truncated logarithm-free series solutions.

Exponents here live in the ramified extension generated by pi with
pi^(p-1) = -p, so every quantity is an exact rational times a power of pi
with the pi exponent normalized into {0, .., p-2}.  For a good target
gamma with a minimal representation u0, the starting point
v0 = u0 / (1 - p) has entries in [-1, 0], and the truncated series over
U^+_{p-1}(gamma) shifted by pi^{-w(gamma)} is p-integral with mod-pi
reduction equal to (prod u0_i!) F_gamma.  Floats never enter; any
approximate arithmetic here would silently destroy the valuations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .gfpoly import GfPoly
from .lattice import (default_weight_cap, enumerate_box, relation_kernel_basis,
                      weight_and_minimals)
from .errors import Undecided
from .solutions import f_from_minimals


def _ord_p(x, p):
    """p-adic valuation of a nonzero Fraction."""
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PiRational:
    """value * pi^pi_exp with value rational and 0 <= pi_exp <= p-2.

    Normalization folds pi^(p-1) = -p into value, so two PiRationals are
    comparable iff their pi exponents agree; zero is stored as (0, 0).
    """

    p: int
    value: Fraction
    pi_exp: int

    def __post_init__(self):
        val = Fraction(self.value)
        exp = int(self.pi_exp)
        if val == 0:
            exp = 0
        else:
            shift = exp // (self.p - 1)
            exp -= shift * (self.p - 1)
            val *= Fraction(-self.p) ** shift
        object.__setattr__(self, "value", val)
        object.__setattr__(self, "pi_exp", exp)

    @property
    def is_zero(self):
        return self.value == 0

    @property
    def ord_pi(self):
        """pi-adic order (p-1) ord_p(value) + pi_exp, or None for zero."""
        if self.is_zero:
            return None
        return (self.p - 1) * _ord_p(self.value, self.p) + self.pi_exp

    @property
    def p_integral(self):
        return self.is_zero or _ord_p(self.value, self.p) >= 0

    def shift(self, k):
        """Multiply by pi^k (k may be negative); renormalizes."""
        return PiRational(self.p, self.value, self.pi_exp + k)

    def __mul__(self, other):
        if isinstance(other, PiRational):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return PiRational(self.p, self.value * other.value,
                              self.pi_exp + other.pi_exp)
        return PiRational(self.p, self.value * Fraction(other), self.pi_exp)

    __rmul__ = __mul__

    def __add__(self, other):
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if other.p != self.p or other.pi_exp != self.pi_exp:
            raise ValueError("pi exponents differ; sum is not a PiRational")
        return PiRational(self.p, self.value + other.value, self.pi_exp)

    def __neg__(self):
        return PiRational(self.p, -self.value, self.pi_exp)

    def residue(self):
        """Reduction mod pi as an element of {0, .., p-1}; needs p-integrality."""
        if not self.p_integral:
            raise ValueError("not p-integral, no residue")
        if self.is_zero or self.pi_exp > 0 or _ord_p(self.value, self.p) > 0:
            return 0
        return self.value.numerator * pow(self.value.denominator, -1, self.p) % self.p


@dataclass(frozen=True)
class SupportProfile:
    """Negative support data of v0 = u0 / (1 - p).

    minimal_flag is "verified" (empty negative support, hence provably
    minimal), "refuted-by-l" (a lattice shift strictly shrinks it;
    refuter holds the shift), or "unknown-up-to-cap".
    """

    v0: tuple
    nsupp: tuple
    minimal_flag: str
    refuter: tuple | None = None


def _nsupp(v):
    return tuple(i for i, x in enumerate(v)
                 if x.denominator == 1 and x < 0)


def _small_shifts(basis, cap):
    """Nonzero integer combinations of the basis, coefficient and vector 1-norm <= cap."""
    if not basis:
        return ()
    seen = set()
    for coeffs in itertools.product(range(-cap, cap + 1), repeat=len(basis)):
        if not any(coeffs) or sum(abs(c) for c in coeffs) > cap:
            continue
        l = tuple(sum(c * b[i] for c, b in zip(coeffs, basis))
                  for i in range(len(basis[0])))
        if any(l) and sum(abs(x) for x in l) <= cap:
            seen.add(l)
    return sorted(seen, key=lambda l: (sum(abs(x) for x in l), l))


def _default_shift_cap(basis):
    # wide enough to reach every "one step past the box" shift seen in practice
    if not basis:
        return 0
    return 3 * max(sum(abs(x) for x in b) for b in basis)


def support_profile(aset, u0, p, shift_cap=None):
    """Check minimality of the negative support of v0 = u0 / (1 - p).

    A shift l in the relation lattice refutes minimality when the negative
    support of v0 + l is a proper subset of that of v0.  Entries of v0 are
    negative integers exactly where u0_i = p - 1, so u0 with all entries
    < p - 1 is verified outright.

    Parameters:
        shift_cap: 1-norm bound on the lattice shifts tried; defaults to
            three times the largest basis vector norm.
    """
    u0 = tuple(int(x) for x in u0)
    if len(u0) != aset.N:
        raise ValueError("u0 has wrong length")
    if any(not 0 <= x <= p - 1 for x in u0):
        raise ValueError("u0 must lie in {0..p-1}^N")
    v0 = tuple(Fraction(x, 1 - p) for x in u0)
    ns = _nsupp(v0)
    if not ns:
        return SupportProfile(v0=v0, nsupp=ns, minimal_flag="verified")
    basis = relation_kernel_basis(aset).basis
    if shift_cap is None:
        shift_cap = _default_shift_cap(basis)
    for l in _small_shifts(basis, shift_cap):
        shifted = tuple(v + x for v, x in zip(v0, l))
        ns2 = _nsupp(shifted)
        if set(ns2) < set(ns):
            return SupportProfile(v0=v0, nsupp=ns,
                                  minimal_flag="refuted-by-l", refuter=l)
    return SupportProfile(v0=v0, nsupp=ns, minimal_flag="unknown-up-to-cap")


def series_coefficient(v0, l):
    """Exact coefficient ratio [v0]_{l^-} / [v0 + l]_{l^+} of the shift l.

    Raises ZeroDivisionError when l falls outside N_{v0} (a factor of the
    denominator vanishes).
    """
    num = Fraction(1)
    den = Fraction(1)
    for v, x in zip(v0, l):
        if x < 0:
            for j in range(1, -x + 1):
                num *= v - j + 1
        elif x > 0:
            for j in range(1, x + 1):
                den *= v + j
    if den == 0:
        raise ZeroDivisionError("shift leaves the series support N_v0")
    return num / den


@dataclass(frozen=True)
class TruncatedSeries:
    """Terms of the series at v0 restricted to the box U^+_{p-1}(gamma)."""

    gamma: tuple
    u0: tuple
    profile: SupportProfile
    terms: tuple    # pairs (u, PiRational), ascending lex in u


def truncated_G(aset, u0, gamma, p, shift_cap=None):
    """Box truncation of the series solution based at u0.

    Every u in U^+_{p-1}(gamma) contributes the exact coefficient of the
    shift l = u - u0 times pi^(sum u_i).  Requires the negative support of
    v0 to survive the minimality check; a refutation (including a zero
    denominator discovered during evaluation, which exhibits one) raises
    ValueError.

    Parameters:
        shift_cap: 1-norm bound for the minimality search.
    """
    u0 = tuple(int(x) for x in u0)
    gamma = tuple(int(x) for x in gamma)
    image = tuple(sum(u0[i] * aset.vectors[i][c] for i in range(aset.N))
                  for c in range(aset.n))
    if image != gamma:
        raise ValueError(f"u0 maps to {image}, not {gamma}")
    profile = support_profile(aset, u0, p, shift_cap)
    if profile.minimal_flag == "refuted-by-l":
        raise ValueError(
            f"negative support of v0 not minimal (refuted by {profile.refuter})")
    terms = []
    for u in enumerate_box(aset, gamma, p - 1):
        l = tuple(a - b for a, b in zip(u, u0))
        try:
            coeff = series_coefficient(profile.v0, l)
        except ZeroDivisionError:
            # a vanishing denominator strictly shrinks the negative support
            raise ValueError(
                f"negative support of v0 not minimal (refuted by {l})")
        terms.append((u, PiRational(p, coeff, sum(u))))
    return TruncatedSeries(gamma=gamma, u0=u0, profile=profile,
                           terms=tuple(terms))


@dataclass(frozen=True)
class SeriesCongruenceReport:
    """Outcome of the integrality-and-reduction check for one (gamma, u0)."""

    gamma: tuple
    u0: tuple
    weight: int
    ok: bool
    p_integral: bool
    offending: tuple
    reduction: GfPoly
    expected: GfPoly
    profile: SupportProfile


def verify_series_congruence(aset, u0, gamma, p, weight_cap=None, shift_cap=None):
    """Check that pi^{-w(gamma)} G_{v0} is p-integral and reduces to (prod u0_i!) F_gamma.

    gamma must be good and u0 one of its minimal representations.  The
    reduction keeps exactly the terms of pi-order zero after the shift;
    everything is exact, so ok=False is a counterexample, not noise.
    """
    if weight_cap is None:
        weight_cap = default_weight_cap(aset, p)
    wr = weight_and_minimals(aset, gamma, weight_cap)
    if wr.status != "found":
        if wr.decided:
            raise ValueError(f"{gamma} has no nonnegative representation")
        raise Undecided(f"no representation of {gamma} within weight {weight_cap}")
    if any(x > p - 1 for u in wr.minimals for x in u):
        raise ValueError(f"{gamma} is not good for p={p}")
    if tuple(u0) not in wr.minimals:
        raise ValueError(f"{u0} is not a minimal representation of {gamma}")
    w = wr.weight
    series = truncated_G(aset, u0, gamma, p, shift_cap)
    shifted = [(u, t.shift(-w)) for u, t in series.terms]
    offending = tuple(u for u, t in shifted if not t.p_integral)
    reduction = GfPoly(p, aset.N,
                       {u: t.residue() for u, t in shifted if t.p_integral})
    fact_prod = 1
    for x in u0:
        for j in range(2, x + 1):
            fact_prod = fact_prod * j % p
    expected = f_from_minimals(wr.minimals, p, aset.N).scale(fact_prod)
    ok = not offending and reduction == expected
    return SeriesCongruenceReport(
        gamma=tuple(gamma), u0=tuple(u0), weight=w, ok=ok,
        p_integral=not offending, offending=offending,
        reduction=reduction, expected=expected, profile=series.profile)
