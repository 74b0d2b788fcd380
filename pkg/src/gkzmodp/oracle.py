"""Independent brute-force oracles over small finite fields.

Everything here recomputes from first principles: exhaustive point
counts, full product-space scans, direct polynomial expansion.  None of
it reuses the pruned enumerations or assembled invariants it is checking
against, so agreement is evidence, not circularity.  Budgets are hard:
a too-large instance raises BudgetExceeded instead of subsampling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import BudgetExceeded
from .gfpoly import GfPoly
from .hasse import hasse_affine
from .lattice import ASet, default_weight_cap
from .pweight import enumerate_U_M, wp_min
from .solutions import build_F, factorial_table


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class HypersurfaceSpec:
    """A homogeneous hypersurface f = sum_j lam_j x^(mon_j) over F_p.

    lam fixes the coefficients; None keeps the family symbolic (checks
    that sweep all lam accept a symbolic spec).
    """

    p: int
    n: int
    monomials: tuple
    lam: tuple | None = None

    def __post_init__(self):
        mons = tuple(tuple(int(x) for x in m) for m in self.monomials)
        object.__setattr__(self, "monomials", mons)
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if not mons:
            raise ValueError("need at least one monomial")
        if any(len(m) != self.n for m in mons):
            raise ValueError("monomials must have length n")
        if any(x < 0 for m in mons for x in m):
            raise ValueError("monomial exponents must be nonnegative")
        degs = {sum(m) for m in mons}
        if len(degs) != 1 or degs == {0}:
            raise ValueError("monomials must share one positive total degree")
        if self.lam is not None:
            lam = tuple(int(x) % self.p for x in self.lam)
            if len(lam) != len(mons):
                raise ValueError("lam must match the monomial count")
            object.__setattr__(self, "lam", lam)

    @property
    def degree(self):
        return sum(self.monomials[0])


@dataclass(frozen=True)
class CheckReport:
    """Uniform oracle outcome: what ran, what passed, what broke."""

    instance: str
    checked: int
    passed: int
    failures: tuple = ()
    skipped: str | None = None

    @property
    def ok(self):
        return not self.failures


def count_affine_zeros(h, budget=10 ** 8):
    """Exhaustive count of affine zeros of f over F_p^n.

    Refuses (BudgetExceeded) when p^n exceeds the budget; never samples.
    """
    if h.lam is None:
        raise ValueError("need concrete coefficients to count")
    p = h.p
    if p ** h.n > budget:
        raise BudgetExceeded(f"p^n = {p ** h.n} exceeds budget {budget}")
    count = 0
    for x in itertools.product(range(p), repeat=h.n):
        total = 0
        for c, m in zip(h.lam, h.monomials):
            v = c
            for xi, mi in zip(x, m):
                if mi:
                    v = v * pow(xi, mi, p) % p
            total += v
        if total % p == 0:
            count += 1
    return count


def _augmented(h):
    # cone construction: one extra variable of degree 1 on every monomial
    return ASet(tuple(tuple(m) + (1,) for m in h.monomials))


def cone_hypothesis_witness(h):
    """First u in {0..p-1}^N of weight p-1 whose augmented image lies in
    (p-1) Z_{>0}^(n+1), or None.  Existence is the leading-term hypothesis
    behind the affine count identity."""
    p, n, N = h.p, h.n, len(h.monomials)
    for u in itertools.product(range(p), repeat=N):
        if sum(u) != p - 1:
            continue
        img = [sum(u[j] * h.monomials[j][c] for j in range(N)) for c in range(n)]
        img.append(p - 1)
        if all(x > 0 and x % (p - 1) == 0 for x in img):
            return u
    return None


def affine_count_check(h, weight_cap=None, budget=10 ** 8):
    """Affine zero counts against the Hasse invariant of the cone family.

    For the augmented generators (a_j, 1) with all coordinates affine,
    N_aff(lambda) = -H(lambda) mod p pointwise.  Requires the leading
    valuation hypothesis: some u in {0..p-1}^N with sum u_i = p-1 whose
    augmented image lies in (p-1) Z_{>0}^(n+1); without it the identity
    has no leading term to compare and the check is skipped with a report.
    """
    p, n, N = h.p, h.n, len(h.monomials)
    witness = cone_hypothesis_witness(h)
    name = f"affine-count p={p} monomials={h.monomials}"
    if witness is None:
        return CheckReport(instance=name, checked=0, passed=0,
                           skipped="no exponent of weight p-1 maps into "
                                   "(p-1) times the positive orthant")
    if p ** N * p ** n > budget:
        raise BudgetExceeded(f"p^(N+n) = {p ** (N + n)} exceeds budget {budget}")
    aug = _augmented(h)
    res = hasse_affine(aug, (0,) * (n + 1), p, 1, 0, weight_cap)
    assert res.valuation_numerator == p - 1, "hypothesis forces w_p(M) = p-1"
    count_poly = res.H.scale(-1)
    failures = []
    checked = 0
    for lam in itertools.product(range(p), repeat=N):
        naff = count_affine_zeros(
            HypersurfaceSpec(p, n, h.monomials, lam), budget)
        predicted = count_poly.evaluate(lam)
        checked += 1
        if predicted != naff % p:
            failures.append((lam, naff, predicted))
    return CheckReport(instance=name, checked=checked,
                       passed=checked - len(failures), failures=tuple(failures))


def _cone_power_expansion(h):
    # (x_{n+1} f)^(p-1) as {x-exponent: GfPoly in lam}, by repeated multiplication
    p, n, N = h.p, h.n, len(h.monomials)
    base = {}
    for j, m in enumerate(h.monomials):
        e = tuple(m) + (1,)
        unit = tuple(1 if i == j else 0 for i in range(N))
        base[e] = GfPoly.monomial(p, unit)
    acc = {(0,) * (n + 1): GfPoly.constant(p, N, 1)}
    for _ in range(p - 1):
        new = {}
        for e1, c1 in acc.items():
            for e2, c2 in base.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if e in new:
                    new[e] = new[e] + prod
                else:
                    new[e] = prod
        acc = {e: c for e, c in new.items() if not c.is_zero()}
    return acc


def katz_coefficient_check(h, gamma0=None, weight_cap=None):
    """Multinomial expansion against the solution polynomial F_gamma0.

    For any gamma0 with cone coordinate p-1, the coefficient of x^gamma0
    in (x_{n+1} f)^(p-1), expanded symbolically, equals (p-1)! F_gamma0
    of the augmented generators.  gamma0=None checks every top-layer
    target of the cone family's Hasse computation.
    """
    p, n = h.p, h.n
    aug = _augmented(h)
    cap = weight_cap if weight_cap is not None else default_weight_cap(aug, p, 1)
    if gamma0 is None:
        res = hasse_affine(aug, (0,) * (n + 1), p, 1, 0, cap)
        top = n + 1
        idx = res.contributing_layers.index(top)
        targets = [seq.gammas[0] for seq in res.gamma_sequences_used[idx]]
    else:
        targets = [tuple(int(x) for x in gamma0)]
    for g in targets:
        if g[-1] != p - 1:
            raise ValueError(f"gamma0 {g} does not have cone coordinate p-1")
    expansion = _cone_power_expansion(h)
    fact = factorial_table(p)
    failures = []
    for g in targets:
        coeff = expansion.get(g, GfPoly.zero(p, len(h.monomials)))
        expected = build_F(aug, g, p, cap).scale(fact[p - 1])
        if coeff != expected:
            failures.append((g, coeff.to_text(), expected.to_text()))
    name = f"katz p={p} monomials={h.monomials}"
    return CheckReport(instance=name, checked=len(targets),
                       passed=len(targets) - len(failures),
                       failures=tuple(failures))


def legendre_check(p, budget=10 ** 8):
    """The elliptic family y^2 = x(x-1)(x-lam) against exhaustive counts.

    The classical Hasse polynomial (-1)^((p-1)/2) sum_i C((p-1)/2, i)^2 lam^i
    must vanish exactly at supersingular lam (trace divisible by p) and
    agree with a_p = p - N_aff mod p everywhere, for lam outside {0, 1}.
    """
    if p < 3 or not is_prime(p):
        raise ValueError("need an odd prime")
    if p * p > budget:
        raise BudgetExceeded("budget too small for a p^2 scan")
    half = (p - 1) // 2
    sign = (-1) ** half
    H = GfPoly(p, 1, {(i,): sign * comb(half, i) ** 2 for i in range(half + 1)})
    sq = [0] * p
    for y in range(p):
        sq[y * y % p] += 1
    failures = []
    checked = 0
    for lam in range(2, p):
        naff = sum(sq[x * (x - 1) % p * (x - lam) % p] for x in range(p))
        ap = p - naff
        hval = H.evaluate((lam,))
        checked += 1
        if (hval == 0) != (ap % p == 0):
            failures.append((lam, "zero-locus", ap, hval))
        elif hval != ap % p:
            failures.append((lam, "trace", ap, hval))
    return CheckReport(instance=f"legendre p={p}", checked=checked,
                       passed=checked - len(failures), failures=tuple(failures))


def naive_crosscheck(aset, spec, budget=10 ** 6):
    """Full product-space rebuild of U_M, w_p(M), U_{M,min}.

    Scans all q^N exponent vectors with its own residue test, layer count
    and digit-sum loop, then compares against the pruned enumeration.
    Mismatches are reported as failures (never partially dropped).
    """
    q = spec.q
    p = spec.p
    if q ** aset.N > budget:
        raise BudgetExceeded(f"q^N = {q ** aset.N} exceeds budget {budget}")
    mod = q - 1
    naive = []
    for u in itertools.product(range(q), repeat=aset.N):
        img = [sum(u[i] * aset.vectors[i][c] for i in range(aset.N))
               for c in range(aset.n)]
        if any((x - e) % mod for x, e in zip(img, spec.e)):
            continue
        if spec.kind == "affine-layer":
            nonzero = sum(1 for j in range(spec.m, aset.n) if img[j])
            if nonzero != spec.layer:
                continue
        naive.append(u)

    def wsum(u):
        s = 0
        for x in u:
            while x:
                s += x % p
                x //= p
        return s

    fast = enumerate_U_M(aset, spec)
    failures = []
    if sorted(naive) != sorted(fast):
        failures.append(("U_M", len(naive), len(fast)))
    if naive:
        w_naive = min(wsum(u) for u in naive)
        mins_naive = sorted(u for u in naive if wsum(u) == w_naive)
        w_fast, mins_fast = wp_min(fast, p)
        if w_naive != w_fast:
            failures.append(("w_p", w_naive, w_fast))
        if mins_naive != sorted(mins_fast):
            failures.append(("U_M_min", len(mins_naive), len(mins_fast)))
    name = f"crosscheck A={aset.vectors} {spec.kind} e={spec.e} q={q}"
    return CheckReport(instance=name, checked=1, passed=0 if failures else 1,
                       failures=tuple(failures))
