"""Mod p solution polynomials of A-hypergeometric systems.

For a good target gamma the polynomial F_gamma = sum lambda^u / prod u_i!
over the minimal representations of gamma satisfies the Euler operators
and the normalized box operators mod p; for a very good gamma the full
truncated sum G_gamma over U^+_{p-1}(gamma) satisfies the classical box
operators as well.  This module builds those polynomials and checks the
annihilation statements term by term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import Undecided
from .gfpoly import GfPoly
from .lattice import (classify_goodness, enumerate_box, relation_kernel_basis,
                      sigma_tau)


def factorial_table(p):
    """0!, 1!, .., (p-1)! reduced mod p."""
    t = [1] * p
    for k in range(2, p):
        t[k] = t[k - 1] * k % p
    return tuple(t)


def _inv_factorial_product(u, fact, p):
    prod = 1
    for x in u:
        prod = prod * fact[x] % p
    return pow(prod, -1, p)


@dataclass(frozen=True)
class BoxOperator:
    """A box operator attached to a relation vector l (sum l_i a_i = 0).

    kind "normalized" keeps only the dominant derivative block when the
    entries of l do not sum to zero; kind "classical" always takes the
    difference of the two blocks.
    """

    l: tuple
    kind: str = "normalized"

    def __post_init__(self):
        if self.kind not in ("normalized", "classical"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        object.__setattr__(self, "l", tuple(int(x) for x in self.l))

    @property
    def l_plus(self):
        return tuple(max(x, 0) for x in self.l)

    @property
    def l_minus(self):
        return tuple(max(-x, 0) for x in self.l)

    @property
    def branch(self):
        s = sum(self.l)
        if s > 0:
            return "positive-sum"
        if s < 0:
            return "negative-sum"
        return "balanced"


def f_from_minimals(minimals, p, nvars):
    """Sum of lambda^u / prod(u_i!) mod p over the given representations."""
    fact = factorial_table(p)
    return GfPoly(p, nvars,
                  {u: _inv_factorial_product(u, fact, p) for u in minimals})


def build_F(aset, gamma, p, cap):
    """The minimal-weight solution polynomial F_gamma for a good target.

    Raises ValueError when gamma is not good (or outside NA), Undecided
    when membership could not be settled at the cap.
    """
    rep = classify_goodness(aset, gamma, p, cap)
    if not rep.good:
        raise ValueError(f"{gamma} is not good for p={p}")
    return f_from_minimals(rep.report.minimals, p, aset.N)


def build_G(aset, gamma, p, cap):
    """The box-truncated sum G_gamma over U^+_{p-1}(gamma), very good targets only."""
    rep = classify_goodness(aset, gamma, p, cap)
    if rep.very_good is None:
        raise Undecided(f"very-good status of {gamma} undecided at cap {cap}")
    if not rep.very_good:
        raise ValueError(f"{gamma} is not very good for p={p}")
    fact = factorial_table(p)
    box = enumerate_box(aset, gamma, p - 1)
    return GfPoly(p, aset.N,
                  {u: _inv_factorial_product(u, fact, p) for u in box})


def euler_residual(aset, beta, f):
    """Residuals of the n Euler operators sum_j a_j[i] l_j d_j - beta_i on f.

    Returns a tuple of n polynomials; entry i maps each term c lambda^u of
    f to (sum_j a_j[i] u_j - beta_i) c lambda^u.  All zero iff f is
    annihilated.
    """
    if f.nvars != aset.N:
        raise ValueError("polynomial variable count != number of generators")
    beta = tuple(int(x) for x in beta)
    if len(beta) != aset.n:
        raise ValueError("beta has wrong length")
    out = []
    for i in range(aset.n):
        acc = {}
        for u, c in f.terms.items():
            s = sum(aset.vectors[j][i] * u[j] for j in range(aset.N)) - beta[i]
            acc[u] = s * c
        out.append(GfPoly(f.p, f.nvars, acc))
    return tuple(out)


def _apply_derivatives(f, exps):
    g = f
    for i, k in enumerate(exps):
        if k:
            g = g.derivative_power(i, k)
    return g


def box_residual(op, f):
    """Apply a box operator to f and return the residual polynomial."""
    plus = op.l_plus
    minus = op.l_minus
    if op.kind == "classical" or op.branch == "balanced":
        return _apply_derivatives(f, plus) - _apply_derivatives(f, minus)
    if op.branch == "positive-sum":
        return _apply_derivatives(f, plus)
    return _apply_derivatives(f, minus)


def relation_test_set(aset, gamma, p, norm_cap=None, kind="normalized"):
    """A finite, deterministic family of box operators to test against.

    Combines small integer combinations of the kernel basis (coefficient
    1-norm <= 3) with all differences u - v of box elements u, v in
    U^+_{p-1}(gamma); the latter are exactly the relations that can move
    mass between monomials of a truncated solution.

    Parameters:
        norm_cap: keep only vectors of 1-norm <= norm_cap; defaults to
            3 * max basis 1-norm.

    Returns:
        BoxOperators sorted by (1-norm, lex).
    """
    basis = relation_kernel_basis(aset).basis
    if norm_cap is None:
        norm_cap = 3 * max((sum(abs(x) for x in b) for b in basis), default=0)
    seen = set()
    for coeffs in itertools.product(range(-3, 4), repeat=len(basis)):
        if not any(coeffs) or sum(abs(c) for c in coeffs) > 3:
            continue
        l = tuple(sum(c * b[i] for c, b in zip(coeffs, basis))
                  for i in range(aset.N))
        if any(l) and sum(abs(x) for x in l) <= norm_cap:
            seen.add(l)
    box = enumerate_box(aset, gamma, p - 1)
    for u, v in itertools.permutations(box, 2):
        l = tuple(a - b for a, b in zip(u, v))
        if sum(abs(x) for x in l) <= norm_cap:
            seen.add(l)
    ordered = sorted(seen, key=lambda l: (sum(abs(x) for x in l), l))
    return tuple(BoxOperator(l, kind=kind) for l in ordered)


def solution_basis(aset, beta, p, cap):
    """All solution polynomials F_gamma for the residue class of beta.

    Runs the sigma catalog, builds F_gamma for each good gamma, and
    verifies annihilation by the Euler operators and by the normalized box
    operators of relation_test_set, plus pairwise disjointness of monomial
    supports.  Verification failures are internal errors and raise
    AssertionError.

    Returns:
        Tuple of (gamma, F_gamma) pairs, ascending lex in gamma.
    """
    catalog = sigma_tau(aset, beta, p, cap)
    out = []
    supports = set()
    for gamma, wr in catalog.sigma:
        f = f_from_minimals(wr.minimals, p, aset.N)
        for r in euler_residual(aset, gamma, f):
            assert r.is_zero(), f"Euler residual nonzero for gamma={gamma}"
        for op in relation_test_set(aset, gamma, p):
            assert box_residual(op, f).is_zero(), \
                f"box residual nonzero for gamma={gamma}, l={op.l}"
        assert not supports & set(f.terms), "solution supports overlap"
        supports |= set(f.terms)
        out.append((gamma, f))
    return tuple(out)
