"""Hasse invariants of exponential sum families over F_q, q = p^a.

The exponential sum attached to lambda over the torus (or a mixed
torus-affine product) has p-adic valuation at least w_p(M) / (p-1), with
equality exactly where the Hasse invariant H(lambda) is nonzero.  H is
assembled here along two independent routes that must agree: a sum of
Frobenius-twisted products of the digit-target solution polynomials, and
a direct sum of digit-factorial monomials over U_{M,min}.

Toric sign: (-1)^n.  Mixed case: the layer-l contribution to the leading
coefficient carries (-1)^(m+l) from the torus factors and an extra
(-1)^(a(n-m-l)) from writing q^(n-m-l) as (-pi^(p-1))^(a(n-m-l)); only
layers attaining w_p(M_l) + a(n-m-l)(p-1) = w_p(M_{n-m}) survive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gfpoly import GfPoly
from .lattice import default_weight_cap
from .pweight import MSpec, digits, enumerate_U_M, gamma_sequences, wp_min
from .solutions import f_from_minimals, factorial_table


@dataclass(frozen=True)
class HasseResult:
    """Hasse invariant of one family.

    valuation_numerator is w_p(M) (divide by p-1 for the valuation bound),
    None when the family is empty.  contributing_layers is () for toric
    results; gamma_sequences_used holds one tuple of GammaSequence per
    contribution, aligned with contributing_layers in the mixed case.
    layer_weights records (layer, w_p(M_l) or None) for every layer.
    """

    H: GfPoly
    valuation_numerator: int | None
    contributing_layers: tuple
    gamma_sequences_used: tuple
    empty_flag: bool
    layer_weights: tuple = ()


def _assemble(aset, seqs, U_min, p, a):
    """Unsigned leading-coefficient polynomial, computed both ways."""
    product_route = GfPoly.zero(p, aset.N)
    for seq in seqs:
        term = GfPoly.constant(p, aset.N, 1)
        for k in range(a):
            fk = f_from_minimals(seq.minimals_per_k[k], p, aset.N)
            term = term * fk.frobenius_twist(k)
        product_route = product_route + term
    fact = factorial_table(p)
    acc = {}
    for u in U_min:
        denom = 1
        for row in digits(aset, u, p, a).digits:
            for x in row:
                denom = denom * fact[x] % p
        acc[u] = pow(denom, -1, p)
    direct_route = GfPoly(p, aset.N, acc)
    assert product_route == direct_route, \
        "twisted-product and digit-factorial assemblies disagree"
    return direct_route


def hasse_toric(aset, e, p, a, weight_cap=None):
    """Hasse invariant for the family over the full torus.

    Parameters:
        aset: generator set A in Z^n (all coordinates toric).
        e: twist exponents, the sum runs over characters x -> x^e chi(f).
        p, a: q = p^a.
        weight_cap: search cap for digit-target weights; defaults to
            4 a N (p-1).

    Returns:
        HasseResult.  An empty exponent family U_M yields empty_flag=True
        with H = 0 and no valuation claim.
    """
    spec = MSpec(kind="toric", e=e, p=p, a=a)
    U_M = enumerate_U_M(aset, spec)
    if not U_M:
        return HasseResult(H=GfPoly.zero(p, aset.N), valuation_numerator=None,
                           contributing_layers=(), gamma_sequences_used=(),
                           empty_flag=True)
    cap = weight_cap if weight_cap is not None else default_weight_cap(aset, p, a)
    wp, U_min = wp_min(U_M, p)
    seqs = gamma_sequences(aset, U_min, p, a, cap)
    H = _assemble(aset, seqs, U_min, p, a).scale((-1) ** aset.n)
    assert not H.is_zero(), "distinct digit sequences cannot cancel"
    assert all(x <= spec.q - 1 for u in H.terms for x in u)
    return HasseResult(H=H, valuation_numerator=wp, contributing_layers=(),
                       gamma_sequences_used=(seqs,), empty_flag=False)


def hasse_affine(aset, e, p, a, m, weight_cap=None):
    """Hasse invariant for the mixed family: m toric and n-m affine factors.

    The affine coordinates split the sum into layers; layer l collects the
    exponents whose image has exactly l nonzero affine entries and enters
    with weight w_p(M_l) + a(n-m-l)(p-1).  The leading valuation is set by
    the top layer l = n-m, which must be nonempty, and each nonempty layer
    is checked against the weight inequality.  e must vanish on the affine
    coordinates, and every affine coordinate must be used by some
    generator (otherwise the family degenerates and the layer analysis
    does not apply).
    """
    n = aset.n
    if not 0 <= m < n:
        raise ValueError("mixed case needs 0 <= m < n")
    e = tuple(int(x) for x in e)
    if len(e) != n:
        raise ValueError("e has wrong length")
    if any(e[j] for j in range(m, n)):
        raise ValueError("e must vanish on the affine coordinates")
    for j in range(m, n):
        if all(v[j] == 0 for v in aset.vectors):
            raise ValueError(f"no generator uses affine coordinate {j}")
    cap = weight_cap if weight_cap is not None else default_weight_cap(aset, p, a)
    top = n - m
    layer_sets = [
        enumerate_U_M(aset, MSpec(kind="affine-layer", e=e, p=p, a=a, m=m, layer=l))
        for l in range(top + 1)]
    if not layer_sets[top]:
        raise ValueError("top affine layer is empty; leading valuation undefined")
    C, _ = wp_min(layer_sets[top], p)
    layer_weights = []
    selected = []
    seqs_used = []
    H = GfPoly.zero(p, aset.N)
    for l in range(top + 1):
        if not layer_sets[l]:
            layer_weights.append((l, None))
            continue
        wp_l, U_min_l = wp_min(layer_sets[l], p)
        layer_weights.append((l, wp_l))
        shifted = wp_l + a * (top - l) * (p - 1)
        assert shifted >= C, "layer weight inequality violated"
        if shifted != C:
            continue
        seqs = gamma_sequences(aset, U_min_l, p, a, cap)
        sign = (-1) ** (m + l + a * (top - l))
        H = H + _assemble(aset, seqs, U_min_l, p, a).scale(sign)
        selected.append(l)
        seqs_used.append(seqs)
    assert not H.is_zero(), "layers have disjoint supports"
    assert all(x <= p ** a - 1 for u in H.terms for x in u)
    return HasseResult(H=H, valuation_numerator=C,
                       contributing_layers=tuple(selected),
                       gamma_sequences_used=tuple(seqs_used), empty_flag=False,
                       layer_weights=tuple(layer_weights))
