"""p-adic digit weights and the exponent sets U_M over F_q, q = p^a.

An exponent vector u in {0..q-1}^N decomposes into a digit rows
u = sum_k p^k u^(k); its weight w_p(u) is the total digit sum and each
digit row maps to a target gamma_k = sum_i u^(k)_i a_i.  The fundamental
inequality w_p(u) >= sum_k w(gamma_k) is an equality exactly when every
digit row is a minimal representation, and the minimal-weight elements of
a congruence family U_M are partitioned by their digit target sequences.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import weight_and_minimals


@dataclass(frozen=True)
class DigitDecomposition:
    """Digit rows of one exponent vector u in {0..p^a-1}^N."""

    u: tuple
    p: int
    a: int
    digits: tuple              # a rows, each in {0..p-1}^N
    gammas: tuple              # gamma_k = sum_i digits[k][i] a_i
    pweight: int
    digit_sum_per_entry: tuple  # sum of digits of each u_i


@dataclass(frozen=True)
class MSpec:
    """A congruence family of exponents over F_q.

    kind "toric": M = e + (q-1)Z^n intersected with the image of
    {0..q-1}^N under u -> sum u_i a_i.
    kind "affine-layer": additionally the image vector must have exactly
    `layer` nonzero integer entries among coordinates m..n-1 (0-based),
    and e must vanish there.
    """

    kind: str
    e: tuple
    p: int
    a: int
    m: int | None = None
    layer: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(int(x) for x in self.e))
        if self.kind not in ("toric", "affine-layer"):
            raise ValueError(f"unknown MSpec kind {self.kind!r}")
        if self.p < 2 or self.a < 1:
            raise ValueError("need p >= 2 and a >= 1")
        n = len(self.e)
        if self.kind == "toric":
            if self.m is not None or self.layer is not None:
                raise ValueError("toric MSpec takes no m or layer")
        else:
            if self.m is None or self.layer is None:
                raise ValueError("affine-layer MSpec needs m and layer")
            if not 0 <= self.m < n:
                raise ValueError("need 0 <= m < n for an affine layer")
            if not 0 <= self.layer <= n - self.m:
                raise ValueError("layer out of range")
            if any(self.e[j] != 0 for j in range(self.m, n)):
                raise ValueError("e must vanish on the affine coordinates")

    @property
    def q(self):
        return self.p ** self.a


def digit_weight(x, p):
    """Sum of base-p digits of a nonnegative integer."""
    if x < 0:
        raise ValueError("digit weight needs a nonnegative integer")
    s = 0
    while x:
        s += x % p
        x //= p
    return s


def pweight_of(u, p):
    return sum(digit_weight(x, p) for x in u)


def digits(aset, u, p, a):
    """Digit decomposition of u with its target sequence.

    Parameters:
        aset: generator set, len(u) == aset.N.
        u: exponent vector with entries in {0 .. p^a - 1}.

    Returns:
        DigitDecomposition; digits[k][i] is the p^k digit of u_i.
    """
    u = tuple(int(x) for x in u)
    if len(u) != aset.N:
        raise ValueError("u has wrong length")
    q = p ** a
    if any(not 0 <= x < q for x in u):
        raise ValueError(f"entries of {u} outside 0..{q - 1}")
    rows = tuple(tuple((x // p ** k) % p for x in u) for k in range(a))
    gammas = tuple(
        tuple(sum(row[i] * aset.vectors[i][c] for i in range(aset.N))
              for c in range(aset.n))
        for row in rows)
    return DigitDecomposition(
        u=u, p=p, a=a, digits=rows, gammas=gammas,
        pweight=sum(sum(row) for row in rows),
        digit_sum_per_entry=tuple(digit_weight(x, p) for x in u))


def enumerate_U_M(aset, spec):
    """All u in {0..q-1}^N whose image sum u_i a_i lies in M, ascending lex.

    Depth-first over the generators with residue pruning: a partial
    choice survives only if the remaining generators can still reach the
    required residue class mod q-1, and the last generator is solved from
    a precomputed residue table instead of scanned.  For an affine-layer
    spec the exact integer image is tracked as well and filtered at the
    leaves by its count of nonzero affine entries.
    """
    if len(spec.e) != aset.n:
        raise ValueError("MSpec dimension != ambient dimension")
    q = spec.q
    mod = q - 1
    vecs = aset.vectors
    n, N = aset.n, aset.N
    affine = spec.kind == "affine-layer"

    def red(v):
        return tuple(x % mod for x in v)

    # reachable[j] = residues attainable by generators j..N-1
    reachable = [None] * (N + 1)
    reachable[N] = {(0,) * n}
    for j in range(N - 1, -1, -1):
        steps = {red(tuple(c * x for x in vecs[j])) for c in range(q)}
        reachable[j] = {red(tuple(r + s for r, s in zip(rr, ss)))
                        for rr in reachable[j + 1] for ss in steps}
    # last generator: residue -> choices of u_{N-1}, ascending
    last = {}
    for c in range(q):
        last.setdefault(red(tuple(c * x for x in vecs[N - 1])), []).append(c)

    target = red(spec.e)
    out = []
    u = [0] * N

    def leaf_ok(total):
        if not affine:
            return True
        nonzero = sum(1 for j in range(spec.m, n) if total[j])
        return nonzero == spec.layer

    def rec(j, res, total):
        # res = residue still needed from generators j..N-1
        if j == N - 1:
            for c in last.get(res, ()):
                u[j] = c
                if leaf_ok(tuple(t + c * x for t, x in zip(total, vecs[j]))):
                    out.append(tuple(u))
            u[j] = 0
            return
        if res not in reachable[j]:
            return
        a_j = vecs[j]
        for c in range(q):
            u[j] = c
            nres = red(tuple(r - c * x for r, x in zip(res, a_j)))
            rec(j + 1, nres, tuple(t + c * x for t, x in zip(total, a_j)))
        u[j] = 0

    rec(0, target, (0,) * n)
    return tuple(out)


def wp_min(U_M, p):
    """Minimal weight w_p(M) and its attaining set U_{M,min}.

    Raises ValueError on an empty U_M (the weight of an empty family is
    undefined; callers decide what emptiness means).
    """
    if not U_M:
        raise ValueError("U_M is empty, w_p(M) undefined")
    weights = {u: pweight_of(u, p) for u in U_M}
    w = min(weights.values())
    return w, tuple(sorted(u for u, x in weights.items() if x == w))


@dataclass(frozen=True)
class GammaSequence:
    """One digit target sequence (gamma_0 .. gamma_{a-1}) with its members.

    member_class lists the u in U_{M,min} whose digit rows map to these
    gammas; minimals_per_k carries U^+_min(gamma_k) so downstream code can
    assemble solution polynomials without re-searching.
    """

    gammas: tuple
    member_class: tuple
    minimals_per_k: tuple


def gamma_sequences(aset, U_M_min, p, a, cap):
    """Partition U_{M,min} by digit target sequences and verify it.

    For each class this checks, by direct search, that every digit row is
    a minimal representation of its gamma_k, that each gamma_k is good,
    that the weights add up (sum w(gamma_k) = w_p(u)), and that assembling
    all combinations of minimal rows recovers exactly the class members.
    Violations raise AssertionError since they would falsify the
    enumeration, not the input.

    Returns:
        GammaSequences sorted by their gamma tuples.
    """
    groups = {}
    for u in U_M_min:
        dec = digits(aset, u, p, a)
        groups.setdefault(dec.gammas, []).append(dec)
    out = []
    for gammas in sorted(groups):
        decs = groups[gammas]
        row_cap = max(sum(sum(r) for r in d.digits) for d in decs)
        reports = []
        for k in range(a):
            wr = weight_and_minimals(aset, gammas[k], min(cap, row_cap))
            assert wr.status == "found", f"digit target {gammas[k]} unreachable"
            assert all(x <= p - 1 for mrep in wr.minimals for x in mrep), \
                f"digit target {gammas[k]} not good"
            reports.append(wr)
        for d in decs:
            assert sum(wr.weight for wr in reports) == d.pweight
            for k in range(a):
                assert d.digits[k] in reports[k].minimals, \
                    f"digit row {d.digits[k]} of {d.u} not minimal"
        # converse: assembling minimal rows digit-by-digit recovers the class
        combos = [()]
        for k in range(a):
            combos = [c + (mrep,) for c in combos for mrep in reports[k].minimals]
        rebuilt = sorted(
            tuple(sum(rows[k][i] * p ** k for k in range(a))
                  for i in range(aset.N))
            for rows in combos)
        assert rebuilt == sorted(d.u for d in decs), \
            f"assembly mismatch for gammas={gammas}"
        out.append(GammaSequence(
            gammas=gammas,
            member_class=tuple(sorted(d.u for d in decs)),
            minimals_per_k=tuple(wr.minimals for wr in reports)))
    covered = [u for seq in out for u in seq.member_class]
    assert sorted(covered) == sorted(U_M_min) and len(covered) == len(set(covered))
    return tuple(out)
