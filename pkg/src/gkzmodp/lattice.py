"""Lattice-point machinery for a finite generator set A in Z^n.

Covers semigroup membership in NA, weights w(beta) with their minimal
representations, the truncated solution boxes U^+_k(beta), good / very
good classification of targets, the sigma/tau catalogs of a residue
class, the relation lattice L = ker(A) cap Z^N, and the affine form
witnesses (pointedness, nonconfluence).

All arithmetic is exact: integer vectors, Fraction forms.  Searches are
breadth-first by weight level and every negative answer is labelled
decided or not; for pointed A a linear form bounds the search, for
non-pointed A absence of a representation is only semi-decidable and
callers receive that honestly instead of a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

from .errors import BudgetExceeded, Undecided

# Hard memory guard for reach tables (points stored across all levels).
MAX_REACH_POINTS = 2_000_000


def _solve_exact(rows, rhs):
    """One exact rational solution of rows @ x = rhs, or None if inconsistent."""
    m = [[Fraction(x) for x in r] + [Fraction(v)] for r, v in zip(rows, rhs)]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append((r, c))
        r += 1
        if r == len(m):
            break
    if any(row[ncols] != 0 for row in m[r:]):
        return None
    x = [Fraction(0)] * ncols
    for i, c in pivots:
        x[c] = m[i][ncols]
    return tuple(x)


def _normalize_constraint(coeffs, const):
    # scale a rational constraint to coprime integers, for dedup
    den = lcm(*(f.denominator for f in coeffs), const.denominator)
    ints = [int(f * den) for f in coeffs] + [int(const * den)]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(Fraction(x) for x in ints[:-1]), Fraction(ints[-1])


def _positive_form(vectors):
    """Rational h with h . a >= 1 for every a, via Fourier-Motzkin; None if infeasible."""
    nvars = len(vectors[0])
    cons = [(tuple(Fraction(x) for x in a), Fraction(1)) for a in vectors]
    stages = []
    for j in range(nvars - 1, 0, -1):
        pos = [c for c in cons if c[0][j] > 0]
        neg = [c for c in cons if c[0][j] < 0]
        keep = [c for c in cons if c[0][j] == 0]
        stages.append((j, pos, neg))
        seen = set()
        for cp, dp in pos:
            for cn, dn in neg:
                mp, mn = -cn[j], cp[j]
                coeffs = tuple(mp * a + mn * b for a, b in zip(cp, cn))
                const = mp * dp + mn * dn
                if all(x == 0 for x in coeffs):
                    if const > 0:
                        return None
                    continue
                seen.add(_normalize_constraint(coeffs, const))
        cons = keep + sorted(seen)
    # only h_0 is left
    for coeffs, const in cons:
        if coeffs[0] == 0 and const > 0:
            return None
    lows = [d / c[0] for c, d in cons if c[0] > 0]
    highs = [d / c[0] for c, d in cons if c[0] < 0]
    lo = max(lows, default=None)
    hi = min(highs, default=None)
    if lo is not None and hi is not None and lo > hi:
        return None
    values = [None] * nvars
    values[0] = lo if lo is not None else (hi if hi is not None else Fraction(0))
    for j, pos, neg in reversed(stages):
        lows = []
        highs = []
        for c, d in pos:
            rest = sum(c[k] * values[k] for k in range(j))
            lows.append((d - rest) / c[j])
        for c, d in neg:
            rest = sum(c[k] * values[k] for k in range(j))
            highs.append((d - rest) / c[j])
        lo = max(lows, default=None)
        hi = min(highs, default=None)
        assert lo is None or hi is None or lo <= hi
        values[j] = lo if lo is not None else (hi if hi is not None else Fraction(0))
    return tuple(values)


class _Reach:
    """Breadth-first reach table: point -> least number of generator steps."""

    def __init__(self, aset):
        self.aset = aset
        zero = (0,) * aset.n
        self.level_of = {zero: 0}
        self.frontier = [zero]
        self.level = 0

    @property
    def complete(self):
        # an empty frontier means no level can ever add new points
        return not self.frontier

    def extend_one(self):
        nxt = []
        for pt in self.frontier:
            for a in self.aset.vectors:
                q = tuple(x + y for x, y in zip(pt, a))
                if q not in self.level_of:
                    self.level_of[q] = self.level + 1
                    nxt.append(q)
        if len(self.level_of) > MAX_REACH_POINTS:
            raise BudgetExceeded(
                f"reach table for A={self.aset.vectors} exceeded "
                f"{MAX_REACH_POINTS} points at level {self.level + 1}")
        self.frontier = nxt
        self.level += 1

    def extend_to(self, level):
        while self.level < level and not self.complete:
            self.extend_one()


@dataclass(frozen=True)
class ASet:
    """A finite list of lattice generators a_1, .., a_N in Z^n.

    Order matters (it fixes variable indices l1, .., lN) and repeats are
    allowed.  Derived affine forms are cached per instance, so reuse one
    ASet across queries instead of rebuilding it.
    """

    vectors: tuple

    def __post_init__(self):
        vecs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        if not vecs:
            raise ValueError("A must contain at least one generator")
        if any(len(v) != len(vecs[0]) for v in vecs):
            raise ValueError("generators must share one ambient dimension")
        object.__setattr__(self, "vectors", vecs)

    @property
    def n(self):
        return len(self.vectors[0])

    @property
    def N(self):
        return len(self.vectors)

    @cached_property
    def nonconfluent_form(self):
        """Rational h with h . a_i = 1 for all i, or None."""
        return _solve_exact(self.vectors, [1] * self.N)

    @cached_property
    def pointedness(self):
        """Rational h with h . a_i >= 1 for all i, or None if no such form exists."""
        if self.nonconfluent_form is not None:
            return self.nonconfluent_form
        return _positive_form(self.vectors)

    @cached_property
    def _reach(self):
        return _Reach(self)


@dataclass(frozen=True)
class WeightReport:
    """Outcome of a weight search for one target.

    status is "found" or "not-found-up-to-cap"; decided reports whether a
    negative answer is a proof (pointed bound exhausted or reach saturated)
    rather than a cap timeout.
    """

    target: tuple
    weight: int | None
    minimals: tuple
    cap_used: int
    status: str
    decided: bool


@dataclass(frozen=True)
class GoodnessReport:
    good: bool
    very_good: bool | None
    report: WeightReport


@dataclass(frozen=True)
class GoodnessCatalog:
    """Good and very good targets inside one residue class beta + pZ^n."""

    residue_class: tuple
    sigma: tuple        # pairs (gamma, WeightReport), ascending lex in gamma
    tau: tuple          # gammas proven very good
    undecided: tuple    # gammas whose very-good test hit the cap


@dataclass(frozen=True)
class RelationLattice:
    basis: tuple


def _check_target(aset, beta):
    beta = tuple(int(x) for x in beta)
    if len(beta) != aset.n:
        raise ValueError(f"target {beta} has length != {aset.n}")
    return beta


def _decision_cap(aset, beta):
    # pointed A: any representation of beta uses at most h.beta / min h.a_i steps
    h = aset.pointedness
    if h is None:
        return None
    hb = sum(f * x for f, x in zip(h, beta))
    if hb < 0:
        return -1
    step = min(sum(f * x for f, x in zip(h, a)) for a in aset.vectors)
    return int(hb / step)


def _membership(aset, target, cap):
    """(level, decided): level is None if no representation was found."""
    dc = _decision_cap(aset, target)
    eff = cap if dc is None else min(cap, dc)
    reach = aset._reach
    lvl = reach.level_of.get(target)
    if lvl is not None:
        # reachable, possibly beyond this query's cap
        return (lvl, True) if lvl <= eff else (None, False)
    while reach.level < eff and not reach.complete:
        reach.extend_one()
        lvl = reach.level_of.get(target)
        if lvl is not None:
            return lvl, True
    decided = reach.complete or (dc is not None and reach.level >= dc)
    return None, decided


def _witness_from_reach(aset, target, level):
    # walk the BFS table back to zero, preferring low generator indices
    reach = aset._reach
    u = [0] * aset.N
    t, s = target, level
    while s > 0:
        for i, a in enumerate(aset.vectors):
            prev = tuple(x - y for x, y in zip(t, a))
            if reach.level_of.get(prev) == s - 1:
                u[i] += 1
                t, s = prev, s - 1
                break
        else:
            raise AssertionError("reach table lost a predecessor")
    return tuple(u)


def semigroup_member(aset, beta, cap):
    """Search for u in N^N with sum u_i a_i = beta.

    Parameters:
        aset: the generator set.
        beta: integer target vector.
        cap: bound on the number of generator steps searched.

    Returns:
        A witness tuple u, or None.  For pointed A (or a saturated reach
        table) None is a proof of non-membership once the decision bound
        h.beta / min_i h.a_i lies under the cap; otherwise None only
        means "not found up to cap".
    """
    beta = _check_target(aset, beta)
    lvl, _ = _membership(aset, beta, cap)
    if lvl is None:
        return None
    return _witness_from_reach(aset, beta, lvl)


def weight_and_minimals(aset, beta, cap):
    """Weight w(beta) together with every minimal representation.

    Parameters:
        aset, beta: as in semigroup_member.
        cap: search cap on the weight.

    Returns:
        A WeightReport.  When status is "found", minimals lists all
        u in U^+(beta) with sum u_i = w(beta), ascending lex.
    """
    beta = _check_target(aset, beta)
    lvl, decided = _membership(aset, beta, cap)
    if lvl is None:
        return WeightReport(target=beta, weight=None, minimals=(),
                            cap_used=cap, status="not-found-up-to-cap",
                            decided=decided)
    minimals = _reps_exact(aset, beta, lvl)
    return WeightReport(target=beta, weight=lvl, minimals=minimals,
                        cap_used=cap, status="found", decided=True)


def _reps_exact(aset, target, weight):
    """All representations of target using exactly `weight` steps, ascending lex."""
    reach = aset._reach
    reach.extend_to(weight)
    vecs = aset.vectors
    zero = (0,) * aset.n
    memo = {}

    def rec(t, r, j):
        # tuples (c_0 .. c_j) with sum c = r and sum c_i a_i = t
        if j < 0:
            return ((),) if (r == 0 and t == zero) else ()
        key = (t, r, j)
        hit = memo.get(key)
        if hit is not None:
            return hit
        lvl = reach.level_of.get(t)
        if lvl is None or lvl > r:
            memo[key] = ()
            return ()
        out = []
        a = vecs[j]
        for c in range(r + 1):
            t2 = tuple(x - c * y for x, y in zip(t, a))
            for rep in rec(t2, r - c, j - 1):
                out.append(rep + (c,))
        memo[key] = tuple(out)
        return memo[key]

    return tuple(sorted(rec(target, weight, aset.N - 1)))


def enumerate_box(aset, gamma, k):
    """All u in {0..k}^N with sum u_i a_i = gamma, ascending lex.

    Depth-first with componentwise interval pruning on what the remaining
    generators can still contribute.
    """
    gamma = _check_target(aset, gamma)
    if k < 0:
        raise ValueError("box bound must be nonnegative")
    vecs = aset.vectors
    n, N = aset.n, aset.N
    lo = [[0] * n for _ in range(N + 1)]
    hi = [[0] * n for _ in range(N + 1)]
    for j in range(N - 1, -1, -1):
        for c in range(n):
            contrib = k * vecs[j][c]
            lo[j][c] = lo[j + 1][c] + min(0, contrib)
            hi[j][c] = hi[j + 1][c] + max(0, contrib)
    out = []
    u = [0] * N

    def rec(j, t):
        if any(not lo[j][c] <= t[c] <= hi[j][c] for c in range(n)):
            return
        if j == N:
            out.append(tuple(u))
            return
        a = vecs[j]
        for c in range(k + 1):
            u[j] = c
            rec(j + 1, tuple(x - c * y for x, y in zip(t, a)))
        u[j] = 0

    rec(0, gamma)
    return tuple(out)


def _very_good(aset, gamma, p, cap):
    # operational test: gamma is very good iff gamma - p a_i misses NA for all i
    unknown = False
    for a in aset.vectors:
        t = tuple(x - p * y for x, y in zip(gamma, a))
        lvl, decided = _membership(aset, t, cap)
        if lvl is not None:
            return False
        if not decided:
            unknown = True
    return None if unknown else True


def classify_goodness(aset, gamma, p, cap):
    """Good / very good classification of a semigroup element.

    Parameters:
        aset, gamma: generator set and target, gamma must lie in NA.
        p: the prime.
        cap: search cap for the weight and the very-good membership tests.

    Returns:
        GoodnessReport.  good means every minimal representation has all
        entries <= p-1; very_good is None when a membership test for some
        gamma - p a_i was undecided at the cap (non-pointed A only).

    Raises:
        ValueError if gamma is provably outside NA, Undecided if its
        membership could not be settled at the cap.
    """
    gamma = _check_target(aset, gamma)
    report = weight_and_minimals(aset, gamma, cap)
    if report.status != "found":
        if report.decided:
            raise ValueError(f"{gamma} is not in the semigroup NA")
        raise Undecided(f"membership of {gamma} undecided at cap {cap}")
    good = all(x <= p - 1 for m in report.minimals for x in m)
    very_good = _very_good(aset, gamma, p, cap) if good else False
    return GoodnessReport(good=good, very_good=very_good, report=report)


def sigma_tau(aset, beta, p, cap):
    """Catalog the good and very good targets in the class beta + pZ^n.

    Candidates are exactly the sums sum_i c_i a_i with c in {0..p-1}^N,
    folded one generator at a time; each candidate keeps its first witness,
    which bounds the weight search.  Only candidates congruent to beta
    mod p are classified.

    Returns:
        GoodnessCatalog with sigma (good), tau (very good) and undecided
        (very-good test hit the cap), each ascending lex.
    """
    beta = _check_target(aset, beta)
    zero = (0,) * aset.n
    cands = {zero: ()}
    for a in aset.vectors:
        new = {}
        for pt in sorted(cands):
            wit = cands[pt]
            for c in range(p):
                q = tuple(x + c * y for x, y in zip(pt, a))
                if q not in new:
                    new[q] = wit + (c,)
        cands = new
    hits = sorted(pt for pt in cands
                  if all((x - b) % p == 0 for x, b in zip(pt, beta)))
    sigma, tau, undecided = [], [], []
    for g in hits:
        wit = cands[g]
        wr = weight_and_minimals(aset, g, cap=sum(wit))
        assert wr.status == "found"
        if not all(x <= p - 1 for m in wr.minimals for x in m):
            continue
        sigma.append((g, wr))
        vg = _very_good(aset, g, p, cap)
        if vg:
            tau.append(g)
        elif vg is None:
            undecided.append(g)
    return GoodnessCatalog(residue_class=tuple(b % p for b in beta),
                           sigma=tuple(sigma), tau=tuple(tau),
                           undecided=tuple(undecided))


def relation_kernel_basis(aset):
    """Z-basis of the relation lattice L = {l in Z^N : sum l_i a_i = 0}.

    Integer row reduction of the block matrix [A | I]: rows whose A-part
    vanishes carry kernel vectors in their identity part.  Basis vectors
    are sign-normalized (first nonzero entry positive) and lex sorted.
    """
    n, N = aset.n, aset.N
    rows = [list(aset.vectors[i]) + [1 if j == i else 0 for j in range(N)]
            for i in range(N)]
    top = 0
    for col in range(n):
        while True:
            nz = [r for r in range(top, N) if rows[r][col]]
            if not nz:
                break
            rmin = min(nz, key=lambda r: abs(rows[r][col]))
            rows[top], rows[rmin] = rows[rmin], rows[top]
            done = True
            for r in range(top + 1, N):
                if rows[r][col]:
                    q = rows[r][col] // rows[top][col]
                    rows[r] = [x - q * y for x, y in zip(rows[r], rows[top])]
                    if rows[r][col]:
                        done = False
            if done:
                break
        if top < N and rows[top][col]:
            top += 1
    basis = []
    for r in range(top, N):
        assert not any(rows[r][:n])
        vec = tuple(rows[r][n:])
        first = next(x for x in vec if x)
        if first < 0:
            vec = tuple(-x for x in vec)
        basis.append(vec)
    for l in basis:
        for c in range(n):
            assert sum(l[i] * aset.vectors[i][c] for i in range(N)) == 0
    return RelationLattice(basis=tuple(sorted(basis)))


def nonconfluence_form(aset):
    """Rational h with h . a_i = 1 for every generator, or None."""
    return aset.nonconfluent_form


def default_weight_cap(aset, p, a=1):
    """Default search cap 4 a N (p-1), generous for every corpus instance."""
    return 4 * a * aset.N * (p - 1)
