"""Named problem instances and self-verifying corpus runners.

Every constructive path in the package is paired here with an independent
route to the same numbers: solution bases against direct operator
residuals, digit-sequence assembly against the weight recursions, pruned
enumerations against naive product scans, Hasse invariants against
exhaustive point counts.  The CLI `corpus` command and the acceptance
tests both drive these suites.
"""

import itertools
import random

from .hasse import hasse_affine
from .lattice import ASet, default_weight_cap, sigma_tau, weight_and_minimals
from .oracle import (CheckReport, HypersurfaceSpec, affine_count_check,
                     cone_hypothesis_witness, katz_coefficient_check,
                     legendre_check, naive_crosscheck)
from .pweight import MSpec, digits, enumerate_U_M, gamma_sequences, wp_min
from .series0 import support_profile, verify_series_congruence
from .solutions import box_residual, euler_residual, relation_test_set, solution_basis

# Two generators 1, -1 in Z: the family sum_x psi(l1 x + l2 / x).
KLOOSTERMAN = ASet(((1,), (-1,)))

# Three coordinate axes plus a mixed direction; the class of
# ((p-1)/2, (p-1)/2, 0) has the hypergeometric solution with squared
# binomial coefficients.
AXES_AND_MIXED = ASet(((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)))

# One moving term and one constant term; the smallest family whose affine
# layers exercise the alternating layer signs.
LINE_WITH_CONSTANT = ASet(((1,), (0,)))

# Two axes and their diagonal in Z^2.
MIXED_PLANE = ASet(((1, 0), (0, 1), (1, 1)))

# Pointed but not simplicial at the corner.
CORNER_PAIR = ASet(((2, 1), (0, 1)))

# Non-pointed: the line through (1,0) and (-1,0) keeps membership of
# gamma - p a_3 out of reach of any bounded search, so very-good
# classification comes back None or False depending on the cap.
UNDECIDED_STRIP = ASet(((1, 0), (-1, 0), (0, 1)))

# A zero generator contributes a bare constant term.
ZERO_GEN_PLANE = ASet(((1, 0), (0, 2), (0, 0)))

# Diagonal quadric cone sections used by the affine suites.
DIAGONAL_QUADRIC_CONE = ASet(((2, 0, 1), (0, 2, 1)))

RANDOM_SEED = "gkzmodp-corpus-1"


def random_asets(count=5, seed=RANDOM_SEED):
    """Deterministic sample of generator sets, n <= 3, N <= 4, entries in [-2, 2]."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, 3)
        N = rng.randint(2, 4)
        vecs = tuple(tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(N))
        if any(not any(v) for v in vecs) or len(set(vecs)) < N:
            continue
        out.append(ASet(vecs))
    return tuple(out)


def corpus_asets():
    return (AXES_AND_MIXED, KLOOSTERMAN) + random_asets()


def corpus_betas(aset, p, count=2):
    """Deterministic small targets, in distinct residue classes when possible."""
    rng = random.Random(f"{RANDOM_SEED}|{aset.vectors}|{p}")
    out = []
    residues = set()
    for _ in range(60):
        if len(out) == count:
            break
        c = tuple(rng.randint(0, 2) for _ in range(aset.N))
        beta = tuple(sum(c[i] * aset.vectors[i][k] for i in range(aset.N))
                     for k in range(aset.n))
        r = tuple(x % p for x in beta)
        if r in residues:
            continue
        residues.add(r)
        out.append(beta)
    return tuple(out)


def solution_suite(ps=(3, 5, 7)):
    """Rebuild every solution basis and recheck all operator residuals."""
    reports = []
    for aset in corpus_asets():
        for p in ps:
            for beta in corpus_betas(aset, p):
                basis = solution_basis(aset, beta, p, 2 * p)
                failures = []
                checked = 0
                for gamma, f in basis:
                    for r in euler_residual(aset, gamma, f):
                        checked += 1
                        if not r.is_zero():
                            failures.append(("euler", gamma))
                    for op in relation_test_set(aset, gamma, p):
                        checked += 1
                        if not box_residual(op, f).is_zero():
                            failures.append(("box", gamma, op.l))
                reports.append(CheckReport(
                    instance=f"solutions A={aset.vectors} p={p} beta={beta}",
                    checked=max(checked, 1),
                    passed=max(checked, 1) - len(failures),
                    failures=tuple(failures)))
    return reports


def corpus_families():
    """(aset, MSpec) toric pairs with q in {p, p^2} for the digit checks."""
    fams = []
    for p in (3, 5):
        for e in range(p - 1):
            fams.append((KLOOSTERMAN, MSpec("toric", (e,), p, 1)))
    for p, picks in ((3, (0, 3, 4, 7)), (5, (0, 7, 12, 23))):
        for e in picks:
            fams.append((KLOOSTERMAN, MSpec("toric", (e,), p, 2)))
    for e in itertools.product((0, 1), repeat=3):
        fams.append((AXES_AND_MIXED, MSpec("toric", e, 3, 1)))
    for e in ((0, 0, 0), (4, 4, 0), (1, 2, 3), (7, 1, 0)):
        fams.append((AXES_AND_MIXED, MSpec("toric", e, 3, 2)))
    for e in ((0, 0, 0), (2, 2, 0), (1, 3, 2), (3, 1, 1)):
        fams.append((AXES_AND_MIXED, MSpec("toric", e, 5, 1)))
    rng = random.Random(RANDOM_SEED + "|families")
    for aset in random_asets():
        for a in (1, 2):
            q = 3 ** a
            e = tuple(rng.randint(0, q - 2) for _ in range(aset.n))
            fams.append((aset, MSpec("toric", e, 3, a)))
    return tuple(fams)


def partition_suite():
    """Digit-sequence partition of U_{M,min} and the per-digit equality criterion.

    For each family: the gamma-sequence classes must cover U_{M,min} exactly
    once with weights summing to w_p(M), and for every member u of U_M the
    inequality w_p(u) >= sum_k w(gamma_k(u)) must hold with equality exactly
    when every digit row is a minimal representation.
    """
    reports = []
    for aset, spec in corpus_families():
        name = f"partition A={aset.vectors} e={spec.e} q={spec.q}"
        U_M = enumerate_U_M(aset, spec)
        if not U_M:
            reports.append(CheckReport(instance=name, checked=0, passed=0,
                                       skipped="empty family"))
            continue
        wp, U_min = wp_min(U_M, spec.p)
        cap = default_weight_cap(aset, spec.p, spec.a)
        seqs = gamma_sequences(aset, U_min, spec.p, spec.a, cap)
        failures = []
        covered = sorted(u for s in seqs for u in s.member_class)
        if covered != sorted(U_min):
            failures.append(("partition", len(covered), len(U_min)))
        for s in seqs:
            row_weights = sum(sum(s.minimals_per_k[k][0]) for k in range(spec.a))
            if row_weights != wp:
                failures.append(("weight-sum", s.gammas))
        for u in U_M:
            dec = digits(aset, u, spec.p, spec.a)
            total = 0
            all_min = True
            broken = False
            for k in range(spec.a):
                wr = weight_and_minimals(aset, dec.gammas[k], sum(dec.digits[k]))
                if wr.status != "found":
                    failures.append(("digit-target-missing", u, k))
                    broken = True
                    break
                total += wr.weight
                if dec.digits[k] not in wr.minimals:
                    all_min = False
            if broken:
                continue
            if dec.pweight < total:
                failures.append(("inequality", u))
            if (dec.pweight == total) != all_min:
                failures.append(("equality-criterion", u))
        checked = len(U_M) + len(U_min) + len(seqs)
        reports.append(CheckReport(instance=name, checked=checked,
                                   passed=checked - len(failures),
                                   failures=tuple(failures)))
    return reports


def diagonal_hypersurface(p, n, d):
    """x_1^d + ... + x_n^d over F_p."""
    mons = tuple(tuple(d if j == i else 0 for j in range(n)) for i in range(n))
    return HypersurfaceSpec(p, n, mons)


def census_hypersurfaces():
    """Diagonal quadrics and cubics, n in {2, 3}, p in {3, 5, 7}."""
    return tuple(diagonal_hypersurface(p, n, d)
                 for p in (3, 5, 7) for n in (2, 3) for d in (2, 3))


def affine_count_suite(budget=10 ** 8):
    """Exhaustive N_aff(lambda) = -H(lambda) mod p over all coefficients."""
    return [affine_count_check(h, budget=budget) for h in census_hypersurfaces()]


def katz_suite():
    """Leading-coefficient identity (p-1)! F_gamma0 = [x^gamma0] (x_{n+1} f)^{p-1}."""
    reports = []
    for h in census_hypersurfaces():
        if cone_hypothesis_witness(h) is None:
            reports.append(CheckReport(
                instance=f"katz p={h.p} monomials={h.monomials}",
                checked=0, passed=0, skipped="hypothesis unsatisfiable"))
            continue
        reports.append(katz_coefficient_check(h))
    return reports


def series_suite(ps=(3, 5, 7)):
    """Integrality and mod-pi reduction for every verified (gamma, u0)."""
    reports = []
    for aset in corpus_asets():
        for p in ps:
            for beta in corpus_betas(aset, p):
                catalog = sigma_tau(aset, beta, p, 2 * p)
                failures = []
                checked = 0
                for gamma, wr in catalog.sigma:
                    for u0 in wr.minimals:
                        prof = support_profile(aset, u0, p)
                        if prof.minimal_flag != "verified":
                            continue
                        rep = verify_series_congruence(aset, u0, gamma, p,
                                                       weight_cap=2 * p)
                        checked += 1
                        if not rep.ok:
                            failures.append((gamma, u0))
                reports.append(CheckReport(
                    instance=f"series A={aset.vectors} p={p} beta={beta}",
                    checked=max(checked, 1),
                    passed=max(checked, 1) - len(failures),
                    failures=tuple(failures)))
    return reports


def affine_instances():
    """(aset, e, p, a, m) families with at least one affine coordinate."""
    return (
        (LINE_WITH_CONSTANT, (0,), 3, 1, 0),
        (LINE_WITH_CONSTANT, (0,), 5, 1, 0),
        (LINE_WITH_CONSTANT, (0,), 3, 2, 0),
        (MIXED_PLANE, (0, 0), 3, 1, 0),
        (MIXED_PLANE, (0, 0), 5, 1, 0),
        (MIXED_PLANE, (1, 0), 5, 1, 1),
        (CORNER_PAIR, (0, 0), 3, 1, 1),
        (CORNER_PAIR, (1, 0), 3, 1, 1),
        (CORNER_PAIR, (0, 0), 5, 1, 1),
        (CORNER_PAIR, (1, 0), 5, 1, 1),
        (CORNER_PAIR, (2, 0), 5, 1, 1),
        (ZERO_GEN_PLANE, (0, 0), 3, 1, 0),
        (DIAGONAL_QUADRIC_CONE, (0, 0, 0), 3, 1, 0),
        (DIAGONAL_QUADRIC_CONE, (0, 0, 0), 5, 1, 0),
    )


def layer_suite():
    """Per-layer weight bound w_p(M_l) + a (n-m-l)(p-1) >= w_p(M_{n-m})."""
    reports = []
    for aset, e, p, a, m in affine_instances():
        name = f"layers A={aset.vectors} e={e} q={p ** a} m={m}"
        try:
            res = hasse_affine(aset, e, p, a, m)
        except ValueError as exc:
            reports.append(CheckReport(instance=name, checked=0, passed=0,
                                       skipped=str(exc)))
            continue
        C = res.valuation_numerator
        top = aset.n - m
        failures = []
        checked = 0
        for l, wp_l in res.layer_weights:
            if wp_l is None:
                continue
            checked += 1
            if wp_l + a * (top - l) * (p - 1) < C:
                failures.append((l, wp_l))
        reports.append(CheckReport(instance=name, checked=checked,
                                   passed=checked - len(failures),
                                   failures=tuple(failures)))
    return reports


def legendre_suite(ps=(3, 5, 7, 11, 13)):
    """Hasse invariant of the Legendre family against exhaustive traces."""
    return [legendre_check(p) for p in ps]


def crosscheck_suite(budget=10 ** 6):
    """Naive product-space scans against the pruned enumerations."""
    cases = [
        (KLOOSTERMAN, MSpec("toric", (0,), 3, 1)),
        (KLOOSTERMAN, MSpec("toric", (1,), 3, 1)),
        (KLOOSTERMAN, MSpec("toric", (3,), 3, 2)),
        (KLOOSTERMAN, MSpec("toric", (2,), 5, 1)),
        (AXES_AND_MIXED, MSpec("toric", (0, 0, 0), 3, 1)),
        (AXES_AND_MIXED, MSpec("toric", (1, 1, 0), 3, 1)),
        (LINE_WITH_CONSTANT, MSpec("affine-layer", (0,), 3, 1, m=0, layer=0)),
        (LINE_WITH_CONSTANT, MSpec("affine-layer", (0,), 3, 1, m=0, layer=1)),
        (MIXED_PLANE, MSpec("affine-layer", (0, 0), 3, 1, m=0, layer=0)),
        (MIXED_PLANE, MSpec("affine-layer", (0, 0), 3, 1, m=0, layer=1)),
        (MIXED_PLANE, MSpec("affine-layer", (0, 0), 3, 1, m=0, layer=2)),
        (CORNER_PAIR, MSpec("affine-layer", (1, 0), 5, 1, m=1, layer=0)),
        (CORNER_PAIR, MSpec("affine-layer", (1, 0), 5, 1, m=1, layer=1)),
    ]
    for aset in random_asets()[:2]:
        cases.append((aset, MSpec("toric", (0,) * aset.n, 3, 1)))
    return [naive_crosscheck(aset, spec, budget) for aset, spec in cases]


def kloosterman_case(p, e0, e1):
    """Case number 1..11 of the two-digit Kloosterman classification.

    The pair (e0, e1) ranges over base-p digits of e in {0..p^2-2}, so
    (p-1, p-1) never occurs and is rejected.
    """
    lo = (p - 3) // 2
    mid = (p - 1) // 2
    hi = (p + 1) // 2
    if (e0, e1) == (p - 1, p - 1):
        raise ValueError("digit pair (p-1, p-1) does not arise")
    if not (0 <= e0 <= p - 1 and 0 <= e1 <= p - 1):
        raise ValueError("digits out of range")
    if (e0 <= lo and e1 < hi) or (e0 == mid and e1 < mid):
        return 1
    if (e0 >= hi and e1 > lo) or (e0 == mid and e1 > mid):
        return 2
    if e0 > hi and e1 < lo:
        return 3
    if e0 < lo and e1 > hi:
        return 4
    if e0 == hi and e1 < lo:
        return 5
    if e0 == lo and e1 > hi:
        return 6
    if e0 == mid and e1 == mid:
        return 7
    if e0 < lo and e1 == hi:
        return 8
    if e0 > hi and e1 == lo:
        return 9
    if e0 == hi and e1 == lo:
        return 10
    if e0 == lo and e1 == hi:
        return 11
    raise AssertionError(f"unclassified digit pair {(e0, e1)} for p={p}")


def run_corpus(budget=10 ** 8):
    """All suites; returns {suite name: [CheckReport, ...]}."""
    return {
        "solutions": solution_suite(),
        "partition": partition_suite(),
        "affine-count": affine_count_suite(budget),
        "katz": katz_suite(),
        "series": series_suite(),
        "layers": layer_suite(),
        "legendre": legendre_suite(),
        "crosscheck": crosscheck_suite(),
    }
