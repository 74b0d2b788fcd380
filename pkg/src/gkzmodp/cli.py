"""Command line front end.

Problem instances arrive as JSON files (see load_problem for the schema);
results leave as deterministic JSON or plain text.  Exit codes: 0 for a
completed run with all checks passing, 1 when a mathematical check fails,
2 for input, schema, or budget problems.
"""

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from .corpus import kloosterman_case, run_corpus
from .errors import BudgetExceeded, Undecided
from .gfpoly import GfPoly
from .hasse import hasse_affine, hasse_toric
from .lattice import ASet, default_weight_cap, sigma_tau
from .oracle import (HypersurfaceSpec, affine_count_check, count_affine_zeros,
                     is_prime, katz_coefficient_check, legendre_check,
                     naive_crosscheck)
from .pweight import MSpec
from .series0 import verify_series_congruence
from .solutions import solution_basis

# integers beyond exact double range travel as strings in JSON
INT_STR_LIMIT = 2 ** 53

KNOWN_CAPS = ("weight_cap", "relation_norm_cap", "shift_cap", "oracle_budget")


def _as_int(x, name):
    if isinstance(x, bool):
        raise ValueError(f"{name} must be an integer")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            raise ValueError(f"{name} is not an integer: {x!r}")
    raise ValueError(f"{name} must be an integer or an integer string")


def _as_vector(x, name):
    if not isinstance(x, (list, tuple)):
        raise ValueError(f"{name} must be a list of integers")
    return tuple(_as_int(v, name) for v in x)


def _as_matrix(x, name):
    if not isinstance(x, (list, tuple)) or not x:
        raise ValueError(f"{name} must be a nonempty list of integer rows")
    rows = tuple(_as_vector(r, name) for r in x)
    if len({len(r) for r in rows}) != 1:
        raise ValueError(f"{name} rows must share one length")
    return rows


@dataclasses.dataclass
class ProblemSpec:
    """One problem instance as read from a JSON spec file.

    Keys: p (prime, required), a (default 1), A (generator rows), m
    (number of toric coordinates, default all), e, beta, u0, gamma,
    monomials, lambda, caps {weight_cap, relation_norm_cap, shift_cap,
    oracle_budget}.  Integers too large for JSON doubles may be strings.
    """

    p: int
    a: int = 1
    A: tuple = ()
    m: int | None = None
    e: tuple | None = None
    beta: tuple | None = None
    u0: tuple | None = None
    gamma: tuple | None = None
    monomials: tuple | None = None
    lam: tuple | None = None
    caps: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.a < 1:
            raise ValueError("a must be >= 1")
        if self.A:
            n = len(self.A[0])
            if self.m is not None and not 0 <= self.m <= n:
                raise ValueError(f"m must lie in 0..{n}")
        for key in self.caps:
            if key not in KNOWN_CAPS:
                raise ValueError(f"unknown cap {key!r}; known: {KNOWN_CAPS}")

    @property
    def aset(self):
        if not self.A:
            raise ValueError("spec needs generator rows under key 'A'")
        return ASet(self.A)


def load_problem(source):
    """Build a ProblemSpec from a JSON file path or a parsed dict."""
    if isinstance(source, dict):
        raw = source
    else:
        with open(source) as fh:
            raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError("spec file must hold a JSON object")
    known = {"p", "a", "A", "m", "e", "beta", "u0", "gamma",
             "monomials", "lambda", "caps"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown spec keys: {sorted(unknown)}")
    if "p" not in raw:
        raise ValueError("spec needs the prime under key 'p'")
    kw = {"p": _as_int(raw["p"], "p")}
    if "a" in raw:
        kw["a"] = _as_int(raw["a"], "a")
    if "A" in raw:
        kw["A"] = _as_matrix(raw["A"], "A")
    if "m" in raw:
        kw["m"] = _as_int(raw["m"], "m")
    for key in ("e", "beta", "u0", "gamma"):
        if key in raw:
            kw[key] = _as_vector(raw[key], key)
    if "monomials" in raw:
        kw["monomials"] = _as_matrix(raw["monomials"], "monomials")
    if "lambda" in raw:
        kw["lam"] = _as_vector(raw["lambda"], "lambda")
    if "caps" in raw:
        caps = raw["caps"]
        if not isinstance(caps, dict):
            raise ValueError("caps must be an object")
        kw["caps"] = {k: _as_int(v, f"caps.{k}") for k, v in caps.items()}
    return ProblemSpec(**kw)


def _jsonify(obj):
    if isinstance(obj, GfPoly):
        return {"text": obj.to_text(), "terms": obj.to_json_obj()}
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > INT_STR_LIMIT else obj
    if dataclasses.is_dataclass(obj):
        return {f.name: _jsonify(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(payload, args):
    if args.format == "json":
        text = json.dumps(_jsonify(payload), sort_keys=True, indent=2) + "\n"
    else:
        text = "\n".join(_render_text(payload)) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _vec(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


def _render_text(payload):
    cmd = payload["command"]
    lines = []
    if cmd == "solutions":
        lines.append(f"residue class {_vec(payload['residue_class'])} mod {payload['p']}")
        for entry in payload["sigma"]:
            lines.append(f"gamma={_vec(entry['gamma'])} weight={entry['weight']}"
                         f" minimals={len(entry['minimals'])}")
            lines.append(f"  F = {entry['F'].to_text()}")
        lines.append("very good: " + (", ".join(_vec(g) for g in payload["tau"]) or "none"))
        if payload["undecided"]:
            lines.append("undecided: " + ", ".join(_vec(g) for g in payload["undecided"]))
    elif cmd == "hasse":
        if payload["empty"]:
            lines.append("empty exponent family; H = 0, no valuation claim")
        else:
            lines.append(f"H = {payload['H'].to_text()}")
            lines.append(f"C = w_p(M) = {payload['C']}"
                         f"   (valuation bound C/(p-1) = {payload['C']}/{payload['p'] - 1})")
            if payload.get("case") is not None:
                lines.append(f"Kloosterman digit case {payload['case']}")
            for entry in payload.get("layers", ()):
                mark = " *" if entry["selected"] else ""
                lines.append(f"layer {entry['layer']}: w_p = {entry['pweight']}{mark}")
    elif cmd == "series":
        lines.append(f"gamma={_vec(payload['gamma'])} u0={_vec(payload['u0'])}"
                     f" weight={payload['weight']}")
        lines.append("p-integral: " + ("yes" if payload["p_integral"] else "NO"))
        lines.append(f"reduction = {payload['reduction'].to_text()}")
        lines.append(f"expected  = {payload['expected'].to_text()}")
        lines.append("ok" if payload["ok"] else "FAIL")
    elif cmd == "oracle":
        for rep in payload["reports"]:
            lines.append(_report_line(rep))
    elif cmd == "corpus":
        for suite, reps in payload["suites"].items():
            bad = sum(1 for r in reps if r.failures)
            lines.append(f"{suite}: {len(reps)} reports, {bad} failing")
            for rep in reps:
                lines.append("  " + _report_line(rep))
    return lines


def _report_line(rep):
    if rep.skipped is not None:
        return f"[skip] {rep.instance}: {rep.skipped}"
    mark = "ok" if not rep.failures else "FAIL"
    line = f"[{mark}] {rep.instance}: {rep.passed}/{rep.checked}"
    if rep.failures:
        line += f" first failure: {rep.failures[0]}"
    return line


def _cmd_solutions(spec, args):
    aset = spec.aset
    if spec.beta is None:
        raise ValueError("solutions needs a target under key 'beta'")
    cap = spec.caps.get("weight_cap", default_weight_cap(aset, spec.p))
    catalog = sigma_tau(aset, spec.beta, spec.p, cap)
    fmap = dict(solution_basis(aset, spec.beta, spec.p, cap))
    payload = {
        "command": "solutions",
        "p": spec.p,
        "A": aset.vectors,
        "beta": spec.beta,
        "residue_class": catalog.residue_class,
        "sigma": [{"gamma": g, "weight": wr.weight, "minimals": wr.minimals,
                   "F": fmap[g]} for g, wr in catalog.sigma],
        "tau": catalog.tau,
        "undecided": catalog.undecided,
    }
    return payload, True


def _cmd_hasse(spec, args):
    aset = spec.aset
    if spec.e is None:
        raise ValueError("hasse needs twist exponents under key 'e'")
    m = spec.m if spec.m is not None else aset.n
    cap = spec.caps.get("weight_cap")
    if m == aset.n:
        res = hasse_toric(aset, spec.e, spec.p, spec.a, cap)
    else:
        res = hasse_affine(aset, spec.e, spec.p, spec.a, m, cap)
    payload = {
        "command": "hasse",
        "p": spec.p,
        "q": spec.p ** spec.a,
        "A": aset.vectors,
        "e": spec.e,
        "m": m,
        "H": res.H,
        "C": res.valuation_numerator,
        "empty": res.empty_flag,
        "layers": [{"layer": l, "pweight": w,
                    "selected": l in res.contributing_layers}
                   for l, w in res.layer_weights],
        "case": None,
    }
    if aset.vectors == ((1,), (-1,)) and spec.a == 2 and not res.empty_flag:
        e = spec.e[0] % (spec.p ** 2 - 1)
        payload["case"] = kloosterman_case(spec.p, e % spec.p, e // spec.p)
    return payload, True


def _cmd_series(spec, args):
    aset = spec.aset
    if spec.u0 is None:
        raise ValueError("series needs a base exponent under key 'u0'")
    gamma = spec.gamma
    if gamma is None:
        gamma = tuple(sum(spec.u0[i] * aset.vectors[i][c] for i in range(aset.N))
                      for c in range(aset.n))
    rep = verify_series_congruence(aset, spec.u0, gamma, spec.p,
                                   weight_cap=spec.caps.get("weight_cap"),
                                   shift_cap=spec.caps.get("shift_cap"))
    payload = {
        "command": "series",
        "p": spec.p,
        "A": aset.vectors,
        "gamma": rep.gamma,
        "u0": rep.u0,
        "weight": rep.weight,
        "ok": rep.ok,
        "p_integral": rep.p_integral,
        "offending": rep.offending,
        "reduction": rep.reduction,
        "expected": rep.expected,
        "profile": rep.profile,
    }
    return payload, rep.ok


def _hypersurface(spec):
    if spec.monomials is None:
        raise ValueError("this oracle needs monomial rows under key 'monomials'")
    return HypersurfaceSpec(spec.p, len(spec.monomials[0]), spec.monomials,
                            spec.lam)


def _cmd_oracle(spec, args):
    budget = spec.caps.get("oracle_budget", 10 ** 8)
    cap = spec.caps.get("weight_cap")
    if args.oracle == "count":
        h = _hypersurface(spec)
        if h.lam is not None:
            count = count_affine_zeros(h, budget)
            payload = {"command": "oracle", "oracle": "count",
                       "lambda": h.lam, "count": count, "reports": []}
            return payload, True
        reports = [affine_count_check(h, cap, budget)]
    elif args.oracle == "katz":
        reports = [katz_coefficient_check(_hypersurface(spec), spec.gamma, cap)]
    elif args.oracle == "legendre":
        reports = [legendre_check(spec.p, budget)]
    else:
        aset = spec.aset
        if spec.e is None:
            raise ValueError("crosscheck needs twist exponents under key 'e'")
        m = spec.m if spec.m is not None else aset.n
        if m == aset.n:
            specs = [MSpec("toric", spec.e, spec.p, spec.a)]
        else:
            specs = [MSpec("affine-layer", spec.e, spec.p, spec.a, m=m, layer=l)
                     for l in range(aset.n - m + 1)]
        reports = [naive_crosscheck(aset, s, budget) for s in specs]
    payload = {"command": "oracle", "oracle": args.oracle, "reports": reports}
    return payload, all(r.ok for r in reports)


def _cmd_corpus(spec, args):
    budget = 10 ** 8 if spec is None else spec.caps.get("oracle_budget", 10 ** 8)
    suites = run_corpus(budget)
    if args.suite:
        if args.suite not in suites:
            raise ValueError(f"unknown suite {args.suite!r}; "
                             f"known: {sorted(suites)}")
        suites = {args.suite: suites[args.suite]}
    ok = all(r.ok for reps in suites.values() for r in reps)
    return {"command": "corpus", "suites": suites}, ok


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gkzmodp",
        description="Mod-p solution polynomials of A-hypergeometric systems "
                    "and Hasse invariants of exponential sum families.")
    parser.add_argument("--threads", type=int, default=1,
                        help="accepted for interface stability; "
                             "computation is single threaded")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, needs_spec=True):
        sp.add_argument("--spec", required=needs_spec,
                        help="path to the JSON problem file")
        sp.add_argument("--out", help="write the result here instead of stdout")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--cap-override", action="append", default=[],
                        metavar="KEY=VALUE",
                        help="override a cap from the spec file; repeatable")

    common(sub.add_parser("solutions", help="solution polynomials F_gamma "
                                            "for a residue class"))
    common(sub.add_parser("hasse", help="Hasse invariant of a family "
                                        "(toric when m = n, mixed when m < n)"))
    common(sub.add_parser("series", help="integrality and reduction of the "
                                         "series solution based at u0"))
    sp = sub.add_parser("oracle", help="independent finite-field checks")
    sp.add_argument("oracle", choices=("count", "katz", "legendre", "crosscheck"))
    common(sp)
    sp = sub.add_parser("corpus", help="run the built-in verification corpus")
    sp.add_argument("--suite", help="run a single suite by name")
    common(sp, needs_spec=False)
    return parser


_HANDLERS = {
    "solutions": _cmd_solutions,
    "hasse": _cmd_hasse,
    "series": _cmd_series,
    "oracle": _cmd_oracle,
    "corpus": _cmd_corpus,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = load_problem(args.spec) if args.spec else None
        if spec is not None:
            for item in args.cap_override:
                key, _, value = item.partition("=")
                if key not in KNOWN_CAPS:
                    raise ValueError(f"unknown cap {key!r}; known: {KNOWN_CAPS}")
                spec.caps[key] = _as_int(value, key)
        if spec is None and args.command != "corpus":
            raise ValueError("this command needs --spec")
        payload, ok = _HANDLERS[args.command](spec, args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError,
            Undecided, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1
    _emit(payload, args)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
