"""Sparse multivariate polynomial arithmetic over the prime field F_p.

Polynomials live in F_p[l1, .., lN].  Terms are a map from exponent
tuples (nonnegative ints) to residues in {1, .., p-1}; zero coefficients
are never stored, and all orderings are lexicographic on exponents.
"""

from __future__ import annotations


class GfPoly:
    """Immutable-by-convention sparse polynomial over F_p."""

    __slots__ = ("p", "nvars", "terms")

    def __init__(self, p, nvars, terms=None):
        if p < 2:
            raise ValueError("p must be at least 2")
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.p = p
        self.nvars = nvars
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exps, coef in items:
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise ValueError(f"exponent tuple {exps} has length != {nvars}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                acc[exps] = (acc.get(exps, 0) + coef) % p
        self.terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def zero(cls, p, nvars):
        return cls(p, nvars)

    @classmethod
    def constant(cls, p, nvars, c):
        return cls(p, nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, p, exps, coef=1):
        return cls(p, len(exps), {tuple(exps): coef})

    def is_zero(self):
        return not self.terms

    def _check_compat(self, other):
        if self.p != other.p or self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        self._check_compat(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, 0) + c
        return GfPoly(self.p, self.nvars, acc)

    def __neg__(self):
        return GfPoly(self.p, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check_compat(other)
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return GfPoly(self.p, self.nvars, acc)

    __rmul__ = __mul__

    def scale(self, c):
        return GfPoly(self.p, self.nvars, {e: k * c for e, k in self.terms.items()})

    def derivative_power(self, i, k):
        """Apply (d/dl_{i+1})^k termwise; i is a 0-based variable index.

        The coefficient picks up the falling factorial e_i (e_i - 1) .. (e_i - k + 1)
        reduced mod p, so terms with e_i < k or with a factor divisible by p vanish.
        """
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range")
        if k < 0:
            raise ValueError("derivative order must be nonnegative")
        if k == 0:
            return self
        acc = {}
        for e, c in self.terms.items():
            if e[i] < k:
                continue
            fall = 1
            for j in range(k):
                fall = fall * (e[i] - j) % self.p
            if not fall:
                continue
            e2 = e[:i] + (e[i] - k,) + e[i + 1:]
            acc[e2] = acc.get(e2, 0) + c * fall
        return GfPoly(self.p, self.nvars, acc)

    def frobenius_twist(self, k):
        """Substitute l_j -> l_j^(p^k) for every variable."""
        if k < 0:
            raise ValueError("twist order must be nonnegative")
        q = self.p ** k
        return GfPoly(self.p, self.nvars,
                      {tuple(x * q for x in e): c for e, c in self.terms.items()})

    def evaluate(self, point):
        """Evaluate at a point of F_p^nvars, returning a residue in {0, .., p-1}."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * pow(x % self.p, k, self.p) % self.p
            total += v
        return total % self.p

    def degree_in(self, i):
        """Largest exponent of variable i, or -1 for the zero polynomial."""
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_text(self):
        """Canonical text form, terms in ascending lex order.

        Example: '4*l1^3 + 2*l1^5*l2^2'.  The zero polynomial prints '0'.
        """
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [str(c)]
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"l{i + 1}")
                elif k > 1:
                    factors.append(f"l{i + 1}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def to_json_obj(self):
        return [{"coef": c, "exps": list(e)} for e, c in self.sorted_terms()]

    def __eq__(self, other):
        if not isinstance(other, GfPoly):
            return NotImplemented
        return (self.p, self.nvars, self.terms) == (other.p, other.nvars, other.terms)

    def __hash__(self):
        return hash((self.p, self.nvars, tuple(self.sorted_terms())))

    def __repr__(self):
        return f"GfPoly(p={self.p}, {self.to_text()})"
