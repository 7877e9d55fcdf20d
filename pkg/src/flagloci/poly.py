"""Exact sparse multivariate polynomials over named generator families.

A generator is a hashable tuple whose first entry names its family:

    ("x", i), ("y", i), ("t", i), ("z", i)    ordinary variables, degree 1
    ("c", p), ("b", p)                        ring generators of degree p
    ("s", r, i), ("u", r, i)                  formal row families, degree i
    ("fc", k, p), ("fb", k, p), ("fbt", k)    abstract theta/eta tokens
    ("cq", q, p)                              formal Chern families c_p(q)
    ("aux", name, d)                          ad-hoc symbol of degree d

A monomial is a sorted tuple of (generator, positive exponent) pairs and a
polynomial is a dict mapping monomials to nonzero coefficients.  Coefficients
are python ints whenever possible and Fractions otherwise, so all arithmetic
is exact; the orthogonal types only ever introduce powers of 1/2.

The zero polynomial has an empty term dict.  Nothing here truncates by
degree: every operation used downstream produces honest finite polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

Gen = tuple
Mono = tuple

_KIND_RANK = {
    "x": 0, "y": 1, "t": 2, "z": 3,
    "c": 4, "b": 5,
    "s": 6, "u": 7,
    "fc": 8, "fb": 9, "fbt": 10,
    "cq": 11, "aux": 12,
}


def gen_degree(g: Gen) -> int:
    kind = g[0]
    if kind in ("x", "y", "t", "z"):
        return 1
    if kind in ("c", "b"):
        return g[1]
    if kind in ("s", "u", "fc", "fb", "cq"):
        return g[2]
    if kind == "fbt":
        return g[1]
    if kind == "aux":
        return g[2]
    raise ValueError(f"unknown generator kind {g!r}")


def gen_sort_key(g: Gen):
    return (_KIND_RANK[g[0]],) + tuple(g[1:])


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def mono_degree(m: Mono) -> int:
    return sum(gen_degree(g) * e for g, e in m)


def mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for g, e in m2:
        d[g] = d.get(g, 0) + e
    return tuple(sorted(d.items(), key=lambda ge: gen_sort_key(ge[0])))


class Poly:
    """Immutable-by-convention sparse polynomial."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, object] | None = None):
        self.terms: dict = {}
        if terms:
            for m, c in terms.items():
                c = _norm_coeff(c)
                if c:
                    self.terms[m] = c

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def const(c) -> "Poly":
        p = Poly()
        c = _norm_coeff(c)
        if c:
            p.terms[()] = c
        return p

    @staticmethod
    def one() -> "Poly":
        return Poly.const(1)

    @staticmethod
    def gen(g: Gen, exp: int = 1, coeff=1) -> "Poly":
        gen_degree(g)  # validates the kind
        p = Poly()
        c = _norm_coeff(coeff)
        if c and exp:
            p.terms[((g, exp),)] = c
        elif c:
            p.terms[()] = c
        return p

    # -- predicates & stats ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(mono_degree(m) for m in self.terms)

    def num_terms(self) -> int:
        return len(self.terms)

    def constant_term(self):
        return self.terms.get((), 0)

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(other).terms
        return NotImplemented

    __hash__ = None

    def __neg__(self) -> "Poly":
        out = Poly()
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms:
            out = Poly()
            out.terms = dict(other.terms)
            return out
        out = Poly()
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            s = _norm_coeff(s)
            if s:
                terms[m] = s
            elif m in terms:
                del terms[m]
        out.terms = terms
        return out

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c0 = _norm_coeff(other)
            out = Poly()
            if c0:
                out.terms = {m: _norm_coeff(c * c0) for m, c in self.terms.items()}
            return out
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        p = Poly()
        p.terms = {m: _norm_coeff(c) for m, c in out.items() if c}
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structural operations ----------------------------------------------

    def map_generators(self, fn: Callable[[Gen], tuple[Gen, int]]) -> "Poly":
        """Relabel generators; fn(g) -> (g', unit) multiplies the coefficient
        by unit**exp.  Used for variable swaps and sign involutions."""
        out: dict = {}
        for m, c in self.terms.items():
            parts = []
            coeff = c
            for g, e in m:
                g2, unit = fn(g)
                if unit == -1 and (e & 1):
                    coeff = -coeff
                elif unit != 1 and unit != -1:
                    coeff = coeff * unit ** e
                parts.append((g2, e))
            m2 = tuple(sorted(parts, key=lambda ge: gen_sort_key(ge[0])))
            s = out.get(m2, 0) + coeff
            if s:
                out[m2] = s
            elif m2 in out:
                del out[m2]
        p = Poly()
        p.terms = {m: _norm_coeff(c) for m, c in out.items() if c}
        return p

    def substitute(self, images: Mapping[Gen, "Poly"]) -> "Poly":
        """Replace each generator appearing in `images` by its image poly."""
        total = Poly.zero()
        cache: dict[tuple[Gen, int], Poly] = {}
        for m, c in self.terms.items():
            fixed = []
            factor = Poly.const(c)
            for g, e in m:
                if g in images:
                    key = (g, e)
                    if key not in cache:
                        cache[key] = images[g] ** e
                    factor = factor * cache[key]
                else:
                    fixed.append((g, e))
            if fixed:
                factor = factor * Poly({tuple(fixed): 1})
            total = total + factor
        return total

    def decompose_by(self, g: Gen) -> dict[int, "Poly"]:
        """Write self as sum_d g**d * coeff_d with coeff_d free of g."""
        out: dict[int, Poly] = {}
        for m, c in self.terms.items():
            d = 0
            rest = []
            for gg, e in m:
                if gg == g:
                    d = e
                else:
                    rest.append((gg, e))
            out.setdefault(d, Poly()).terms[tuple(rest)] = c
        return out

    def evaluate(self, value_of: Callable[[Gen], object]):
        """Evaluate with exact arithmetic; value_of maps generators to numbers."""
        total = 0
        for m, c in self.terms.items():
            v = c
            for g, e in m:
                v = v * value_of(g) ** e
            total = total + v
        return total

    def evaluate_mod(self, value_of: Callable[[Gen], int], p: int) -> int:
        """Evaluate modulo a prime; Fraction coefficients use modular inverses."""
        total = 0
        for m, c in self.terms.items():
            if isinstance(c, Fraction):
                v = c.numerator % p * pow(c.denominator, -1, p) % p
            else:
                v = c % p
            for g, e in m:
                v = v * pow(value_of(g), e, p) % p
            total = (total + v) % p
        return total

    # -- rendering -----------------------------------------------------------

    def sorted_terms(self):
        """Graded-lex order: degree descending, then generator sequence."""
        def key(item):
            m, _ = item
            return (-mono_degree(m), tuple((gen_sort_key(g), -e) for g, e in m))
        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for m, c in self.sorted_terms():
            body = "*".join(
                gen_str(g) + (f"^{e}" if e > 1 else "") for g, e in m
            )
            if not body:
                chunks.append(str(c))
            elif c == 1:
                chunks.append(body)
            elif c == -1:
                chunks.append("-" + body)
            else:
                chunks.append(f"{c}*{body}")
        out = chunks[0]
        for ch in chunks[1:]:
            out += " - " + ch[1:] if ch.startswith("-") else " + " + ch
        return out

    def __repr__(self) -> str:
        s = str(self)
        return f"Poly({s if len(s) < 60 else s[:57] + '...'})"


def gen_str(g: Gen) -> str:
    kind = g[0]
    if kind in ("x", "y", "t", "z"):
        return f"{kind}{g[1]}"
    if kind in ("c", "b"):
        return f"{kind}{g[1]}"
    if kind in ("s", "u"):
        return f"{kind}[{g[1]},{g[2]}]"
    if kind == "fc":
        return f"c[{g[1]},{g[2]}]"
    if kind == "fb":
        return f"b[{g[1]},{g[2]}]"
    if kind == "fbt":
        return f"bt[{g[1]}]"
    if kind == "cq":
        return f"c{g[2]}({g[1]})"
    if kind == "aux":
        return str(g[1])
    raise ValueError(f"unknown generator {g!r}")


def gen_latex(g: Gen) -> str:
    kind = g[0]
    if kind in ("x", "y", "t", "z"):
        return f"{kind}_{{{g[1]}}}"
    if kind in ("c", "b"):
        return f"{kind}_{{{g[1]}}}"
    if kind == "fc":
        return f"{{}}^{{{g[1]}}}\\mathfrak{{c}}_{{{g[2]}}}"
    if kind == "fb":
        return f"{{}}^{{{g[1]}}}\\mathfrak{{b}}_{{{g[2]}}}"
    if kind == "fbt":
        return f"{{}}^{{{g[1]}}}\\widetilde{{\\mathfrak{{b}}}}_{{{g[1]}}}"
    if kind == "cq":
        return f"c_{{{g[2]}}}({g[1]})"
    if kind == "s":
        return f"s^{{{g[1]}}}_{{{g[2]}}}"
    if kind == "u":
        return f"u^{{{g[1]}}}_{{{g[2]}}}"
    if kind == "aux":
        return str(g[1])
    raise ValueError(f"unknown generator {g!r}")


def poly_latex(f: Poly) -> str:
    if not f.terms:
        return "0"
    chunks = []
    for m, c in f.sorted_terms():
        body = "\\,".join(
            gen_latex(g) + (f"^{{{e}}}" if e > 1 else "") for g, e in m
        )
        if isinstance(c, Fraction):
            cs = f"\\tfrac{{{c.numerator}}}{{{c.denominator}}}"
            neg = c < 0
            if neg:
                cs = f"-\\tfrac{{{-c.numerator}}}{{{c.denominator}}}"
        else:
            cs = str(c)
            neg = c < 0
        if not body:
            chunks.append(cs)
        elif c == 1:
            chunks.append(body)
        elif c == -1:
            chunks.append("-" + body)
        else:
            chunks.append(f"{cs}{body}")
        del neg
    out = chunks[0]
    for ch in chunks[1:]:
        out += " - " + ch[1:] if ch.startswith("-") else " + " + ch
    return out


def x(i: int) -> Poly:
    return Poly.gen(("x", i))


def y(i: int) -> Poly:
    return Poly.gen(("y", i))


def t_var(i: int) -> Poly:
    return Poly.gen(("t", i))


def z_var(i: int) -> Poly:
    return Poly.gen(("z", i))


def prod(polys: Iterable[Poly]) -> Poly:
    out = Poly.one()
    for p in polys:
        out = out * p
    return out


def half() -> Fraction:
    return Fraction(1, 2)
