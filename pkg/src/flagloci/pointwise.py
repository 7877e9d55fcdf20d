"""Randomized evaluation of oracles and formulas over a large prime field.

Symbolic divided-difference recursion is too heavy for whole rank-4 sweeps,
but a divided difference evaluates pointwise: (d_i f)(P) is determined by
f at P and at the reflected point T_i(P).  The Weyl action translates to an
explicit transform of numeric points (the ring generators c_p / b_p carry
polynomial images, so a point stores their values alongside the x and y
coordinates).  Starting from the seed at the longest element, one table
fills in every group element's value on the whole orbit of a base point,
in one pass down the weak order.

Points are sampled so the relations hold: the c_p values come from the
generating series prod (1+z_i t)/(1-z_i t) at random z, and b_p = c_p / 2.
Agreement of formula and oracle at such points therefore tests equality
modulo the relation ideal, with Schwartz-Zippel failure probability bounded
by degree/prime per independent point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .ring import DEFAULT_PRIME, q_series_values
from .words import SignedWord, ShapeData, longest_element, shape, all_elements
from .formulas import RaisingTerm, expand_raising


class DegeneratePointError(RuntimeError):
    """A denominator vanished at the sampled point; redraw."""


@dataclass(frozen=True)
class Point:
    """Numeric point of Gamma[X,Y] or Gamma'[X,Y] over F_p."""

    xs: tuple[int, ...]       # values of x_1..x_n
    ys: tuple[int, ...]       # values of y_1..y_n
    gvals: tuple[int, ...]    # values of c_p (flavor BC) or b_p (flavor D)
    flavor: str
    prime: int

    def key(self):
        return (self.xs, self.gvals)


def random_point(lie_type: str, n: int, deg: int, rng: random.Random,
                 prime: int = DEFAULT_PRIME) -> Point:
    flavor = "D" if lie_type == "D" else "BC"
    xs = tuple(rng.randrange(1, prime) for _ in range(n))
    ys = tuple(rng.randrange(1, prime) for _ in range(n))
    zv = tuple(rng.randrange(1, prime) for _ in range(deg))
    q = q_series_values(zv, deg, prime)
    if flavor == "D":
        inv2 = pow(2, -1, prime)
        gv = tuple(v * inv2 % prime for v in q[: deg + 1])
        gv = (1,) + gv[1:]
    else:
        gv = tuple(q[: deg + 1])
    return Point(xs, ys, gv, flavor, prime)


def _cval(pt: Point, p: int) -> int:
    """Value of c_p at the point; in flavor D this is 2 b_p for p >= 1."""
    if p < 0 or p >= len(pt.gvals):
        return 0
    if p == 0:
        return 1
    if pt.flavor == "D":
        return 2 * pt.gvals[p] % pt.prime
    return pt.gvals[p]


def transform(pt: Point, i: int) -> Point:
    """The point T_i with (s_i f)(P) = f(T_i P)."""
    p = pt.prime
    if i >= 1:
        xs = list(pt.xs)
        xs[i - 1], xs[i] = xs[i], xs[i - 1]
        return Point(tuple(xs), pt.ys, pt.gvals, pt.flavor, p)
    if pt.flavor == "BC":
        x1 = pt.xs[0]
        xs = (p - x1 if x1 else 0,) + pt.xs[1:]
        gv = [1]
        xpow = [1]
        for _ in range(len(pt.gvals) - 1):
            xpow.append(xpow[-1] * x1 % p)
        for q in range(1, len(pt.gvals)):
            acc = pt.gvals[q]
            for j in range(1, q + 1):
                acc += 2 * xpow[j] * pt.gvals[q - j]
            gv.append(acc % p)
        return Point(xs, pt.ys, tuple(gv), "BC", p)
    # box node
    x1, x2 = pt.xs[0], pt.xs[1]
    xs = ((p - x2) % p, (p - x1) % p) + pt.xs[2:]
    s = (x1 + x2) % p
    hvals = [1]
    for _ in range(len(pt.gvals) - 1):
        hvals.append((hvals[-1] * x1 + pow(x2, len(hvals), p)) % p)
    # hvals[j] = h_j(x1, x2)
    gv = [1]
    for q in range(1, len(pt.gvals)):
        acc = pt.gvals[q]
        for j in range(q):
            acc += s * hvals[j] % p * _cval(pt, q - 1 - j)
        gv.append(acc % p)
    return Point(xs, pt.ys, tuple(gv), "D", p)


class BlockEvaluator:
    """Numeric values of the building blocks at one point."""

    def __init__(self, pt: Point, max_deg: int):
        self.pt = pt
        self.p = pt.prime
        self.max_deg = max_deg
        n = len(pt.xs)
        self._ex = self._etable([v % self.p for v in pt.xs], max_deg)
        self._hx = self._htable([v % self.p for v in pt.xs], max_deg)
        negy = [(-v) % self.p for v in pt.ys]
        self._eny = self._etable(negy, max_deg)
        self._hny = self._htable(negy, max_deg)

    def _etable(self, vals, deg):
        n = len(vals)
        tab = [[1] + [0] * deg]
        for r in range(1, n + 1):
            prev = tab[-1]
            row = [1] + [0] * deg
            for d in range(1, deg + 1):
                row[d] = (prev[d] + vals[r - 1] * prev[d - 1]) % self.p
            tab.append(row)
        return tab

    def _htable(self, vals, deg):
        n = len(vals)
        tab = [[1] + [0] * deg]
        for r in range(1, n + 1):
            prev = tab[-1]
            row = [1] + [0] * deg
            for d in range(1, deg + 1):
                row[d] = (prev[d] + vals[r - 1] * row[d - 1]) % self.p
            tab.append(row)
        return tab

    @staticmethod
    def _lookup(etab, htab, band, d):
        """e^band_d with the negative-band swap convention e^{-j} = h^j."""
        if d < 0:
            return 0
        if d == 0:
            return 1
        if band == 0:
            return 0
        if band > 0:
            if band >= len(etab):
                raise ValueError("band exceeds the number of point values")
            return etab[band][d]
        if -band >= len(htab):
            raise ValueError("band exceeds the number of point values")
        return htab[-band][d]

    def ex(self, band, d):
        return self._lookup(self._ex, self._hx, band, d)

    def hx(self, band, d):
        return self._lookup(self._hx, self._ex, band, d)

    def eny(self, band, d):
        return self._lookup(self._eny, self._hny, band, d)

    def hny(self, band, d):
        return self._lookup(self._hny, self._eny, band, d)

    # -- blocks --------------------------------------------------------------

    def rh(self, r, s, p):
        if p < 0:
            return 0
        acc = 0
        for i in range(p + 1):
            acc += self.hx(r, i) * self.eny(s, p - i)
        return acc % self.p

    def rc(self, r, s, p):
        if p < 0:
            return 0
        acc = 0
        for i in range(p + 1):
            ei = self.ex(r, i)
            if not ei:
                continue
            for j in range(p - i + 1):
                acc += _cval(self.pt, p - i - j) * ei * self.hny(s, j)
        return acc % self.p

    def rc_d(self, r, p):
        if p < 0:
            return 0
        acc = 0
        for i in range(p + 1):
            acc += _cval(self.pt, p - i) * self.ex(r, i)
        return acc % self.p

    def rcs_d(self, r, s, p):
        if p < 0:
            return 0
        acc = 0
        for j in range(p + 1):
            acc += self.rc_d(r, p - j) * self.hny(s, j)
        return acc % self.p

    def rb_d(self, r, p):
        if p < 0:
            return 0
        inv2 = pow(2, -1, self.p)
        if p < r:
            return self.rc_d(r, p)
        if p > r:
            return self.rc_d(r, p) * inv2 % self.p
        return (self.rc_d(r, r) + self.ex(r, r)) * inv2 % self.p

    def rbt_d(self, r):
        inv2 = pow(2, -1, self.p)
        return (self.rc_d(r, r) - self.ex(r, r)) * inv2 % self.p

    def ra_d(self, r, s, p):
        if p < 0:
            return 0
        inv2 = pow(2, -1, self.p)
        acc = self.rc_d(r, p) * inv2
        for i in range(1, p + 1):
            acc += self.rc_d(r, p - i) * self.hny(s, i)
        return acc % self.p

    def rb_ds(self, r, s, tilde=False):
        acc = self.rbt_d(r) if tilde else self.rb_d(r, r)
        for i in range(1, r + 1):
            acc += self.rc_d(r, r - i) * self.hny(s, i)
        return acc % self.p

    def rchat_d(self, r, s, p, row):
        acc = self.rcs_d(r, s, p)
        if s == r - p and s < 0:
            corr = self.ex(r, r) * self.eny(p - r, p - r)
            acc = acc - corr if row % 2 else acc + corr
        return acc % self.p


def eval_formula(pt: Point, lie_type: str, data: ShapeData,
                 neg_count: int = 0) -> int:
    """Value of the flagged formula at the point."""
    p = pt.prime
    ev = BlockEvaluator(pt, max(data.lam[0] + sum(data.lam) if data.lam else 1, 1))
    total = 0
    denom = frozenset(data.denom_set)
    if lie_type == "A":
        denom = frozenset()
    for term in expand_raising(data.lam, denom):
        rho = term.shifted
        if lie_type == "A":
            val = term.coeff
            for i in range(data.ell):
                val = val * ev.rh(data.f_flag[i], data.g_flag[i], rho[i]) % p
        elif lie_type in ("B", "C"):
            val = term.coeff
            for i in range(data.ell):
                val = val * ev.rc(data.f_flag[i], data.g_flag[i], rho[i]) % p
        else:
            val = term.coeff * _star_value(ev, data, term) % p
        total = (total + val) % p
    if lie_type == "B":
        total = total * pow(pow(2, neg_count, p), -1, p) % p
    if lie_type == "D":
        total = total * pow(pow(2, data.m, p), -1, p) % p
    return total


def _star_value(ev: BlockEvaluator, data: ShapeData, term: RaisingTerm) -> int:
    m = data.m
    rho = term.shifted
    supp = term.support(m)
    val = 1
    for i in range(1, data.ell + 1):
        a, u, r = data.f_flag[i - 1], data.g_flag[i - 1], rho[i - 1]
        if data.d_type == 0 or i <= m:
            blk = ev.rcs_d(a, u, r) if i in supp else ev.rchat_d(a, u, r, i)
        elif i == m + 1:
            if term.touches(m + 1):
                blk = ev.ra_d(a, u, r)
            else:
                blk = ev.rb_ds(a, u, tilde=(data.d_type == 2))
        else:
            blk = ev.rcs_d(a, u, r)
        val = val * blk % ev.p
    return val


class OracleTable:
    """Values of every Schubert polynomial of W_n at one base point.

    Built by one divided-difference pass down the weak order over the orbit
    of the base point under the Weyl-action point transforms.
    """

    def __init__(self, lie_type: str, n: int, base: Point):
        self.lie_type = "C" if lie_type == "B" else lie_type
        self.n = n
        self.prime = base.prime
        self._build(base)

    def _build(self, base: Point):
        p = self.prime
        # orbit closure
        points = [base]
        index = {base.key(): 0}
        gens = list(range(0, self.n)) if self.lie_type != "A" \
            else list(range(1, self.n))
        frontier = [base]
        while frontier:
            nxt = []
            for pt in frontier:
                for i in gens:
                    q = transform(pt, i)
                    if q.key() not in index:
                        index[q.key()] = len(points)
                        points.append(q)
                        nxt.append(q)
            frontier = nxt
        self.points = points
        self.base_index = 0
        tmaps = {}
        denoms = {}
        for i in gens:
            tmaps[i] = [index[transform(pt, i).key()] for pt in points]
            dn = []
            for pt in points:
                if i >= 1:
                    d = (pt.xs[i - 1] - pt.xs[i]) % p
                elif self.lie_type == "C":
                    d = (-2 * pt.xs[0]) % p
                else:
                    d = (-(pt.xs[0] + pt.xs[1])) % p
                if d == 0:
                    raise DegeneratePointError(f"zero denominator at s_{i}")
                dn.append(pow(d, -1, p))
            denoms[i] = dn
        self._tmaps, self._denoms = tmaps, denoms

        # seed values at every orbit point
        w0 = longest_element(self.lie_type, self.n)
        data0 = shape(w0)
        values: dict[tuple, list[int]] = {
            w0.entries: [eval_formula(pt, self.lie_type, data0) for pt in points]
        }
        order = sorted(all_elements(self.lie_type, self.n),
                       key=lambda w: -w.length())
        for w in order:
            if w.entries in values:
                continue
            lw = w.length()
            d = next(i for i in w.simple_indices()
                     if w.mult_right(i).length() > lw)
            parent = w.mult_right(d).entries
            pv = values[parent]
            tm, dn = self._tmaps[d], self._denoms[d]
            values[w.entries] = [
                (pv[j] - pv[tm[j]]) * dn[j] % p for j in range(len(points))
            ]
        self.values = values

    def value(self, w: SignedWord, scale_b: bool = False) -> int:
        v = self.values[w.entries][self.base_index]
        if scale_b:
            v = v * pow(pow(2, w.neg_count(), self.prime), -1, self.prime) \
                % self.prime
        return v

    def base_point(self) -> Point:
        return self.points[self.base_index]


def build_table(lie_type: str, n: int, rng: random.Random,
                prime: int = DEFAULT_PRIME,
                max_retries: int = 5) -> OracleTable:
    eff = "C" if lie_type == "B" else lie_type
    deg = longest_element(eff, n).length() + 1
    for _ in range(max_retries):
        try:
            return OracleTable(lie_type, n, random_point(eff, n, deg, rng, prime))
        except DegeneratePointError:
            continue
    raise DegeneratePointError("could not sample a nondegenerate point")
