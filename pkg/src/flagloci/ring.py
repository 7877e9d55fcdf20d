"""Polynomial rings carrying the Weyl group actions of types A, B/C and D.

Three coefficient settings share one sparse-polynomial backend:

  * type A works in Z[X, Y];
  * types B and C work in Gamma[X, Y], where Gamma is generated by c_1,
    c_2, ... subject to the quadratic relations satisfied by Schur
    Q-functions;
  * type D works in Gamma'[X, Y], generated by b_1, b_2, ... with the
    P-function relations, and Gamma embeds by c_p -> 2 b_p.

All divided-difference computations run in the free polynomial ring; two
expressions are compared modulo the relation ideal by specialising c_p to the
Q-polynomial Q_p(z_1, ..., z_M) (and b_p to Q_p/2), either expanding exactly
or sampling modulo a large prime.  Since the Q_lambda for strict lambda are
linearly independent, the specialisation is faithful up to degree M.

Divided differences are exact quotients; a nonzero remainder in the synthetic
division signals corruption and raises immediately.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .poly import Poly, half

# Mersenne prime used for randomized identity testing; 2 is invertible.
DEFAULT_PRIME = (1 << 61) - 1


class ExactDivisionError(ArithmeticError):
    """A divided difference failed to divide exactly."""


class DegreeBoundError(ValueError):
    """A comparison exceeded the faithful degree of its relation context."""


@dataclass(frozen=True)
class RelationContext:
    """How to interpret generators when testing equality.

    flavor "A" has no ring generators, "BC" uses c_p with the Q-function
    relations, "D" uses b_p with the P-function relations.  num_z is the
    number of specialisation variables (faithful up to that total degree);
    prime = 0 requests exact symbolic comparison.
    """

    flavor: str
    num_z: int
    prime: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.flavor not in ("A", "BC", "D"):
            raise ValueError(f"unknown relation flavor {self.flavor!r}")


# -- symmetric polynomials ----------------------------------------------------

_ALPHABETS = {
    "X": ("x", 1),
    "-Y": ("y", -1),
    "-t": ("t", -1),
    "Z": ("z", 1),
}


@lru_cache(maxsize=None)
def _elem(kind: str, j: int, r: int, alphabet: str) -> Poly:
    if r < 0:
        return Poly.zero()
    if r == 0:
        return Poly.one()
    if j <= 0:
        return Poly.zero()
    var, sign = _ALPHABETS[alphabet]
    zj = Poly.gen((var, j), coeff=sign)
    if kind == "e":
        return _elem("e", j - 1, r, alphabet) + zj * _elem("e", j - 1, r - 1, alphabet)
    return _elem("h", j - 1, r, alphabet) + zj * _elem("h", j, r - 1, alphabet)


def sym_func(kind: str, j: int, r: int, alphabet: str = "X") -> Poly:
    """e^j_r or h^j_r on the first j letters of the alphabet.

    Negative bands swap the two families (h^{-j} = e^j and vice versa) and
    band 0 gives the Kronecker delta in r.
    """
    if kind not in ("e", "h"):
        raise ValueError("kind must the 'e' or 'h'")
    if r < 0:
        return Poly.zero()
    if j == 0:
        return Poly.one() if r == 0 else Poly.zero()
    if j < 0:
        kind = "e" if kind == "h" else "h"
        j = -j
    return _elem(kind, j, r, alphabet)


# -- generators of Gamma and Gamma' --------------------------------------------


def c_gen(p: int) -> Poly:
    if p < 0:
        return Poly.zero()
    if p == 0:
        return Poly.one()
    return Poly.gen(("c", p))


def b_gen(p: int) -> Poly:
    if p < 0:
        return Poly.zero()
    if p == 0:
        return Poly.one()
    return Poly.gen(("b", p))


def c_in_gamma_d(p: int) -> Poly:
    """The image of c_p inside Gamma': 2 b_p for p >= 1."""
    if p < 0:
        return Poly.zero()
    if p == 0:
        return Poly.one()
    return Poly.gen(("b", p), coeff=2)


# -- building blocks ------------------------------------------------------------


@lru_cache(maxsize=None)
def rh(r: int, s: int, p: int) -> Poly:
    """Type A block: sum_i h^r_i(X) e^s_{p-i}(-Y)."""
    if p < 0:
        return Poly.zero()
    out = Poly.zero()
    for i in range(p + 1):
        out = out + sym_func("h", r, i, "X") * sym_func("e", s, p - i, "-Y")
    return out


@lru_cache(maxsize=None)
def rc(r: int, s: int, p: int) -> Poly:
    """Type B/C block: sum_{i,j} c_{p-i-j} e^r_i(X) h^s_j(-Y)."""
    if p < 0:
        return Poly.zero()
    out = Poly.zero()
    for i in range(p + 1):
        ei = sym_func("e", r, i, "X")
        if ei.is_zero():
            continue
        for j in range(p - i + 1):
            hj = sym_func("h", s, j, "-Y")
            if hj.is_zero():
                continue
            out = out + c_gen(p - i - j) * ei * hj
    return out


@lru_cache(maxsize=None)
def rc_d(r: int, p: int) -> Poly:
    """Type D single block: sum_i c_{p-i} e^r_i(X), with c inside Gamma'."""
    if p < 0:
        return Poly.zero()
    out = Poly.zero()
    for i in range(p + 1):
        out = out + c_in_gamma_d(p - i) * sym_func("e", r, i, "X")
    return out


@lru_cache(maxsize=None)
def rcs_d(r: int, s: int, p: int) -> Poly:
    """Type D double block: sum_j (r c_{p-j}) h^s_j(-Y)."""
    if p < 0:
        return Poly.zero()
    out = Poly.zero()
    for j in range(p + 1):
        out = out + rc_d(r, p - j) * sym_func("h", s, j, "-Y")
    return out


@lru_cache(maxsize=None)
def rb_d(r: int, p: int) -> Poly:
    """The b-block: r c_p below the diagonal, half of it above, and the
    half-sum with e^r_r(X) on the diagonal."""
    if p < 0:
        return Poly.zero()
    if p < r:
        return rc_d(r, p)
    if p > r:
        return half() * rc_d(r, p)
    return half() * (rc_d(r, r) + sym_func("e", r, r, "X"))


@lru_cache(maxsize=None)
def rbt_d(r: int) -> Poly:
    return half() * (rc_d(r, r) - sym_func("e", r, r, "X"))


@lru_cache(maxsize=None)
def ra_d(r: int, s: int, p: int) -> Poly:
    """The a-block (1/2) r c_p + sum_{i>=1} (r c_{p-i}) h^s_i(-Y)."""
    if p < 0:
        return Poly.zero()
    out = half() * rc_d(r, p)
    for i in range(1, p + 1):
        out = out + rc_d(r, p - i) * sym_func("h", s, i, "-Y")
    return out


@lru_cache(maxsize=None)
def rb_ds(r: int, s: int, tilde: bool = False) -> Poly:
    """The flagged diagonal blocks r b^s_r and r btilde^s_r."""
    out = rbt_d(r) if tilde else rb_d(r, r)
    for i in range(1, r + 1):
        out = out + rc_d(r, r - i) * sym_func("h", s, i, "-Y")
    return out


def rchat_d(r: int, s: int, p: int, row: int) -> Poly:
    """The hatted block of the star action: the plain double block plus the
    sign-alternating correction (-1)^row e^r_r(X) e^{p-r}_{p-r}(-Y), active
    exactly when s = r - p < 0."""
    base = rcs_d(r, s, p)
    if s == r - p and s < 0:
        corr = sym_func("e", r, r, "X") * sym_func("e", p - r, p - r, "-Y")
        base = base - corr if row % 2 else base + corr
    return base


def rchat_f(r: int, s: int, p: int, f_choice: str) -> Poly:
    """The hatted block with an explicit diagonal indeterminate choice:
    f_choice 'b' adds e^r_r(X), 'bt' subtracts it, 'half' adds nothing."""
    base = rcs_d(r, s, p)
    if s == r - p and s < 0:
        if f_choice == "b":
            delta = sym_func("e", r, r, "X")
        elif f_choice == "bt":
            delta = -sym_func("e", r, r, "X")
        elif f_choice == "half":
            delta = Poly.zero()
        else:
            raise ValueError(f"unknown f choice {f_choice!r}")
        base = base + delta * sym_func("e", p - r, p - r, "-Y")
    return base


def f_diag(r: int, f_choice: str) -> Poly:
    """The degree-r diagonal indeterminate f_r."""
    if f_choice == "b":
        return rb_d(r, r)
    if f_choice == "bt":
        return rbt_d(r)
    if f_choice == "half":
        return half() * rc_d(r, r)
    raise ValueError(f"unknown f choice {f_choice!r}")


def f_diag_s(r: int, s: int, f_choice: str) -> Poly:
    """f^s_r = f_r + sum_{j=1}^r (r c_{r-j}) h^s_j(-Y)."""
    out = f_diag(r, f_choice)
    for j in range(1, r + 1):
        out = out + rc_d(r, r - j) * sym_func("h", s, j, "-Y")
    return out


def building_block(kind: str, r: int, s: int, p: int) -> Poly:
    """Uniform access used by the CLI: kind 'rh' or 'rc'."""
    if kind == "rh":
        return rh(r, s, p)
    if kind == "rc":
        return rc(r, s, p)
    raise ValueError(f"unknown block kind {kind!r}")


# -- Weyl group actions ----------------------------------------------------------


def _swap_xy(var: str, i: int):
    def fn(g):
        if g[0] == var:
            if g[1] == i:
                return ((var, i + 1), 1)
            if g[1] == i + 1:
                return ((var, i), 1)
        return (g, 1)
    return fn


@lru_cache(maxsize=None)
def _s0_c_image(p: int) -> Poly:
    out = c_gen(p)
    for j in range(1, p + 1):
        out = out + 2 * Poly.gen(("x", 1), exp=j) * c_gen(p - j)
    return out


@lru_cache(maxsize=None)
def _sbox_b_image(p: int) -> Poly:
    x1, x2 = Poly.gen(("x", 1)), Poly.gen(("x", 2))
    series = Poly.zero()
    for j in range(p):
        hj = Poly.zero()
        for a in range(j + 1):
            hj = hj + (x1 ** a) * (x2 ** (j - a))
        series = series + hj * c_in_gamma_d(p - 1 - j)
    return b_gen(p) + (x1 + x2) * series


def weyl_act(i: int, f: Poly, flavor: str, side: str = "x") -> Poly:
    """The action of s_i (or its left-hand conjugate for side 'y')."""
    if side == "y":
        return phi(weyl_act(i, phi(f), flavor, "x"))
    if i >= 1:
        return f.map_generators(_swap_xy("x", i))
    if flavor == "BC":
        flipped = f.map_generators(lambda g: (g, -1) if g == ("x", 1) else (g, 1))
        images = {("c", p): _s0_c_image(p) for p in _gens_present(f, "c")}
        return flipped.substitute(images) if images else flipped
    if flavor == "D":
        def fn(g):
            if g == ("x", 1):
                return (("x", 2), -1)
            if g == ("x", 2):
                return (("x", 1), -1)
            return (g, 1)
        flipped = f.map_generators(fn)
        images = {("b", p): _sbox_b_image(p) for p in _gens_present(f, "b")}
        return flipped.substitute(images) if images else flipped
    raise ValueError("index 0 needs flavor 'BC' or 'D'")


def _gens_present(f: Poly, kind: str) -> set[int]:
    out = set()
    for m in f.terms:
        for g, _ in m:
            if g[0] == kind:
                out.add(g[1])
    return out


def phi(f: Poly) -> Poly:
    """The involution x_j -> -y_j, y_j -> -x_j fixing all ring generators."""
    def fn(g):
        if g[0] == "x":
            return (("y", g[1]), -1)
        if g[0] == "y":
            return (("x", g[1]), -1)
        return (g, 1)
    return f.map_generators(fn)


# -- divided differences -----------------------------------------------------------


def _divide_linear(f: Poly, var: tuple, shift: Poly) -> Poly:
    """Exact division of f by (var - shift), var a degree-one generator."""
    parts = f.decompose_by(var)
    if not parts:
        return Poly.zero()
    top = max(parts)
    quot: dict[int, Poly] = {}
    carry = Poly.zero()
    for d in range(top, 0, -1):
        coeff = parts.get(d, Poly.zero()) + carry
        quot[d - 1] = coeff
        carry = coeff * shift
    remainder = parts.get(0, Poly.zero()) + carry
    if not remainder.is_zero():
        raise ExactDivisionError("nonzero remainder in divided difference")
    out = Poly.zero()
    for d, coeff in quot.items():
        out = out + Poly.gen(var, exp=d) * coeff if d else out + coeff
    return out


def ddiff(i: int, f: Poly, flavor: str, side: str = "x") -> Poly:
    """Divided difference for s_i on the chosen side.

    x-side denominators: x_i - x_{i+1} for i >= 1, -2 x_1 for s_0 in types
    B/C, -(x_1 + x_2) for the box node in type D.
    """
    if side == "y":
        return phi(ddiff(i, phi(f), flavor, "x"))
    g = f - weyl_act(i, f, flavor, "x")
    if g.is_zero():
        return Poly.zero()
    if i >= 1:
        return _divide_linear(g, ("x", i), Poly.gen(("x", i + 1)))
    if flavor == "BC":
        quot = _divide_linear(g, ("x", 1), Poly.zero())
        return quot * Fraction(-1, 2)
    if flavor == "D":
        quot = _divide_linear(g, ("x", 1), -Poly.gen(("x", 2)))
        return -quot
    raise ValueError("index 0 needs flavor 'BC' or 'D'")


# -- equality modulo the relations ----------------------------------------------


@lru_cache(maxsize=None)
def q_function(p: int, m: int) -> Poly:
    """Q_p(z_1, ..., z_m), coefficient of t^p in prod (1+z_i t)/(1-z_i t)."""
    series = [Poly.one()] + [Poly.zero()] * p
    for i in range(1, m + 1):
        zi = Poly.gen(("z", i))
        # multiply by 1 + 2 z t + 2 z^2 t^2 + ...
        zpow = [Poly.one()]
        for _ in range(p):
            zpow.append(zpow[-1] * zi)
        new = []
        for d in range(p + 1):
            acc = series[d]
            for k in range(1, d + 1):
                acc = acc + 2 * zpow[k] * series[d - k]
            new.append(acc)
        series = new
    return series[p]


def specialize(f: Poly, flavor: str, m: int) -> Poly:
    """Send c_p (or b_p) to the Q-polynomials in z_1..z_m; exact expansion."""
    if flavor == "A":
        return f
    if flavor == "BC":
        images = {("c", p): q_function(p, m) for p in _gens_present(f, "c")}
    else:
        images = {("b", p): half() * q_function(p, m)
                  for p in _gens_present(f, "b")}
    return f.substitute(images) if images else f


def _random_assignment(f: Poly, flavor: str, m: int, rng: random.Random,
                       prime: int):
    """Random point respecting the relations: z-values feed the Q-series."""
    zvals = [rng.randrange(1, prime) for _ in range(m)]
    deg = f.total_degree()
    qvals = q_series_values(tuple(zvals), deg, prime)
    inv2 = pow(2, -1, prime)
    values: dict = {}

    def value_of(g):
        if g in values:
            return values[g]
        if g[0] == "c":
            v = qvals[g[1]] if g[1] < len(qvals) else 0
        elif g[0] == "b":
            v = qvals[g[1]] * inv2 % prime if g[1] < len(qvals) else 0
        else:
            v = rng.randrange(0, prime)
        values[g] = v
        return v

    return value_of


def q_series_values(zvals: tuple[int, ...], deg: int, prime: int) -> list[int]:
    series = [1] + [0] * deg
    for z in zvals:
        zpow = [1]
        for _ in range(deg):
            zpow.append(zpow[-1] * z % prime)
        new = [0] * (deg + 1)
        for d in range(deg + 1):
            acc = series[d]
            for k in range(1, d + 1):
                acc += 2 * zpow[k] * series[d - k]
            new[d] = acc % prime
        series = new
    return series


def eq_mod_relations(ctx: RelationContext, f: Poly, g: Poly,
                     rng: random.Random | None = None,
                     trials: int | None = None) -> bool:
    """Equality in Gamma[X,Y] / Gamma'[X,Y] (plain equality in type A).

    Exact mode (ctx.prime == 0) expands the Q-specialisation symbolically.
    Randomized mode evaluates at `trials` independent points of the prime
    field; with the default two trials and degrees below 2^20 the
    false-match probability is under 2^-80 by Schwartz-Zippel.
    """
    diff = f - g
    if diff.is_zero():
        return True
    if ctx.flavor == "A":
        return False
    deg = diff.total_degree()
    if deg > ctx.num_z:
        raise DegreeBoundError(
            f"degree {deg} exceeds the faithful bound {ctx.num_z}")
    if ctx.prime == 0:
        return specialize(diff, ctx.flavor, ctx.num_z).is_zero()
    rng = rng or random.Random(0)
    if trials is None:
        trials = required_trials(deg, ctx.prime)
    for _ in range(trials):
        value_of = _random_assignment(diff, ctx.flavor, ctx.num_z, rng, ctx.prime)
        if diff.evaluate_mod(value_of, ctx.prime) != 0:
            return False
    return True


def required_trials(deg: int, prime: int, target_bits: int = 80) -> int:
    """Trials so that (deg/prime)^trials < 2^-target_bits."""
    import math
    if deg <= 0:
        return 1
    per = math.log2(prime) - math.log2(deg)
    return max(2, math.ceil(target_bits / per))


def context_for(lie_type: str, degree: int, prime: int = DEFAULT_PRIME,
                ) -> RelationContext:
    flavor = {"A": "A", "B": "BC", "C": "BC", "D": "D"}[lie_type]
    return RelationContext(flavor=flavor, num_z=max(degree, 1), prime=prime)
