"""Raising operator expansions and the flagged formulas they drive.

A raising operator monomial R = prod R_ij^{n_ij} acts on an integer vector by
adding the column sums of its exponent matrix at the first index and
subtracting at the second.  The expression attached to a valid set of pairs
DD is

    R^DD = prod_{i<j} (1 - R_ij) * prod_{(i,j) in DD} (1 + R_ij)^{-1},

expanded here into finitely many collected terms: a pair outside DD
contributes exponents 0 or 1 with signs +1, -1, a pair inside DD contributes
exponent k with coefficient 2(-1)^k for k >= 1.  Only pairs with both rows
inside the shape matter, and exponents are bounded by the requirement that no
row index may go negative (any such term dies on the polynomial side where
all blocks with negative subscript vanish).

On top of the expansion sit the flagged Schubert formulas for amenable
elements: Jacobi-Trudi style products of h-blocks in type A, c-blocks in
types B/C, and the type-D star action, which substitutes hatted, diagonal or
halved blocks row by row depending on the term's support.  The same engine
produces abstract flagged theta and eta polynomials in formal families
c[k,p], b[k], bt[k] with deformation variables t_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .poly import Poly, half, prod
from .ring import (
    ra_d, rb_ds, rc, rchat_d, rcs_d, rh, sym_func,
)
from .words import SignedWord, ShapeData, shape
from .amenable import is_amenable


class NotAmenableError(ValueError):
    """Raised when a flagged formula is requested for an element outside the
    class where it is valid (non-amenable, or in type D not anchored)."""


# -- raising operators ------------------------------------------------------------


@dataclass(frozen=True)
class RaisingTerm:
    """One collected monomial of an R^DD expansion."""

    coeff: int
    exponents: tuple[tuple[int, int, int], ...]  # ((i, j, n_ij), ...), n_ij > 0
    shifted: tuple[int, ...]                     # the image R . lambda

    def support(self, d: int) -> frozenset[int]:
        """All row indices of pairs with second index at most d."""
        out = set()
        for i, j, _ in self.exponents:
            if j <= d:
                out.add(i)
                out.add(j)
        return frozenset(out)

    def touches(self, row: int) -> bool:
        return any(i == row or j == row for i, j, _ in self.exponents)


def is_valid_pair_set(pairs: Iterable[tuple[int, int]]) -> bool:
    """Order ideal test: closed under shrinking either coordinate."""
    ps = set(pairs)
    for (i, j) in ps:
        for i2 in range(1, i + 1):
            for j2 in range(i2 + 1, j + 1):
                if (i2, j2) not in ps:
                    return False
    return True


def expand_raising(lam: tuple[int, ...], denom: frozenset) -> list[RaisingTerm]:
    """All collected terms of R^denom applied to lam with no negative rows.

    Columns are processed right to left; when column j is reached the raises
    into row j from previously chosen pairs (j, k) are known, so the total
    lowering of row j is capped at lam_j plus that gain.  Terms are returned
    sorted by exponent matrix for reproducibility.
    """
    ell = len(lam)
    terms: list[RaisingTerm] = []
    gain = [0] * (ell + 1)  # gain[i]: raising into row i chosen so far
    expo: dict[tuple[int, int], int] = {}

    def column(j: int):
        if j == 1:
            rho = []
            coeff = 1
            for i in range(1, ell + 1):
                lowered = sum(expo.get((h, i), 0) for h in range(1, i))
                rho.append(lam[i - 1] + gain[i] - lowered)
            for (i, jj), n in expo.items():
                if (i, jj) in denom:
                    coeff *= 2 * (-1) ** n
                else:
                    coeff *= -1 if n else 1
            exps = tuple(sorted((i, jj, n) for (i, jj), n in expo.items() if n))
            terms.append(RaisingTerm(coeff, exps, tuple(rho)))
            return
        budget = lam[j - 1] + gain[j]

        def distribute(i: int, remaining: int):
            if i == j:
                column(j - 1)
                return
            cap = remaining if (i, j) in denom else min(1, remaining)
            for n in range(cap + 1):
                if n:
                    expo[(i, j)] = n
                    gain[i] += n
                distribute(i + 1, remaining - n)
                if n:
                    del expo[(i, j)]
                    gain[i] -= n

        distribute(1, budget)

    if ell == 0:
        return [RaisingTerm(1, (), ())]
    column(ell)
    terms.sort(key=lambda t: t.exponents)
    return terms


def denominator_pairs_all(ell: int) -> frozenset:
    return frozenset((i, j) for i in range(1, ell + 1)
                     for j in range(i + 1, ell + 1))


# -- flagged formulas, types A, B, C ----------------------------------------------


def _require_amenable(w: SignedWord):
    if not is_amenable(w):
        raise NotAmenableError(f"{w.lie_type} word {w} is not amenable")


def apply_formula(lie_type: str, w: SignedWord,
                  data: Optional[ShapeData] = None,
                  check: bool = True) -> Poly:
    """Flagged Schubert formula for an amenable element of type A, B or C.

    Type A: R^empty applied to h-blocks with the right and left flags.
    Type C: R^D(w) applied to c-blocks.  Type B: the type C value times
    2^{-s(w)} with s(w) the number of signs.
    """
    if lie_type == "D" or w.lie_type == "D":
        raise ValueError("use apply_formula_d for type D")
    if check:
        _require_amenable(w)
    data = data or shape(w)
    block = rh if lie_type == "A" else rc
    denom = frozenset() if lie_type == "A" else frozenset(data.denom_set)
    total = Poly.zero()
    for term in expand_raising(data.lam, denom):
        if any(r < 0 for r in term.shifted):
            continue
        factor = prod(
            block(data.f_flag[i], data.g_flag[i], term.shifted[i])
            for i in range(data.ell)
        )
        total = total + term.coeff * factor
    if lie_type == "B":
        total = total * Fraction(1, 2 ** w.neg_count())
    return total


# -- the type D star action ---------------------------------------------------------


def star_term(data: ShapeData, term: RaisingTerm,
              alpha: tuple[int, ...], upsilon: tuple[int, ...]) -> Poly:
    """Value of one collected raising term under the star action.

    Row conventions for a shape of type 0: every row carries a hatted block
    except the rows in the m-support of the term.  For positive types row
    m+1 carries the a-block at the shifted index when the term touches it
    and otherwise the diagonal b-block (type 1) or btilde-block (type 2) at
    the unshifted index; rows past m+1 stay plain.
    """
    m = data.m
    rho = term.shifted
    if any(r < 0 for r in rho):
        return Poly.zero()
    supp = term.support(m)
    factors = []
    for i in range(1, data.ell + 1):
        a, u, r = alpha[i - 1], upsilon[i - 1], rho[i - 1]
        if data.d_type == 0 or i <= m:
            if i in supp:
                factors.append(rcs_d(a, u, r))
            else:
                factors.append(rchat_d(a, u, r, i))
        elif i == m + 1:
            if term.touches(m + 1):
                factors.append(ra_d(a, u, r))
            else:
                if a != data.lam[i - 1]:
                    raise ValueError(
                        "diagonal block needs alpha_{m+1} = lambda_{m+1}")
                factors.append(rb_ds(a, u, tilde=(data.d_type == 2)))
        else:
            factors.append(rcs_d(a, u, r))
    return prod(factors)


def apply_formula_d(w: SignedWord, data: Optional[ShapeData] = None,
                    check: bool = True,
                    alpha: Optional[tuple[int, ...]] = None,
                    upsilon: Optional[tuple[int, ...]] = None) -> Poly:
    """Flagged eta-type formula 2^{-len(mu)} R^D(w) star (hatted c-blocks).

    alpha and upsilon default to the right and left flags; the factorial form
    of a leading element is obtained by passing upsilon = beta.
    """
    if w.lie_type != "D":
        raise ValueError("apply_formula_d needs a type D word")
    if check:
        _require_amenable(w)
    data = data or shape(w)
    alpha = alpha or data.f_flag
    upsilon = upsilon or data.g_flag
    total = Poly.zero()
    for term in expand_raising(data.lam, frozenset(data.denom_set)):
        value = star_term(data, term, alpha, upsilon)
        if not value.is_zero():
            total = total + term.coeff * value
    return total * Fraction(1, 2 ** data.m)


# -- abstract flagged theta and eta polynomials --------------------------------------


def _fc_token(k: int, p: int) -> Poly:
    if p < 0:
        return Poly.zero()
    if p == 0:
        return Poly.one()
    return Poly.gen(("fc", k, p))


def _fc_token_eta(k: int, p: int) -> Poly:
    """c[k,p] expressed through the eta generators b[k,p] and bt[k]."""
    if p < 0:
        return Poly.zero()
    if p == 0:
        return Poly.one()
    if p < k:
        return Poly.gen(("fb", k, p))
    if p == k:
        return Poly.gen(("fb", k, k)) + Poly.gen(("fbt", k))
    return Poly.gen(("fb", k, p), coeff=2)


def _habstract(s: int, j: int, with_t: bool) -> Poly:
    if not with_t:
        return Poly.one() if j == 0 else Poly.zero()
    return sym_func("h", s, j, "-t")


def _eabstract(r: int, j: int, with_t: bool) -> Poly:
    if not with_t:
        return Poly.one() if j == 0 else Poly.zero()
    return sym_func("e", r, j, "-t")


def theta_abstract(w: SignedWord, with_t: bool = True,
                   factorial: bool = False, check: bool = True) -> Poly:
    """Flagged double theta polynomial in the families c[k,p] and t_i.

    With factorial=True the left flag is replaced by beta, the classical
    factorial form valid for leading elements.
    """
    if w.lie_type not in ("B", "C"):
        raise ValueError("theta polynomials live in types B/C")
    if check:
        _require_amenable(w)
    data = shape(w)
    upsilon = data.beta if factorial else data.g_flag
    total = Poly.zero()
    for term in expand_raising(data.lam, frozenset(data.denom_set)):
        if any(r < 0 for r in term.shifted):
            continue
        factor = Poly.one()
        for i in range(data.ell):
            k, s, p = data.f_flag[i], upsilon[i], term.shifted[i]
            block = Poly.zero()
            for j in range(p + 1):
                block = block + _fc_token(k, p - j) * _habstract(s, j, with_t)
            factor = factor * block
        total = total + term.coeff * factor
    return total


def eta_abstract(w: SignedWord, with_t: bool = True,
                 factorial: bool = False, check: bool = True) -> Poly:
    """Flagged double eta polynomial in b[k,p], bt[k] and t_i."""
    if w.lie_type != "D":
        raise ValueError("eta polynomials live in type D")
    if check:
        _require_amenable(w)
    data = shape(w)
    alpha = data.f_flag
    upsilon = data.beta if factorial else data.g_flag

    def cblock(k, s, p):
        out = Poly.zero()
        for j in range(p + 1):
            out = out + _fc_token_eta(k, p - j) * _habstract(s, j, with_t)
        return out

    def chat(k, s, p, row):
        out = cblock(k, s, p)
        if s == k - p and s < 0:
            tok = Poly.gen(("fbt", k), coeff=2) if row % 2 else \
                Poly.gen(("fb", k, k), coeff=2)
            out = out + (tok - _fc_token_eta(k, k)) * _eabstract(p - k, p - k, with_t)
        return out

    def ablock(k, s, p):
        out = half() * _fc_token_eta(k, p)
        for j in range(1, p + 1):
            out = out + _fc_token_eta(k, p - j) * _habstract(s, j, with_t)
        return out

    def bblock(k, s, tilde):
        out = Poly.gen(("fbt", k)) if tilde else Poly.gen(("fb", k, k))
        for j in range(1, k + 1):
            out = out + _fc_token_eta(k, k - j) * _habstract(s, j, with_t)
        return out

    m = data.m
    total = Poly.zero()
    for term in expand_raising(data.lam, frozenset(data.denom_set)):
        rho = term.shifted
        if any(r < 0 for r in rho):
            continue
        supp = term.support(m)
        factor = Poly.one()
        for i in range(1, data.ell + 1):
            k, s, p = alpha[i - 1], upsilon[i - 1], rho[i - 1]
            if data.d_type == 0 or i <= m:
                blk = cblock(k, s, p) if i in supp else chat(k, s, p, i)
            elif i == m + 1:
                if term.touches(m + 1):
                    blk = ablock(k, s, p)
                else:
                    blk = bblock(k, s, tilde=(data.d_type == 2))
            else:
                blk = cblock(k, s, p)
            factor = factor * blk
        total = total + term.coeff * factor
    return total * Fraction(1, 2 ** m)


def theta_eta_abstract(w: SignedWord, flavor: str, with_t: bool = True,
                       factorial: bool = False) -> Poly:
    if flavor == "theta":
        return theta_abstract(w, with_t=with_t, factorial=factorial)
    if flavor == "eta":
        return eta_abstract(w, with_t=with_t, factorial=factorial)
    raise ValueError(f"unknown flavor {flavor!r}")
