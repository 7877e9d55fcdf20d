"""Verification harness: oracle-vs-formula sweeps, lemma suites, and the
counterexample reproductions, with machine-readable reports.

Default mode is randomized: formulas and oracles are evaluated over the
prime field F_p (p = 2^61 - 1) at points that satisfy the defining relations,
so each trial bounds the false-match probability by degree/p; two trials take
it below 2^-80 for every degree reached here.  Exact mode expands the
Q-function specialisation symbolically.  Reports echo their configuration
(seed, prime, trials) so any run can be reproduced verbatim.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field, asdict
from fractions import Fraction

from .poly import Poly, half
from .ring import (
    DEFAULT_PRIME, RelationContext, c_gen, b_gen, context_for,
    ddiff, eq_mod_relations, f_diag, f_diag_s, phi, ra_d, rb_ds, rc, rc_d,
    rchat_f, rcs_d, rh, specialize, sym_func,
)
from .words import SignedWord, all_elements, shape, longest_element
from .amenable import amenable_decompose, is_amenable
from .formulas import (
    RaisingTerm, apply_formula, apply_formula_d, expand_raising,
    is_valid_pair_set,
)
from .oracle import Oracle, all_schubert_streaming
from .pointwise import build_table, eval_formula

SCHEMA_VERSION = 1


@dataclass
class Case:
    lie_type: str
    word: str
    equal: bool
    mode: str
    trials: int
    seed: int
    elapsed_ms: float
    prime: int = 0
    note: str = ""
    detail: dict = field(default_factory=dict)


@dataclass
class Report:
    suite: str
    config: dict
    cases: list = field(default_factory=list)

    def add(self, case: Case):
        self.cases.append(case)

    @property
    def failures(self):
        return [c for c in self.cases if not c.equal]

    def summary(self) -> dict:
        return {
            "total": len(self.cases),
            "equal": sum(1 for c in self.cases if c.equal),
            "unequal": len(self.failures),
        }

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "config": self.config,
            "summary": self.summary(),
            "cases": [asdict(c) for c in self.cases],
        }

    def write_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1)

    def print_lines(self, out=print):
        s = self.summary()
        out(f"suite {self.suite}: {s['equal']}/{s['total']} equal")
        for c in self.failures:
            out(f"  UNEQUAL {c.lie_type} [{c.word}] ({c.note})")


# -- the main sweeps ------------------------------------------------------------


def amenable_elements(lie_type: str, n: int, anchored: bool = True):
    eff = "C" if lie_type == "B" else lie_type
    return [w for w in all_elements(eff, n)
            if is_amenable(w, anchored=anchored)]


def sweep(lie_type: str, n: int, scope: str = "all", sample: int | None = None,
          mode: str = "randomized", seed: int = 0, prime: int = DEFAULT_PRIME,
          trials: int = 2, words: list | None = None,
          anchored: bool = True) -> Report:
    """Check the flagged formula against the oracle over amenable elements.

    scope "all" sweeps every amenable element of rank n; a sample size
    restricts to a seeded random subset; explicit words may be supplied.
    In randomized mode each trial uses an independent relation-respecting
    point of the prime field.
    """
    rng = random.Random(seed)
    report = Report(
        suite=f"sweep-{lie_type}{n}",
        config={"lie_type": lie_type, "n": n, "scope": scope, "sample": sample,
                "mode": mode, "seed": seed, "prime": prime, "trials": trials,
                "anchored": anchored},
    )
    if words is not None:
        targets = words
    else:
        targets = amenable_elements(lie_type, n, anchored=anchored)
        if scope == "sample" or sample:
            k = min(sample or len(targets), len(targets))
            targets = rng.sample(targets, k)

    if mode == "randomized":
        tables = [build_table(lie_type, n, rng, prime) for _ in range(trials)]
        for w in targets:
            t0 = time.perf_counter()
            data = shape(w)
            ok = True
            for tab in tables:
                fv = eval_formula(tab.base_point(), lie_type, data,
                                  w.neg_count() if lie_type == "B" else 0)
                ov = tab.value(w, scale_b=(lie_type == "B"))
                if fv != ov:
                    ok = False
                    break
            report.add(Case(lie_type, str(w), ok, "randomized", trials, seed,
                            (time.perf_counter() - t0) * 1e3, prime))
    else:
        oracle = Oracle()
        for w in targets:
            t0 = time.perf_counter()
            if lie_type == "A":
                f = apply_formula("A", w, check=False)
                o = oracle.schubert("A", w)
                ok = f == o
                deg = 0
            else:
                if lie_type == "D":
                    f = apply_formula_d(w, check=False)
                else:
                    f = apply_formula(lie_type, w, check=False)
                o = oracle.schubert(lie_type, w)
                deg = max(f.total_degree(), o.total_degree())
                ctx = context_for(lie_type, deg, prime=0)
                ok = eq_mod_relations(ctx, f, o)
            case = Case(lie_type, str(w), ok, "exact", 1, seed,
                        (time.perf_counter() - t0) * 1e3, 0)
            if not ok:
                case.detail = {"formula": _clip(f), "oracle": _clip(o)}
            report.add(case)
    return report


def _clip(p: Poly, max_deg: int = 2) -> str:
    """Low-degree rendering of a polynomial for failure diagnosis."""
    small = Poly({m: c for m, c in p.terms.items()
                  if sum(e for _, e in m) <= max_deg})
    return f"(deg<={max_deg}) {small}"


def excluded_type_d(n: int) -> list[SignedWord]:
    """Elements amenable under the printed definitions but outside the
    anchored class where the type D formula holds."""
    lit = set(w.entries for w in amenable_elements("D", n, anchored=False))
    anc = set(w.entries for w in amenable_elements("D", n, anchored=True))
    return [SignedWord("D", e) for e in sorted(lit - anc)]


# -- lemma suites -----------------------------------------------------------------


def _report_case(report, name, ok, t0, detail=None):
    report.add(Case("-", name, ok, "exact", 1, 0,
                    (time.perf_counter() - t0) * 1e3,
                    detail=detail or {}))


def _pairs_from_thresholds(t):
    return frozenset((i, j) for i in range(1, len(t) + 1)
                     for j in range(i + 1, t[i - 1] + 1))


def _rand_thresholds(rng, ell):
    """Weakly decreasing row thresholds encode exactly the order ideals."""
    t = []
    cur = ell
    for i in range(1, ell):
        cur = rng.randint(min(i, cur), cur)
        t.append(cur)
    return t


def _rand_pairs_A(rng, j, ell, tries=200):
    """Valid pairs with (j,j+1) absent and (h,j) <-> (h,j+1) for h < j:
    rows j, j+1 empty and no threshold stopping exactly at j."""
    for _ in range(tries):
        t = _rand_thresholds(rng, ell)
        if j <= ell - 1 and t[j - 1] > j:
            continue
        if j + 1 <= ell - 1 and t[j] > j + 1:
            continue
        if any(t[h - 1] == j for h in range(1, j)):
            continue
        return _pairs_from_thresholds(t)
    return frozenset()


def _rand_pairs_C(rng, j, ell, tries=200):
    """Valid pairs with (j,j+1) present and (j,h) <-> (j+1,h) for h > j+1:
    t_j >= j+1, and t_j = t_{j+1} unless t_j = j+1."""
    for _ in range(tries):
        t = _rand_thresholds(rng, ell)
        if t[j - 1] < j + 1:
            continue
        tj1 = t[j] if j + 1 <= ell - 1 else j + 1
        if t[j - 1] > j + 1 and t[j - 1] != tj1:
            continue
        return _pairs_from_thresholds(t)
    t = [max(i, j + 1 if i == j else i) for i in range(1, ell)]
    # minimal fallback: exactly the closure of (j, j+1)
    t = [j + 1 if i <= j else i for i in range(1, ell)]
    return _pairs_from_thresholds(t)


def _formal_rows_value(term: RaisingTerm, fams, ell):
    """Product of formal row tokens s[fam, index] at the shifted index."""
    out = Poly.one()
    for i in range(1, ell + 1):
        p = term.shifted[i - 1]
        if p < 0:
            return Poly.zero()
        if p == 0:
            continue
        out = out * Poly.gen(("s", fams[i - 1], p))
    return out


def _expand_formal(lam, denom, fams):
    total = Poly.zero()
    for term in expand_raising(tuple(lam), denom):
        total = total + term.coeff * _formal_rows_value(term, fams, len(lam))
    return total


def _star_rows_value(term, fams, hat_rows, d, ell, subs=None):
    """Star action on hatted formal rows: outside the support of the term a
    hatted row contributes s + (-1)^i u.  The sign alternates with the row
    position, so two adjacent rows sharing one family hat with opposite
    signs."""
    supp = term.support(d)
    out = Poly.one()
    for i in range(1, ell + 1):
        p = term.shifted[i - 1]
        if p < 0:
            return Poly.zero()
        fam = fams[i - 1]
        sign = 1 if i % 2 == 0 else -1
        hatted = i not in supp and hat_rows[i - 1] and fam <= d
        if subs and fam in subs:
            s_val, u_val = subs[fam]
            base = s_val(p)
            if hatted:
                base = base + sign * u_val(p)
        else:
            if p == 0:
                base = Poly.one()
            else:
                base = Poly.gen(("s", fam, p))
                if hatted:
                    base = base + sign * Poly.gen(("u", fam, p))
        out = out * base
    return out


def _expand_star(lam, denom, fams, hat_rows, d, subs=None):
    total = Poly.zero()
    for term in expand_raising(tuple(lam), denom):
        total = total + term.coeff * _star_rows_value(
            term, fams, hat_rows, d, len(lam), subs)
    return total


def lemma_suite(seed: int = 0, trials: int = 100,
                prime: int = DEFAULT_PRIME) -> Report:
    """Randomized instances of the displayed operator and commutation
    identities; exact where they hold exactly, modulo relations otherwise."""
    rng = random.Random(seed)
    report = Report(suite="lemmas",
                    config={"seed": seed, "trials": trials, "prime": prime})

    # block derivative tables (types A and B/C and D)
    t0 = time.perf_counter()
    ok = True
    for _ in range(trials):
        p = rng.randint(0, 4)
        r = rng.randint(-4, 4)
        s = rng.randint(-3, 3)
        i = rng.randint(1, 4)
        f = rh(r, s, p)
        if ddiff(i, f, "A") != (rh(r + 1, s, p - 1) if abs(r) == i else Poly.zero()):
            ok = False
        if ddiff(i, f, "A", side="y") != (
                rh(r, s - 1, p - 1) if abs(s) == i else Poly.zero()):
            ok = False
    _report_case(report, "h-block derivatives", ok, t0)

    t0 = time.perf_counter()
    ok = True
    for _ in range(trials):
        p = rng.randint(0, 4)
        r = rng.randint(0, 3)
        s = rng.randint(-3, 3)
        i = rng.randint(0, 3)
        f = rc(r, s, p)
        if ddiff(i, f, "BC") != (rc(r - 1, s, p - 1) if abs(r) == i else Poly.zero()):
            ok = False
        if ddiff(i, f, "BC", side="y") != (
                rc(r, s + 1, p - 1) if abs(s) == i else Poly.zero()):
            ok = False
    _report_case(report, "c-block derivatives", ok, t0)

    t0 = time.perf_counter()
    ok = True
    for _ in range(trials):
        # two-row Leibnitz collapse d^y_i (rc^{-i}_p sc^i_q)
        i = rng.randint(1, 3)
        r, s = rng.randint(0, 3), rng.randint(0, 3)
        p, q = rng.randint(0, 3), rng.randint(0, 3)
        lhs = ddiff(i, rc(r, -i, p) * rc(s, i, q), "BC", side="y")
        rhs = rc(r, -i + 1, p - 1) * rc(s, i + 1, q) \
            + rc(r, -i + 1, p) * rc(s, i + 1, q - 1)
        if lhs != rhs:
            ok = False
    _report_case(report, "two-row y-derivative", ok, t0)

    t0 = time.perf_counter()
    ok = True
    for _ in range(trials):
        p = rng.randint(0, 4)
        r = rng.randint(0, 3)
        q = rng.randint(-3, 3)
        i = rng.randint(1, 3)
        f = rcs_d(r, q, p)
        if ddiff(i, f, "D") != (rcs_d(r - 1, q, p - 1) if r == i else Poly.zero()):
            ok = False
        if ddiff(i, f, "D", side="y") != (
                rcs_d(r, q + 1, p - 1) if abs(q) == i else Poly.zero()):
            ok = False
        # the box case table on the y side
        box = ddiff(0, f, "D", side="y")
        if q == 1:
            want = rcs_d(r, 2, p - 1)
        elif q == 0:
            want = 2 * rcs_d(r, 2, p - 1)
        elif q == -1:
            want = 2 * rcs_d(r, 1, p - 1) - rc_d(r, p - 1)
        else:
            want = Poly.zero()
        if box != want:
            ok = False
    _report_case(report, "d-block derivatives with box cases", ok, t0)

    t0 = time.perf_counter()
    ok = True
    for _ in range(trials):
        # hatted diagonal blocks: the y derivative fires at i = p - r and the
        # x derivative at i = r (the printed x case has these two indices
        # interchanged; the i = r rule is forced by the plain block table)
        r = rng.randint(1, 3)
        p = r + rng.randint(1, 3)
        choice = rng.choice(["b", "bt", "half"])
        i = p - r
        f = rchat_f(r, r - p, p, choice)
        dx = ddiff(r, f, "D")
        if r == 1:
            want_x = Poly.zero()
            if p == 2:
                want_x = 2 * phi(f_diag(1, choice))
            else:
                f0 = {"b": 1, "bt": 0}.get(choice)
                corr = Poly.zero() if f0 is None else \
                    (2 * f0 - 1) * sym_func("e", p - 1, p - 1, "-Y")
                want_x = rcs_d(0, 1 - p, p - 1) + corr
        else:
            want_x = rchat_f(r - 1, r - p, p - 1, choice)
        if dx != want_x:
            ok = False
        dy = ddiff(i, f, "D", side="y")
        want_y = (2 * f_diag(r, choice) if i == 1
                  else rchat_f(r, r - p + 1, p - 1, choice))
        if dy != want_y:
            ok = False
        dbox = ddiff(0, f, "D", side="y")
        if i == 1:
            ft = rc_d(r, r) - 2 * f_diag(r, choice) + f_diag_s(r, 1, choice)
            want_box = 2 * ft
        else:
            want_box = Poly.zero()
        if dbox != want_box:
            ok = False
        for j in (i + 1, i + 2):
            if j >= 1 and j != i and j != r:
                if ddiff(j, f, "D", side="y") != Poly.zero():
                    ok = False
                if ddiff(j, f, "D") != Poly.zero():
                    ok = False
    _report_case(report, "hatted block derivatives", ok, t0)

    # alternating (commutation) lemmas
    t0 = time.perf_counter()
    ok = True
    for _ in range(trials):
        ell = rng.randint(2, 4)
        j = rng.randint(1, ell - 1)
        lam = [rng.randint(0, 3) for _ in range(j - 1)]
        mu = [rng.randint(0, 3) for _ in range(ell - j - 1)]
        r, s = rng.randint(-2, 3), rng.randint(-2, 3)
        denom = _rand_pairs_A(rng, j, ell)
        fams = _merged_fams(ell, j)
        lhs = _expand_formal(lam + [r, s] + mu, denom, fams)
        rhs = _expand_formal(lam + [s - 1, r + 1] + mu, denom, fams)
        if lhs != -rhs:
            ok = False
        # the z-deformation variant on row j
        z = Poly.gen(("aux", "z", 1))
        lhsz = _expand_formal_tau(lam + [r, r] + mu, denom, fams, j, z)
        rhsz = _expand_formal(lam + [r, r] + mu, denom, fams)
        if lhsz != rhsz:
            ok = False
    _report_case(report, "alternating rows, free case", ok, t0)

    t0 = time.perf_counter()
    ok = True
    ctx = RelationContext("BC", 14, prime)
    for _ in range(max(trials // 4, 25)):
        ell = rng.randint(2, 3)
        j = rng.randint(1, ell - 1)
        r0, s0 = rng.randint(0, 1), rng.randint(0, 1)
        k = r0 + s0
        lam = [rng.randint(0, 2) for _ in range(j - 1)]
        mu = [rng.randint(0, 2) for _ in range(ell - j - 1)]
        r = rng.randint(2 * k + 1 - 3, 2 * k + 3)
        s = 2 * k + 1 - r + rng.randint(0, 2)  # ensure r+s > 2k
        denom = _rand_pairs_C(rng, j, ell)
        fams = _merged_fams(ell, j)
        subs = {j: (lambda p, r0=r0, s0=s0: rc(r0, -s0, p), None)}
        lhs = _expand_subbed(lam + [r, s] + mu, denom, fams, subs)
        rhs = _expand_subbed(lam + [s, r] + mu, denom, fams, subs)
        if not eq_mod_relations(ctx, lhs, -rhs, rng):
            ok = False
    _report_case(report, "alternating rows, quadratic-relation case", ok, t0)

    t0 = time.perf_counter()
    ok = True
    for _ in range(trials):
        ell = rng.randint(2, 4)
        j = rng.randint(1, ell - 1)
        d = rng.randint(0, j - 1)  # j > d
        lam = [rng.randint(0, 3) for _ in range(j - 1)]
        mu = [rng.randint(0, 3) for _ in range(ell - j - 1)]
        r, s = rng.randint(-2, 3), rng.randint(-2, 3)
        denom = _rand_pairs_A(rng, j, ell)
        fams = _merged_fams(ell, j)
        hats = [True] * ell
        lhs = _expand_star(lam + [r, s] + mu, denom, fams, hats, d)
        rhs = _expand_star(lam + [s - 1, r + 1] + mu, denom, fams, hats, d)
        if lhs != -rhs:
            ok = False
    _report_case(report, "alternating rows, star free case", ok, t0)

    t0 = time.perf_counter()
    ok = True
    ctxd = RelationContext("D", 14, prime)
    for _ in range(max(trials // 4, 25)):
        ell = rng.randint(2, 3)
        j = rng.randint(1, ell - 1)
        r0, s0 = rng.randint(0, 1), rng.randint(0, 1)
        if r0 + s0 == 0:
            r0 = 1
        k = r0 + s0 - 1
        d = rng.randint(j + 1, ell + 1)  # j < d
        lam = [rng.randint(0, 2) for _ in range(j - 1)]
        mu = [rng.randint(0, 2) for _ in range(ell - j - 1)]
        r = rng.randint(2 * k + 3 - 2, 2 * k + 4)
        s = 2 * k + 3 - r + rng.randint(0, 1)  # r+s > 2k+2
        denom = _rand_pairs_C(rng, j, ell)
        fams = _merged_fams(ell, j)

        def cval(p, r0=r0, s0=s0):
            return rcs_d(r0, -s0, p)

        def dval(p, r0=r0, s0=s0):
            if p == r0 + s0:
                return sym_func("e", r0, r0, "X") * sym_func("e", s0, s0, "-Y")
            return Poly.zero()

        subs = {j: (cval, dval)}
        hats = [True] * ell
        lhs = _expand_star(lam + [r, s] + mu, denom, fams, hats, d, subs)
        rhs = _expand_star(lam + [s, r] + mu, denom, fams, hats, d, subs)
        if not eq_mod_relations(ctxd, lhs, -rhs, rng):
            ok = False
        zero = _expand_star(lam + [k + 1, k + 1] + mu, denom, fams, hats, d, subs)
        if not eq_mod_relations(ctxd, zero, Poly.zero(), rng):
            ok = False
    _report_case(report, "alternating rows, star relation case", ok, t0)

    # defining relations of the quotient rings and their block instances
    t0 = time.perf_counter()
    ok = True
    for p in range(1, 5):
        rel = c_gen(p) * c_gen(p)
        for i in range(1, p + 1):
            rel = rel + 2 * (-1) ** i * c_gen(p + i) * c_gen(p - i)
        if not specialize(rel, "BC", 2 * p).is_zero():
            ok = False
        relb = b_gen(p) * b_gen(p) + Poly.const((-1) ** p) * b_gen(2 * p)
        for i in range(1, p):
            relb = relb + 2 * (-1) ** i * b_gen(p + i) * b_gen(p - i)
        if not specialize(relb, "D", 2 * p).is_zero():
            ok = False
    _report_case(report, "quotient ring relations", ok, t0)

    t0 = time.perf_counter()
    ok = True
    for _ in range(max(trials // 10, 10)):
        r0 = rng.randint(0, 2)
        s0 = rng.randint(0, 2 - r0 + 1)
        kk = r0 + s0
        p = kk + rng.randint(1, 2)
        rel = rc(r0, -s0, p) * rc(r0, -s0, p)
        for i in range(1, p + 1):
            rel = rel + 2 * (-1) ** i * rc(r0, -s0, p + i) * rc(r0, -s0, p - i)
        ctx2 = RelationContext("BC", 2 * p + 2, prime)
        if not eq_mod_relations(ctx2, rel, Poly.zero(), rng):
            ok = False
    _report_case(report, "block instances of the quadratic relations", ok, t0)

    t0 = time.perf_counter()
    ok = True
    for r0 in range(0, 3):
        for s0 in range(0, 3 - r0):
            if r0 + s0 == 0:
                continue
            p = r0 + s0
            dd = sym_func("e", r0, r0, "X") * sym_func("e", s0, s0, "-Y")
            cc = lambda q: rcs_d(r0, -s0, q)
            rel = (cc(p) + dd) * (cc(p) - dd)
            for i in range(1, p + 1):
                rel = rel + 2 * (-1) ** i * cc(p + i) * cc(p - i)
            ctx2 = RelationContext("D", 2 * p + 2, prime)
            if not eq_mod_relations(ctx2, rel, Poly.zero(), rng):
                ok = False
    _report_case(report, "diagonal relation at p = r+s", ok, t0)

    t0 = time.perf_counter()
    ok = True
    for r in range(1, 4):
        f_r = f_diag(r, "b")
        ft_r = rc_d(r, r) - f_r
        lhs = f_r * ft_r
        for jj in range(1, r + 1):
            lhs = lhs + 2 * (-1) ** jj * ra_d(r, 0, r + jj) * ra_d(r, 0, r - jj)
        ctx2 = RelationContext("D", 2 * r + 2, prime)
        if not eq_mod_relations(ctx2, lhs, Poly.zero(), rng):
            ok = False
        f1 = f_diag_s(r, 1, "b")
        ft1 = rc_d(r, r) - 2 * f_r + f1
        lhs1 = ft1 * f1
        for jj in range(1, r + 1):
            lhs1 = lhs1 + 2 * (-1) ** jj * ra_d(r, 1, r + jj) * ra_d(r, 1, r - jj)
        if not eq_mod_relations(ctx2, lhs1, Poly.zero(), rng):
            ok = False
    _report_case(report, "diagonal a-block relations", ok, t0)

    # the generating series product is a polynomial of degree 2(r+s)
    t0 = time.perf_counter()
    ok = True
    for r0 in range(0, 3):
        for s0 in range(0, 3 - r0):
            top = 2 * (r0 + s0)
            for big in range(top + 1, top + 4):
                coeff = Poly.zero()
                for a in range(0, big + 1):
                    coeff = coeff + (-1) ** a * rc(r0, -s0, big - a) * rc(r0, -s0, a)
                ctx2 = RelationContext("BC", big + 2, prime)
                if not eq_mod_relations(ctx2, coeff, Poly.zero(), rng):
                    ok = False
    _report_case(report, "series product degree bound", ok, t0)

    return report


def _merged_fams(ell, j):
    """Row families 1..ell with rows j and j+1 sharing family j."""
    return [j if t == j + 1 else t for t in range(1, ell + 1)]


def _expand_formal_tau(lam, denom, fams, j, z):
    """Formal expansion with row j deformed to tau_p = s_p + z s_{p-1}."""
    total = Poly.zero()
    ell = len(lam)
    for term in expand_raising(tuple(lam), denom):
        out = Poly.const(term.coeff)
        dead = False
        for i in range(1, ell + 1):
            p = term.shifted[i - 1]
            if p < 0:
                dead = True
                break
            if i == j:
                base = Poly.zero()
                if p == 0:
                    base = Poly.one()
                else:
                    base = Poly.gen(("s", fams[i - 1], p))
                if p >= 1:
                    prev = Poly.one() if p == 1 else Poly.gen(("s", fams[i - 1], p - 1))
                    base = base + z * prev
                out = out * base
            elif p > 0:
                out = out * Poly.gen(("s", fams[i - 1], p))
        if not dead:
            total = total + out
    return total


def _expand_subbed(lam, denom, fams, subs):
    """Formal expansion with some families substituted by block values."""
    total = Poly.zero()
    ell = len(lam)
    for term in expand_raising(tuple(lam), denom):
        out = Poly.const(term.coeff)
        dead = False
        for i in range(1, ell + 1):
            p = term.shifted[i - 1]
            if p < 0:
                dead = True
                break
            fam = fams[i - 1]
            if fam in subs:
                out = out * subs[fam][0](p)
            elif p > 0:
                out = out * Poly.gen(("s", fam, p))
        if not dead:
            total = total + out
    return total


# -- the counterexample computations ------------------------------------------------


def appendix_counterexamples(prime: int = DEFAULT_PRIME) -> Report:
    """Reproduce the two published counterexample computations exactly."""
    report = Report(suite="appendix-b", config={"prime": prime})

    # Example 1: the formal theta deformation leaves a residue b1 c3(1).
    t0 = time.perf_counter()

    def cq(q, p):
        if p < 0:
            return Poly.zero()
        if p == 0:
            return Poly.one()
        return Poly.gen(("cq", q, p))

    b1 = Poly.gen(("aux", "b1", 1))
    lam = (2, 1, 1)
    denom = frozenset({(1, 2)})

    def theta(rows):
        total = Poly.zero()
        for term in expand_raising(lam, denom):
            out = Poly.const(term.coeff)
            for i in range(3):
                out = out * rows[i](term.shifted[i])
            total = total + out
        return total

    plain = theta([lambda p: cq(1, p), lambda p: cq(2, p), lambda p: cq(2, p)])
    deformed = theta([
        lambda p: cq(1, p),
        lambda p: cq(2, p) + b1 * cq(2, p - 1),
        lambda p: cq(2, p),
    ])
    ok1 = (deformed - plain) == b1 * cq(1, 3)
    _report_case(report, "theta deformation residue = b1 c3(1)", ok1, t0)

    # Example 2: the star value at the improper elements differs from the
    # Schubert polynomial.  The printed displays use the b-block and half a
    # c-block on the two rows; the star action itself puts the btilde-block
    # (type 2) and the a-block there.  All four expressions must differ from
    # the Schubert polynomial, which is the published conclusion.
    oracle = Oracle()
    ctx = RelationContext("D", 8, 0)  # exact mode
    for entries, sup in (((3, 2, 1), 1), ((-3, 2, -1), 0)):
        t0 = time.perf_counter()
        w = SignedWord("D", entries)
        dval = oracle.schubert("D", w)
        star = apply_formula_d(w, check=False)
        display = rb_ds(2, sup) * rcs_d(1, 2, 1) \
            - half() * rcs_d(2, sup, 3) * rcs_d(1, 2, 0)
        ok = (not eq_mod_relations(ctx, star, dval)) \
            and (not eq_mod_relations(ctx, display, dval))
        _report_case(report, f"star formula differs from D[{w}]", ok, t0)
    return report


# -- oracle self-consistency ---------------------------------------------------------


def oracle_consistency(lie_type: str, n: int, seed: int = 0,
                       prime: int = DEFAULT_PRIME) -> Report:
    """Defining equations and path independence over a whole rank.

    Types A, C and D only: the type B family is the type C one rescaled by
    2^{-s(w)} and satisfies the equations for its own rescaled operators.
    """
    if lie_type == "B":
        raise ValueError("run oracle consistency on type C; B is a rescaling")
    rng = random.Random(seed)
    report = Report(suite=f"oracle-{lie_type}{n}",
                    config={"lie_type": lie_type, "n": n, "seed": seed,
                            "prime": prime})
    oracle = Oracle()
    flavor = {"A": "A", "C": "BC", "D": "D"}[lie_type]
    values = {}
    for w, val in all_schubert_streaming(lie_type, n):
        values[w.entries] = val
    eff = "C" if lie_type == "B" else lie_type
    deg = longest_element(eff, n).length()
    ctx = context_for(lie_type, deg + 1, prime)
    t0 = time.perf_counter()
    ok = True
    for w in all_elements(eff, n):
        val = values[w.entries]
        lw = w.length()
        for i in w.simple_indices():
            for side in ("x", "y"):
                child = w.mult_right(i) if side == "x" else w.mult_left(i)
                image = ddiff(i, val, flavor, side=side)
                if child.length() < lw:
                    want = values[child.entries]
                else:
                    want = Poly.zero()
                if lie_type == "A":
                    good = image == want
                else:
                    good = eq_mod_relations(ctx, image, want, rng)
                if not good:
                    ok = False
    _report_case(report, f"defining equations rank {n}", ok, t0)

    t0 = time.perf_counter()
    ok = True
    for w in all_elements(eff, n):
        alt = oracle.schubert_via_path(lie_type, w, "max")
        main = values[w.entries]
        if lie_type == "A":
            good = alt == main
        else:
            good = eq_mod_relations(ctx, alt, main, rng)
        if not good:
            ok = False
    _report_case(report, f"path independence rank {n}", ok, t0)
    return report
