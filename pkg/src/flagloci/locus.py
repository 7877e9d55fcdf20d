"""Degeneracy locus output: rank conditions and Chern class formulas.

Everything here is a symbolic transcription: no cohomology ring is modelled.
The locus X_w of an amenable element w is cut out by rank conditions
dim(E_r cap F_s) >= (a count read off w, through the embedding zeta into a
symmetric group for the signed types, with equalities and the conjugated
element in type D).  Its class is rendered as a raising-operator prefix
applied to a product of Chern classes, one factor per row of the shape:

    type A   rows of the conjugate shape, arguments E - E_{f_j} - F_{n-g_j}
    type C   c_{lambda_j}(E - E_{n-f_j} - F_{n+g_j})
    type B   the same with F_{n+1+g_j} and the prefactor 2^{-len(mu)}
    type D   hatted rows as in the star action, with the half-sum
             substitutions for the diagonal blocks spelled out in a legend

The fraktur-c monomials of the algebraic formula correspond to the Chern
factors row by row, which is what the consistency tests in the suite check.
"""

from __future__ import annotations

from typing import Optional

from .words import SignedWord, ShapeData, shape, zeta_embed, conjugate_partition
from .amenable import is_amenable
from .formulas import NotAmenableError


def _check(w: SignedWord):
    if not is_amenable(w):
        raise NotAmenableError(f"{w.lie_type} word {w} is not amenable")


def rank_conditions(lie_type: str, w: SignedWord, n: int,
                    check: bool = True) -> list[tuple[int, int, int]]:
    """Triples (r, s, bound) of the locus conditions dim(E_r cap F_s) >= bound
    (with equality in type D)."""
    if check:
        _check(w)
    if lie_type == "A":
        if w.n != n:
            w = w.pad(n)
        return [
            (r, s, sum(1 for i in range(r) if w.entries[i] > n - s))
            for r in range(1, n + 1) for s in range(1, n + 1)
        ]
    if w.n != n:
        w = w.pad(n)
    if lie_type == "C":
        img = zeta_embed(w, "C")
        return [
            (r, s, sum(1 for i in range(r) if img[i] > 2 * n - s))
            for r in range(1, n + 1) for s in range(1, 2 * n + 1)
        ]
    if lie_type == "B":
        img = zeta_embed(w, "B")
        return [
            (r, s, sum(1 for i in range(r) if img[i] > 2 * n + 1 - s))
            for r in range(1, n + 1) for s in range(1, 2 * n + 1)
        ]
    img = zeta_embed(w, "D")
    return [
        (r, s, sum(1 for i in range(r) if img[i] > 2 * n - s))
        for r in range(1, n) for s in range(1, 2 * n + 1)
    ]


def _denom_str(denom, latex: bool) -> str:
    if not denom:
        return "R^{}" if not latex else "R^{\\emptyset}"
    pairs = ",".join(f"({i},{j})" for i, j in sorted(denom))
    return f"R^{{{pairs}}}" if latex else f"R^{{{pairs}}}"


def _chern(p: int, e_idx: Optional[int], f_idx: Optional[int], n: int,
           latex: bool) -> str:
    parts = ["E"]
    if e_idx is not None and e_idx > 0:
        parts.append(f"E_{{{e_idx}}}" if latex else f"E_{e_idx}")
    if f_idx is not None and f_idx > 0:
        parts.append(f"F_{{{f_idx}}}" if latex else f"F_{f_idx}")
    arg = " - ".join(parts)
    return f"c_{{{p}}}({arg})" if latex else f"c_{p}({arg})"


def chern_rows(lie_type: str, data: ShapeData, n: int) -> list[tuple[int, int, int]]:
    """Per-row (degree, E-index, F-index) of the Chern product."""
    if lie_type == "A":
        lam_c = conjugate_partition(data.lam)
        rows = []
        for j in range(len(lam_c)):
            src = lam_c[j]  # flag of the row where this column bottoms out
            rows.append((lam_c[j], data.f_flag[src - 1], n - data.g_flag[src - 1]))
        return rows
    rows = []
    for j in range(data.ell):
        if lie_type == "C":
            fi = n + data.g_flag[j]
        elif lie_type == "B":
            fi = n + 1 + data.g_flag[j]
        else:
            fi = n + data.g_flag[j]
        rows.append((data.lam[j], n - data.f_flag[j], fi))
    return rows


def emit(lie_type: str, w: SignedWord, n: int, fmt: str = "plain",
         check: bool = True) -> str:
    """The degeneracy-locus class as a display string."""
    latex = fmt == "latex"
    if check:
        _check(w)
    data = shape(w)
    if not data.lam:
        return "[X_w] = 1"
    rows = chern_rows(lie_type, data, n)
    body = (" \\, " if latex else " ").join(
        _chern(p, ei, fi, n, latex) for p, ei, fi in rows
    )
    prefix = ""
    if lie_type in ("B", "D") and data.m:
        prefix = (f"2^{{-{data.m}}}\\, " if latex else f"2^(-{data.m}) ")
    denom = _denom_str(data.denom_set if lie_type != "A" else frozenset(), latex)
    star = " \\star " if latex else " * "
    op = star if lie_type == "D" else (" \\, " if latex else " ")
    out = f"[X_w] = {prefix}{denom}{op}{body}"
    if lie_type == "D":
        out += "\n" + substitution_legend(data, n, latex)
    return out


def substitution_legend(data: ShapeData, n: int, latex: bool) -> str:
    """Type D: how the diagonal b-blocks become half-sums of Chern classes."""
    lines = []
    seen = set()
    for r in data.f_flag:
        if r in seen or r <= 0:
            continue
        seen.add(r)
        base = _chern(r, n - r, n, n, latex)
        mirr = (f"c_{{{r}}}(E_{{{n}}} - E_{{{n - r}}})" if latex
                else f"c_{r}(E_{n} - E_{n-r})")
        if latex:
            lines.append(
                f"{{}}^{{{r}}}\\mathfrak{{b}}_{{{r}}} \\mapsto "
                f"\\tfrac12({base} + {mirr}), \\quad "
                f"{{}}^{{{r}}}\\widetilde{{\\mathfrak{{b}}}}_{{{r}}} \\mapsto "
                f"\\tfrac12({base} - {mirr})")
        else:
            lines.append(f"  with b[{r}] -> 1/2({base} + {mirr}), "
                         f"bt[{r}] -> 1/2({base} - {mirr})")
    return "\n".join(lines)
