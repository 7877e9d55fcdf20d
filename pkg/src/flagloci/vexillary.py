"""Vexillary permutations: code conditions, the canonical 312-avoiding
companion, and the tableau encoding its reduced word.

A permutation is vexillary exactly when its code gamma satisfies, for all
i < j: (i) if gamma_i <= gamma_j then no entry between them dips below
gamma_i, and (ii) if gamma_i > gamma_j then at most gamma_i - gamma_j
entries between them lie below gamma_j.  Equivalently the word avoids the
pattern 2143.

For a vexillary, non-dominant permutation the initial indices (positions
whose code value is exceeded later) carry associated intervals, pairwise
nested or disjoint.  Listing the integers of the half-open intervals by
decreasing depth, ties broken increasingly, spells a reduced word for a
312-avoiding permutation omega with l(w * omega) = l(w) + l(omega) and
w * omega dominant.  The same word is recovered by reading a skew tableau on
(shape of w * omega)/(shape of w) whose rows are filled with consecutive
decreasing integers, by decreasing box depth.

Moves are kept replayable: the inverse procedure acts on codes by the
cyclic shifts recorded in `inverse_move`, and `forward_move` undoes them,
so the worked examples and the stabilisation inequality can be checked
step by step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .words import SignedWord, is_dominant


def vexillary_code_test(gamma: tuple[int, ...]) -> bool:
    n = len(gamma)
    for i in range(n):
        for j in range(i + 1, n):
            if gamma[i] <= gamma[j]:
                if any(gamma[k] < gamma[i] for k in range(i + 1, j)):
                    return False
            else:
                dips = sum(1 for k in range(i + 1, j) if gamma[k] < gamma[j])
                if dips > gamma[i] - gamma[j]:
                    return False
    return True


@dataclass(frozen=True)
class IntervalData:
    initial: tuple[int, ...]                  # initial indices, increasing
    associated: dict                          # i -> j (closed interval [i, j])
    weights: tuple[int, ...]                  # weight of 1..n
    depths: dict                              # i -> depth of [i, j)

    def intervals(self):
        return [(i, self.associated[i]) for i in self.initial]


def interval_data(gamma: tuple[int, ...]) -> IntervalData:
    n = len(gamma)
    initial = []
    associated = {}
    for i in range(1, n + 1):
        later = [s for s in range(i + 1, n + 1) if gamma[i - 1] < gamma[s - 1]]
        if later:
            initial.append(i)
            associated[i] = max(later)
    weights = tuple(
        sum(1 for i in initial if i <= k <= associated[i]) for k in range(1, n + 1)
    )
    depths = {
        i: min(weights[k - 1] for k in range(i, associated[i]))
        for i in initial
    }
    return IntervalData(tuple(initial), associated, weights, depths)


def canonical_omega(varpi: SignedWord) -> tuple[tuple[int, ...], SignedWord]:
    """The canonical 312-avoiding omega and the dominant product varpi*omega.

    Raises on non-vexillary input; dominant input yields the empty word.
    """
    if varpi.lie_type != "A":
        raise ValueError("canonical omega is defined for type A words")
    gamma = varpi.a_code()
    if not vexillary_code_test(gamma):
        raise ValueError(f"{varpi} is not vexillary")
    data = interval_data(gamma)
    word: list[int] = []
    for d in sorted(set(data.depths.values()), reverse=True):
        letters = []
        for i in data.initial:
            if data.depths[i] == d:
                letters.extend(range(i, data.associated[i]))
        word.extend(sorted(letters))
    product = varpi
    for a in word:
        nxt = product.mult_right(a)
        if nxt.length() != product.length() + 1:
            raise AssertionError("canonical word failed to be increasing")
        product = nxt
    if not is_dominant(product):
        raise AssertionError("canonical omega did not reach a dominant element")
    return tuple(word), product


# -- moves on codes ---------------------------------------------------------------


def inverse_move(code: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    """The inverse [i,j]-move: cycle positions i..j left and bump by one."""
    c = list(code)
    moved = c[i - 1]
    c[i - 1:j] = [v + 1 for v in c[i:j]] + [moved]
    return tuple(c)


def forward_move(code: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    """The [i,j]-move: position i receives the value from j, the block
    i..j-1 shifts right losing one."""
    c = list(code)
    c[i - 1:j] = [c[j - 1]] + [v - 1 for v in c[i - 1:j - 1]]
    return tuple(c)


def word_runs(word: tuple[int, ...], descending: bool) -> list[tuple[int, int]]:
    """Split a word into maximal runs of consecutive indices; returns the
    intervals [i, j] of the corresponding moves."""
    runs = []
    pos = 0
    step = -1 if descending else 1
    while pos < len(word):
        start = pos
        while pos + 1 < len(word) and word[pos + 1] == word[pos] + step:
            pos += 1
        lo = min(word[start], word[pos])
        hi = max(word[start], word[pos]) + 1
        runs.append((lo, hi))
        pos += 1
    return runs


def inverse_procedure_trace(varpi: SignedWord):
    """Replay the inverse procedure on codes; yields (move, code) pairs
    starting from code(varpi) and ending in the dominant code."""
    word, product = canonical_omega(varpi)
    code = varpi.a_code()
    trace = [((0, 0), code)]
    for (i, j) in word_runs(word, descending=False):
        code = inverse_move(code, i, j)
        trace.append(((i, j), code))
    assert tuple(product.a_code()) == code
    return trace


def forward_procedure_trace(base_code: tuple[int, ...],
                            rows: tuple[tuple[int, ...], ...]):
    """Replay the procedure on codes along the rows R_1 ... R_{n-1} of a
    right modification (each row a subword of s_{n-1} ... s_1)."""
    code = tuple(base_code)
    trace = [((0, 0), code)]
    for row in rows:
        for (i, j) in word_runs(tuple(row), descending=True):
            code = forward_move(code, i, j)
            trace.append(((i, j), code))
    return trace


def stabilised(code_after, final_code, i, j) -> bool:
    """The move-invariant: after an [i,j]-move the entry at i is final and
    minimal on [i,j], dominating everything past j."""
    a = code_after
    tail_max = max((a[r - 1] for r in range(j + 1, len(a) + 1)), default=0)
    return (a[i - 1] == final_code[i - 1]
            and a[i - 1] == min(a[r - 1] for r in range(i, j + 1))
            and a[i - 1] >= tail_max)


# -- the tableau -------------------------------------------------------------------


@dataclass(frozen=True)
class VexillaryTableau:
    gamma_hat: tuple[int, ...]
    lam: tuple[int, ...]
    lam_hat: tuple[int, ...]
    rows: tuple[tuple[tuple[int, int], ...], ...]  # per row: ((column, entry), ...)
    omega_word: tuple[int, ...]

    def render(self) -> str:
        lines = []
        width = max((c for row in self.rows for c, _ in row), default=0)
        for idx in range(len(self.lam_hat)):
            filled = dict(self.rows[idx]) if idx < len(self.rows) else {}
            cells = []
            for c in range(1, self.lam_hat[idx] + 1):
                if c <= (self.lam[idx] if idx < len(self.lam) else 0):
                    cells.append(" .")
                else:
                    cells.append(f"{filled.get(c, '?'):>2}")
            lines.append("".join(cells))
        del width
        return "\n".join(lines)


def tableau(varpi: SignedWord) -> VexillaryTableau:
    """The skew tableau whose depth-ordered reading word is the canonical
    omega."""
    gamma = varpi.a_code()
    if not vexillary_code_test(gamma):
        raise ValueError(f"{varpi} is not vexillary")
    data = interval_data(gamma)
    n = varpi.n
    gamma_hat = tuple(
        gamma[a - 1] + sum(1 for i in data.initial if i < a <= data.associated[i])
        for a in range(1, n + 1)
    )
    lam = tuple(sorted((g for g in gamma if g), reverse=True))
    lam_hat = tuple(sorted((g for g in gamma_hat if g), reverse=True))
    rows = []
    for idx in range(len(lam_hat)):
        lo = lam[idx] if idx < len(lam) else 0
        hi = lam_hat[idx]
        count = hi - lo
        entries = list(range(idx + 1 + count - 1, idx, -1))  # decreasing, ends at idx+1
        rows.append(tuple(zip(range(lo + 1, hi + 1), entries)))
    boxes = []
    for idx, row in enumerate(rows):
        for col, entry in row:
            depth = lam_hat[idx] - col
            boxes.append((depth, entry))
    word = tuple(entry for depth, entry in
                 sorted(boxes, key=lambda de: (-de[0], de[1])))
    return VexillaryTableau(gamma_hat=gamma_hat, lam=lam, lam_hat=lam_hat,
                            rows=tuple(rows), omega_word=word)
