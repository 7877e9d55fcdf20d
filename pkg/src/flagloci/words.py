"""Signed permutations of the classical Weyl groups and their statistics.

Elements of the Weyl groups of types A, B, C, D are stored as fixed-rank
one-line words of signed integers.  Types B and C share the hyperoctahedral
group W_n (all signed permutations); type D is the even-sign subgroup; type A
words carry no signs.

Simple reflection indices follow the usual conventions:

    type A       s_1, ..., s_{n-1}
    types B, C   s_0 (sign change at position of value 1), s_1, ...
    type D       s_box (encoded as index 0), s_1, ...

so in type D the integer index 0 always means the box node, whose right
action is (w_1, w_2, ...) -> (-w_2, -w_1, ...).

Every statistic the degeneracy-locus formulas consume lives here: lengths,
descents, A-codes, strict partitions mu, shapes lambda = mu + nu, truncated
codes, the sequence beta and its denominator set, critical indices, the right
and left flags, the type-D involution iota and typed shapes, Grassmannian
reorderings, and the embeddings of W_n into symmetric groups used for rank
conditions of degeneracy loci.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

BOX = 0  # index of the box node in type D

LIE_TYPES = ("A", "B", "C", "D")


class InvalidWordError(ValueError):
    pass


@dataclass(frozen=True)
class SignedWord:
    """A Weyl group element in one-line notation."""

    lie_type: str
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.lie_type not in LIE_TYPES:
            raise InvalidWordError(f"unknown Lie type {self.lie_type!r}")
        n = len(self.entries)
        if sorted(abs(e) for e in self.entries) != list(range(1, n + 1)):
            raise InvalidWordError(
                f"{self.entries} is not a signed permutation of 1..{n}")
        if self.lie_type == "A" and any(e < 0 for e in self.entries):
            raise InvalidWordError("type A words cannot carry signs")
        if self.lie_type == "D" and self.neg_count() % 2:
            raise InvalidWordError("type D words need an even number of signs")

    # -- basics --------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.entries)

    def neg_count(self) -> int:
        return sum(1 for e in self.entries if e < 0)

    def is_identity(self) -> bool:
        return self.entries == tuple(range(1, self.n + 1))

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)

    @staticmethod
    def parse(lie_type: str, text: str) -> "SignedWord":
        entries = tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
        return SignedWord(lie_type, entries)

    @staticmethod
    def identity(lie_type: str, n: int) -> "SignedWord":
        return SignedWord(lie_type, tuple(range(1, n + 1)))

    def pad(self, m: int) -> "SignedWord":
        """Embed into rank m by adjoining fixed points n+1, ..., m."""
        if m < self.n:
            raise InvalidWordError("cannot pad to a smaller rank")
        return SignedWord(self.lie_type, self.entries + tuple(range(self.n + 1, m + 1)))

    def trim(self) -> "SignedWord":
        """Drop trailing fixed points (keeping rank at least 1)."""
        e = list(self.entries)
        while len(e) > 1 and e[-1] == len(e):
            e.pop()
        return SignedWord(self.lie_type, tuple(e))

    # -- group operations ----------------------------------------------------

    def inverse(self) -> "SignedWord":
        inv = [0] * self.n
        for i, e in enumerate(self.entries, start=1):
            if e > 0:
                inv[e - 1] = i
            else:
                inv[-e - 1] = -i
        return SignedWord(self.lie_type, tuple(inv))

    def mult_right(self, i: int) -> "SignedWord":
        """Right multiplication w -> w s_i (acts on positions)."""
        e = list(self.entries)
        if i == 0:
            if self.lie_type in ("B", "C"):
                e[0] = -e[0]
            elif self.lie_type == "D":
                e[0], e[1] = -e[1], -e[0]
            else:
                raise InvalidWordError("s_0 undefined in type A")
        else:
            e[i - 1], e[i] = e[i], e[i - 1]
        return SignedWord(self.lie_type, tuple(e))

    def mult_left(self, i: int) -> "SignedWord":
        """Left multiplication w -> s_i w (acts on values)."""
        if i == 0:
            if self.lie_type in ("B", "C"):
                swap = {1: -1, -1: 1}
            elif self.lie_type == "D":
                swap = {1: -2, -2: 1, 2: -1, -1: 2}
            else:
                raise InvalidWordError("s_0 undefined in type A")
        else:
            swap = {i: i + 1, i + 1: i, -i: -(i + 1), -(i + 1): -i}
        return SignedWord(self.lie_type, tuple(swap.get(e, e) for e in self.entries))

    def compose(self, other: "SignedWord") -> "SignedWord":
        """(self * other)(i) = self(other(i)); ranks must agree."""
        if self.n != other.n:
            raise InvalidWordError("rank mismatch in composition")
        out = []
        for e in other.entries:
            v = self.entries[abs(e) - 1]
            out.append(v if e > 0 else -v)
        return SignedWord(self.lie_type, tuple(out))

    # -- length and descents ---------------------------------------------------

    def length(self) -> int:
        e = self.entries
        inv = sum(1 for i in range(self.n) for j in range(i + 1, self.n) if e[i] > e[j])
        if self.lie_type == "A":
            return inv
        if self.lie_type in ("B", "C"):
            return inv + sum(-v for v in e if v < 0)
        return inv + sum(-v - 1 for v in e if v < 0)

    def simple_indices(self) -> tuple[int, ...]:
        if self.lie_type == "A":
            return tuple(range(1, self.n))
        return tuple(range(0, self.n))

    def right_descents(self) -> set[int]:
        e = self.entries
        out = {i for i in range(1, self.n) if e[i - 1] > e[i]}
        if self.lie_type in ("B", "C") and e[0] < 0:
            out.add(0)
        if self.lie_type == "D" and self.n >= 2 and e[0] + e[1] < 0:
            out.add(BOX)
        return out

    def left_descents(self) -> set[int]:
        """Indices i with l(s_i w) < l(w).

        For i >= 1 this is read off the inverse word.  The box descent in
        type D is detected by the three one-line patterns
        (... +-1 ... -2 ...), (... -2 ... -1 ...), (... 2 ... -1 ...).
        """
        if self.lie_type == "D":
            out = set()
            pos = {abs(e): i for i, e in enumerate(self.entries)}
            def entry_of(v):
                return self.entries[pos[v]]
            if self.n >= 2:
                e1, e2 = entry_of(1), entry_of(2)
                p1, p2 = pos[1], pos[2]
                if (e2 == -2 and p1 < p2) or (e1 == -1 and e2 == -2 and p2 < p1) \
                        or (e1 == -1 and e2 == 2 and p2 < p1):
                    out.add(BOX)
            for i in range(1, self.n):
                pi, pj = pos[i], pos[i + 1]
                ei, ej = entry_of(i), entry_of(i + 1)
                if (ei == i and ej == i + 1 and pj < pi) \
                        or (ei == i and ej == -(i + 1) and pi < pj) \
                        or (ei == i and ej == -(i + 1) and pj < pi) \
                        or (ei == -i and ej == -(i + 1) and pi < pj):
                    out.add(i)
            return out
        return self.inverse().right_descents()

    def first_right_descent(self) -> Optional[int]:
        """Least right descent; in types B/C index 0 is least, in D the box
        node precedes index 1."""
        d = self.right_descents()
        if not d:
            return None
        return min(d)

    # -- codes and shapes -------------------------------------------------------

    def a_code(self) -> tuple[int, ...]:
        e = self.entries
        return tuple(
            sum(1 for j in range(i + 1, self.n) if e[j] < e[i]) for i in range(self.n)
        )

    def d_type(self) -> int:
        """Type in {0,1,2}: 0 if |w_1| = 1, 1 if w_1 > 1, 2 if w_1 < -1."""
        if self.lie_type != "D":
            raise InvalidWordError("typed shapes only exist in type D")
        w1 = self.entries[0]
        if abs(w1) == 1:
            return 0
        return 1 if w1 > 1 else 2

    def iota(self) -> "SignedWord":
        """The type-D involution s_0 w s_0: flip the sign of w_1 and of the
        entry of absolute value 1."""
        if self.lie_type != "D":
            raise InvalidWordError("iota only exists in type D")
        e = list(self.entries)
        if abs(e[0]) == 1:
            return self
        e[0] = -e[0]
        for i in range(1, len(e)):
            if abs(e[i]) == 1:
                e[i] = -e[i]
                break
        return SignedWord("D", tuple(e))


def conjugate_partition(parts) -> tuple[int, ...]:
    parts = [p for p in parts if p > 0]
    if not parts:
        return ()
    m = max(parts)
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, m + 1))


def is_partition(seq) -> bool:
    seq = tuple(seq)
    return all(seq[i] >= seq[i + 1] for i in range(len(seq) - 1)) and all(
        p >= 0 for p in seq)


@dataclass(frozen=True)
class ShapeData:
    """Every combinatorial statistic the flagged formulas consume."""

    lie_type: str
    gamma: tuple[int, ...]           # A-code (type-2 D words use iota's code)
    mu: tuple[int, ...]              # strict partition from negative entries
    nu: tuple[int, ...]              # conjugate of the sorted A-code
    lam: tuple[int, ...]             # shape lambda = mu + nu
    d_type: Optional[int]            # 0/1/2 in type D, else None
    k: int                           # first right descent / primary index
    trunc_code: tuple[int, ...]      # (gamma_{k+1}, ..., gamma_n)
    xi: tuple[int, ...]              # xi_j = #{i : gamma_{k+i} >= j}
    beta: tuple[int, ...]            # shifted sorted tail entries
    denom_set: frozenset             # pairs (i,j) with beta_i + beta_j <= 0
    critical: tuple[int, ...]        # critical indices, increasing
    f_flag: tuple[int, ...]          # right flag, length = len(lam)
    g_flag: tuple[int, ...]          # left flag, length = len(lam)
    m: int = field(default=0)        # len(mu)
    ell: int = field(default=0)      # len(lam)


def _add_padded(a, b):
    ln = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(ln)
    )


def _strip(seq):
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


def shape(w: SignedWord) -> ShapeData:
    """Shape, flags and denominator data of w at its first descent.

    In type D the word of type 2 contributes the code and partitions of
    iota(w), while beta and the denominator set are read off the original
    tail entries.
    """
    lt = w.lie_type
    n = w.n

    if lt == "A":
        gamma = w.a_code()
        lam = tuple(sorted((g for g in gamma if g), reverse=True))
        ell = len(lam)
        fd = w.first_right_descent()
        k = 0 if fd is None else fd
        f_flag = tuple(max(i + 1 for i in range(n) if gamma[i] >= lam[j])
                       for j in range(ell))
        crit = tuple(c for c in range(1, ell + 1)
                     if lam[c - 1] > (lam[c] if c < ell else 0))
        g_flag = []
        for j in range(1, ell + 1):
            c = next(cc for cc in crit if cc >= j)
            g_flag.append(f_flag[c - 1] + lam[c - 1] - c)
        return ShapeData(
            lie_type="A", gamma=gamma, mu=(), nu=lam, lam=lam, d_type=None,
            k=k, trunc_code=tuple(gamma[k:]), xi=(), beta=(),
            denom_set=frozenset(), critical=crit,
            f_flag=f_flag, g_flag=tuple(g_flag), m=0, ell=ell)

    if lt in ("B", "C"):
        code_word = w
        d_type = None
        fd = w.first_right_descent()
        k = 0 if fd is None else fd
    else:
        d_type = w.d_type()
        code_word = w.iota() if d_type == 2 else w
        fd = w.first_right_descent()
        k = 1 if (fd is None or fd == BOX) else fd

    gamma = code_word.a_code()
    if lt in ("B", "C"):
        mu = tuple(sorted((-e for e in code_word.entries if e < 0), reverse=True))
    else:
        mu = tuple(sorted((-e - 1 for e in code_word.entries if e < -1), reverse=True))
    nu = conjugate_partition(gamma)
    lam = _strip(_add_padded(mu, nu))
    m = len(mu)
    ell = len(lam)

    tail = sorted(w.entries[k:])
    beta = tuple(u + 1 if u < 0 else u for u in tail)
    denom = frozenset(
        (i, j)
        for i in range(1, len(beta) + 1)
        for j in range(i + 1, len(beta) + 1)
        if beta[i - 1] + beta[j - 1] <= 0
    )
    trunc = tuple(gamma[k:])
    xi_full = conjugate_partition(trunc)

    def xi_at(c):
        return xi_full[c - 1] if c <= len(xi_full) else 0

    def lam_at(c):
        return lam[c - 1] if c <= ell else 0

    def beta_at(c):
        return beta[c - 1] if c <= len(beta) else None

    crit = []
    for c in range(1, ell + 1):
        b_next = beta_at(c + 1)
        if b_next is not None and b_next > beta[c - 1] + 1:
            crit.append(c)
        elif lt == "D" and b_next is not None and (beta[c - 1], b_next) == (1, 2):
            crit.append(c)
        elif lt in ("B", "C") and c == m and m >= 1:
            crit.append(c)
        elif lt in ("B", "C") and c < m and lam_at(c) > lam_at(c + 1) + 1:
            crit.append(c)
        elif lt == "D" and c <= m and lam_at(c) > lam_at(c + 1) + 1:
            crit.append(c)
        elif c > m and lam_at(c) > lam_at(c + 1):
            crit.append(c)
    crit = tuple(crit)

    f_flag = tuple(
        k + max((i for i in range(1, len(trunc) + 1) if trunc[i - 1] >= j), default=0)
        for j in range(1, ell + 1)
    )
    g_flag = []
    for j in range(1, ell + 1):
        # the last row is critical for every element met in practice; the
        # fallback keeps shape() total on pathological inputs
        c = next((cc for cc in crit if cc >= j), ell)
        g_flag.append(f_flag[c - 1] + beta[c - 1] - xi_at(c) - k)

    return ShapeData(
        lie_type=lt, gamma=gamma, mu=mu, nu=nu, lam=lam, d_type=d_type,
        k=k, trunc_code=trunc, xi=xi_full, beta=beta, denom_set=denom,
        critical=crit, f_flag=f_flag, g_flag=tuple(g_flag), m=m, ell=ell)


def phi_prefix(w: SignedWord, data: Optional[ShapeData] = None) -> tuple[int, ...]:
    """Conjugate of (gamma_k, ..., gamma_1); lambda = phi + xi + mu."""
    data = data or shape(w)
    psi = tuple(reversed(data.gamma[:data.k]))
    return conjugate_partition(psi)


# -- predicates ----------------------------------------------------------------


def is_dominant(w: SignedWord) -> bool:
    return is_partition(w.a_code())


def avoids_pattern(entries, pattern) -> bool:
    m = len(pattern)
    rel = tuple(sorted(range(m), key=lambda i: pattern[i]))
    for combo in itertools.combinations(entries, m):
        if tuple(sorted(range(m), key=lambda i: combo[i])) == rel:
            return False
    return True


def is_vexillary(w: SignedWord) -> bool:
    if w.lie_type != "A":
        raise InvalidWordError("vexillarity is a type A notion here")
    return avoids_pattern(w.entries, (2, 1, 4, 3))


def is_proper(w: SignedWord) -> bool:
    """Type D: |w_1| <= 2, or else the value 2 only occurs past position 2
    and right after a smaller entry."""
    if w.lie_type != "D":
        raise InvalidWordError("properness is a type D notion")
    e = w.entries
    if abs(e[0]) <= 2:
        return True
    for j, v in enumerate(e, start=1):
        if v == 2:
            return j > 2 and e[j - 2] < 2
    return True


def primary_index(w: SignedWord) -> int:
    if w.lie_type == "D":
        fd = w.first_right_descent()
        return 1 if (fd is None or fd == BOX) else fd
    fd = w.first_right_descent()
    return 0 if fd is None else fd


def is_leading(w: SignedWord) -> bool:
    """The truncated A-code past the first descent (primary index in D) is a
    partition; type D additionally requires properness."""
    if w.lie_type == "D" and not is_proper(w):
        return False
    data = shape(w)
    return is_partition(data.trunc_code)


def is_grassmannian(w: SignedWord) -> Optional[int]:
    """The unique-descent index, reported as the primary index in type D;
    None when w is not Grassmannian (the identity counts, with k = 0)."""
    d = w.right_descents()
    if len(d) > 1:
        return None
    if not d:
        return 0
    i = d.pop()
    if w.lie_type == "D" and i == BOX:
        return 1
    return i


def is_valid_d(w: SignedWord) -> bool:
    """Type D: increasing up to the primary index, truncated code a
    partition, and proper."""
    if w.lie_type != "D":
        raise InvalidWordError("validity is a type D notion")
    return is_leading(w)


@dataclass(frozen=True)
class Classification:
    dominant: bool
    vexillary: Optional[bool]
    grassmannian: Optional[int]
    leading: bool
    proper: Optional[bool]
    valid: Optional[bool]


def classify(w: SignedWord) -> Classification:
    return Classification(
        dominant=is_dominant(w),
        vexillary=is_vexillary(w) if w.lie_type == "A" else None,
        grassmannian=is_grassmannian(w),
        leading=is_leading(w),
        proper=is_proper(w) if w.lie_type == "D" else None,
        valid=is_valid_d(w) if w.lie_type == "D" else None,
    )


# -- Grassmannian reordering -----------------------------------------------------


def grassmannianize(w: SignedWord, k: int) -> SignedWord:
    """Reorder the tail w_{k+1..n} increasingly; w must be increasing up to k."""
    if not increasing_up_to(w, k):
        raise InvalidWordError(f"{w} is not increasing up to {k}")
    return SignedWord(w.lie_type, w.entries[:k] + tuple(sorted(w.entries[k:])))


def increasing_up_to(w: SignedWord, k: int) -> bool:
    e = w.entries
    if w.lie_type == "D":
        if k <= 1:
            return True
        return abs(e[0]) < e[1] and all(e[i] < e[i + 1] for i in range(1, k - 1))
    if k == 0:
        return True
    if w.lie_type == "A":
        return all(e[i] < e[i + 1] for i in range(k - 1))
    return 0 < e[0] and all(e[i] < e[i + 1] for i in range(k - 1))


# -- symmetric group embeddings ----------------------------------------------------


def zeta_embed(w: SignedWord, flavor: str) -> tuple[int, ...]:
    """Image of a signed permutation in a symmetric group.

    flavor "C": the embedding of W_n into S_{2n} whose image consists of the
    permutations with p_i + p_{2n+1-i} = 2n+1.  flavor "B": the analogue into
    S_{2n+1}.  flavor "D": the type-D locus form, the C-embedding applied to
    w0 w w0 with w0 the longest element of the even subgroup.
    """
    if w.lie_type == "A":
        raise InvalidWordError("zeta embeddings apply to signed types only")
    n = w.n
    if flavor == "D":
        w0 = longest_element("D", n)
        w = w0.compose(w).compose(w0)
        flavor = "C"
    if flavor == "C":
        img = [0] * (2 * n)
        for i in range(1, n + 1):
            v = w.entries[n - i]
            img[i - 1] = n + 1 - v if v > 0 else n - v
        for i in range(1, n + 1):
            img[2 * n - i] = 2 * n + 1 - img[i - 1]
        return tuple(img)
    if flavor == "B":
        # barred entries map to n+1+|v|, which is n+1-v again since v < 0
        img = [0] * (2 * n + 1)
        for i in range(1, n + 1):
            img[i - 1] = n + 1 - w.entries[n - i]
        img[n] = n + 1
        for i in range(1, n + 1):
            img[2 * n + 1 - i] = 2 * n + 2 - img[i - 1]
        return tuple(img)
    raise InvalidWordError(f"unknown zeta flavor {flavor!r}")


def longest_element(lie_type: str, n: int) -> SignedWord:
    if lie_type == "A":
        return SignedWord("A", tuple(range(n, 0, -1)))
    if lie_type in ("B", "C"):
        return SignedWord(lie_type, tuple(-i for i in range(1, n + 1)))
    first = 1 if n % 2 else -1
    return SignedWord("D", (first,) + tuple(-i for i in range(2, n + 1)))


# -- enumeration --------------------------------------------------------------------


def all_elements(lie_type: str, n: int) -> Iterator[SignedWord]:
    """All group elements of the given rank, in a fixed deterministic order."""
    for perm in itertools.permutations(range(1, n + 1)):
        if lie_type == "A":
            yield SignedWord("A", perm)
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if lie_type == "D" and signs.count(-1) % 2:
                continue
            yield SignedWord(lie_type, tuple(s * p for s, p in zip(signs, perm)))


def count_group(lie_type: str, n: int) -> int:
    import math
    if lie_type == "A":
        return math.factorial(n)
    if lie_type in ("B", "C"):
        return 2 ** n * math.factorial(n)
    return 2 ** (n - 1) * math.factorial(n)
