"""Double Schubert polynomials by divided-difference recursion.

This module is the ground truth the flagged formulas are tested against.
Every polynomial descends from the top element of its group: the seed at the
longest element is the one closed form the recursion needs, and each step
applies one right divided difference along the canonical path that always
uses the smallest ascent index.  Path independence is a checked property,
not an assumption.

Type B values are the type C values scaled by 2^{-s(w)}, s(w) the number of
negative entries.  An optional disk cache (versioned pickle shards plus a
JSON index, keyed by Lie type and rank) amortises repeated sweeps; writes go
through atomic renames so concurrent readers never see torn files.
"""

from __future__ import annotations

import json
import os
import pickle
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional

from .poly import Poly
from .formulas import apply_formula, apply_formula_d
from .ring import ddiff
from .words import SignedWord, longest_element, all_elements, shape

CACHE_ENV = "FLAGLOCI_CACHE_DIR"
_CACHE_VERSION = 1


class DiskCache:
    """Pickle shards per (type, rank) with a JSON index."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._shards: dict[str, dict] = {}

    def _index_path(self) -> Path:
        return self.root / "index.json"

    def _read_index(self) -> dict:
        try:
            with open(self._index_path()) as fh:
                idx = json.load(fh)
            if idx.get("version") != _CACHE_VERSION:
                return {"version": _CACHE_VERSION, "shards": {}}
            return idx
        except (OSError, ValueError):
            return {"version": _CACHE_VERSION, "shards": {}}

    def _shard(self, lie_type: str, n: int) -> dict:
        key = f"{lie_type}:{n}"
        if key not in self._shards:
            idx = self._read_index()
            fname = idx["shards"].get(key)
            data = {}
            if fname and (self.root / fname).exists():
                try:
                    with open(self.root / fname, "rb") as fh:
                        blob = pickle.load(fh)
                    if blob.get("version") == _CACHE_VERSION:
                        data = blob["entries"]
                except (OSError, pickle.PickleError, EOFError):
                    data = {}
            self._shards[key] = data
        return self._shards[key]

    def get(self, lie_type: str, n: int, entries: tuple) -> Optional[Poly]:
        terms = self._shard(lie_type, n).get(entries)
        if terms is None:
            return None
        return Poly(terms)

    def put(self, lie_type: str, n: int, entries: tuple, value: Poly):
        self._shard(lie_type, n)[entries] = dict(value.terms)

    def flush(self):
        idx = self._read_index()
        for key, data in self._shards.items():
            fname = key.replace(":", "_") + ".pkl"
            blob = {"version": _CACHE_VERSION, "entries": data}
            fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
            with os.fdopen(fd, "wb") as fh:
                pickle.dump(blob, fh, protocol=pickle.HIGHEST_PROTOCOL)
            os.replace(tmp, self.root / fname)
            idx["shards"][key] = fname
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(idx, fh)
        os.replace(tmp, self._index_path())


def default_cache() -> Optional[DiskCache]:
    root = os.environ.get(CACHE_ENV)
    return DiskCache(root) if root else None


class Oracle:
    """Memoised recursion; one instance per computation session."""

    def __init__(self, disk: Optional[DiskCache] = None):
        self.memo: dict[tuple, Poly] = {}
        self.disk = disk

    # effective type: B shares the type C family up to scaling
    @staticmethod
    def _eff(lie_type: str) -> str:
        return "C" if lie_type == "B" else lie_type

    def top(self, lie_type: str, n: int) -> Poly:
        """Seed at the longest element: the leading-element raising-operator
        form, which is where the descending recursion starts."""
        eff = self._eff(lie_type)
        w0 = longest_element(eff, n)
        key = (eff, n, w0.entries)
        if key not in self.memo:
            if eff == "A":
                val = apply_formula("A", w0, check=False)
            elif eff == "C":
                val = apply_formula("C", w0, check=False)
            else:
                val = apply_formula_d(w0, check=False)
            self.memo[key] = val
        return self.memo[key]

    def _ascent(self, w: SignedWord) -> Optional[int]:
        lw = w.length()
        for i in w.simple_indices():
            if w.mult_right(i).length() > lw:
                return i
        return None

    def schubert(self, lie_type: str, w: SignedWord) -> Poly:
        """A representative of the double Schubert polynomial of w."""
        eff = self._eff(lie_type)
        if (eff in ("A", "D")) != (w.lie_type == eff) and eff != "C":
            raise ValueError(f"word of type {w.lie_type} under oracle {lie_type}")
        if eff == "C" and w.lie_type not in ("B", "C"):
            raise ValueError(f"word of type {w.lie_type} under oracle {lie_type}")
        val = self._schubert_eff(eff, w)
        if lie_type == "B":
            val = val * Fraction(1, 2 ** w.neg_count())
        return val

    def _schubert_eff(self, eff: str, w: SignedWord) -> Poly:
        n = w.n
        path = []
        v = w if w.lie_type == eff else SignedWord(eff, w.entries)
        while True:
            key = (eff, n, v.entries)
            if key in self.memo:
                break
            if self.disk is not None:
                hit = self.disk.get(eff, n, v.entries)
                if hit is not None:
                    self.memo[key] = hit
                    break
            d = self._ascent(v)
            if d is None:
                self.top(eff, n)
                break
            path.append((v.entries, d))
            v = v.mult_right(d)
        value = self.memo[(eff, n, v.entries)]
        flavor = {"A": "A", "C": "BC", "D": "D"}[eff]
        for entries, d in reversed(path):
            value = ddiff(d, value, flavor)
            key = (eff, n, entries)
            self.memo[key] = value
            if self.disk is not None:
                self.disk.put(eff, n, entries, value)
        return value

    def schubert_via_path(self, lie_type: str, w: SignedWord,
                          ascent_rule: str = "max") -> Poly:
        """Recompute along an alternative reduced path (no memoisation), for
        path-independence checks."""
        eff = self._eff(lie_type)
        v = w if w.lie_type == eff else SignedWord(eff, w.entries)
        path = []
        while True:
            lw = v.length()
            choices = [i for i in v.simple_indices()
                       if v.mult_right(i).length() > lw]
            if not choices:
                break
            d = max(choices) if ascent_rule == "max" else min(choices)
            path.append(d)
            v = v.mult_right(d)
        value = self.top(eff, v.n)
        flavor = {"A": "A", "C": "BC", "D": "D"}[eff]
        for d in reversed(path):
            value = ddiff(d, value, flavor)
        if lie_type == "B":
            value = value * Fraction(1, 2 ** w.neg_count())
        return value


def schubert(lie_type: str, w: SignedWord,
             oracle: Optional[Oracle] = None) -> Poly:
    return (oracle or Oracle()).schubert(lie_type, w)


def levels_by_length(lie_type: str, n: int) -> list[list[SignedWord]]:
    eff = "C" if lie_type == "B" else lie_type
    buckets: dict[int, list[SignedWord]] = {}
    for w in all_elements(eff, n):
        buckets.setdefault(w.length(), []).append(w)
    return [buckets[k] for k in sorted(buckets, reverse=True)]


def all_schubert_streaming(lie_type: str, n: int) -> Iterator[tuple[SignedWord, Poly]]:
    """Yield (w, polynomial) for the whole rank-n group, computing level by
    level from the top and keeping only two length levels in memory."""
    eff = "C" if lie_type == "B" else lie_type
    flavor = {"A": "A", "C": "BC", "D": "D"}[eff]
    oracle = Oracle()
    levels = levels_by_length(eff, n)
    current: dict[tuple, Poly] = {}
    w0 = levels[0][0]
    current[w0.entries] = oracle.top(eff, n)
    yield _scaled(lie_type, w0, current[w0.entries])
    for level in levels[1:]:
        nxt: dict[tuple, Poly] = {}
        for w in level:
            lw = w.length()
            d = next(i for i in w.simple_indices()
                     if w.mult_right(i).length() > lw)
            parent = w.mult_right(d)
            val = ddiff(d, current[parent.entries], flavor)
            nxt[w.entries] = val
            yield _scaled(lie_type, w, val)
        current = nxt


def _scaled(lie_type: str, w: SignedWord, val: Poly):
    if lie_type == "B":
        return (SignedWord("B", w.entries),
                val * Fraction(1, 2 ** w.neg_count()))
    return (w, val)
