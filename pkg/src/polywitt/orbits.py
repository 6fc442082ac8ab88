"""Rotation orbits of words of p-power length.

Words are tuples of letter indices ``0..b-1``.  A word of length p^m has
minimal rotation period p^i for a unique i <= m (the period of a word of
length p^m always divides p^m); i is its period exponent and the word is
fixed exactly by the subgroup of index p^i in Z/p^m.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded, RangeError, SchemaError

Word = tuple[int, ...]

WORD_CAP = 2**20
FILTER_LIMIT = 16


def p_exponent(length: int, p: int) -> int:
    m = 0
    while length % p == 0 and length > 1:
        length //= p
        m += 1
    if length != 1:
        raise RangeError(f"length is not a power of {p}")
    return m


def check_cap(b: int, length: int, cap: int = WORD_CAP) -> None:
    if b > 1 and b**length > cap:
        raise CapExceeded(f"{b}^{length} words exceeds the cap {cap}")


def rotate(word: Word, t: int) -> Word:
    """Cyclic shift: position k of the result holds ``word[k + t]``."""
    t %= len(word) or 1
    return word[t:] + word[:t]


def period_exponent(word: Word, p: int) -> int:
    m = p_exponent(len(word), p)
    for i in range(m + 1):
        if rotate(word, p**i) == word:
            return i
    return m  # unreachable: rotating by p^m is the identity


def least_rotation(word: Word, step: int = 1) -> Word:
    """Lexicographically least rotation by a multiple of ``step``."""
    return min(rotate(word, t) for t in range(0, len(word), step)) if word else word


@dataclass(frozen=True, order=True)
class Necklace:
    rep: Word
    i: int

    def primitive(self, p: int) -> Word:
        """The aperiodic block of length p^i repeating to ``rep``."""
        return self.rep[: p**self.i]

    def to_dict(self) -> dict:
        return {"letters": list(self.rep), "i": self.i}

    @classmethod
    def from_dict(cls, data: dict) -> "Necklace":
        try:
            return cls(tuple(int(c) for c in data["letters"]), int(data["i"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad Necklace object: {exc}") from exc


def canonicalize(word: Word, p: int) -> Necklace:
    return Necklace(least_rotation(tuple(word)), period_exponent(tuple(word), p))


def count_aperiodic(b: int, p: int, i: int) -> int:
    """Number of aperiodic necklaces of length p^i over b letters."""
    if i == 0:
        return b
    return (b ** (p**i) - b ** (p ** (i - 1))) // p**i


def count_necklaces(b: int, p: int, m: int) -> int:
    """Number of rotation orbits on words of length p^m."""
    return sum(count_aperiodic(b, p, i) for i in range(m + 1))


def _lyndon_words(b: int, length: int):
    """Duval's generation of Lyndon words of length <= ``length``."""
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == length:
            yield tuple(w)
        m = len(w)
        while len(w) < length:
            w.append(w[-m])
        while w and w[-1] == b - 1:
            w.pop()


_lock = threading.Lock()


@lru_cache(maxsize=None)
def _aperiodic_by_filter(b: int, p: int, i: int) -> tuple[Word, ...]:
    length = p**i
    out = set()
    for word in itertools.product(range(b), repeat=length):
        if period_exponent(word, p) == i:
            out.add(least_rotation(word))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _aperiodic_by_lyndon(b: int, p: int, i: int) -> tuple[Word, ...]:
    if b == 0:
        return ()
    if i == 0:
        return tuple((s,) for s in range(b))
    return tuple(_lyndon_words(b, p**i))


def aperiodic_words(b: int, p: int, i: int, method: str = "auto") -> tuple[Word, ...]:
    """Sorted least-rotation representatives of period exponent exactly i."""
    check_cap(b, p**i)
    if method == "auto":
        method = "filter" if p**i <= FILTER_LIMIT else "lyndon"
    with _lock:
        if method == "filter":
            return _aperiodic_by_filter(b, p, i)
        if method == "lyndon":
            return _aperiodic_by_lyndon(b, p, i)
    raise ValueError(f"unknown method {method!r}")


def enumerate_aperiodic_necklaces(b: int, p: int, i: int, method: str = "auto") -> list[Necklace]:
    return [Necklace(w, i) for w in aperiodic_words(b, p, i, method)]


def decompose_words(b: int, p: int, m: int) -> dict[int, list[Word]]:
    """Split all words of length p^m by period exponent: S = coprod S_[i]."""
    check_cap(b, p**m)
    parts: dict[int, list[Word]] = {i: [] for i in range(m + 1)}
    for word in itertools.product(range(b), repeat=p**m):
        parts[period_exponent(word, p)].append(word)
    return parts


def all_necklaces(b: int, p: int, m: int) -> list[Word]:
    """Primitive blocks of every rotation orbit on words of length p^m."""
    return [w for i in range(m + 1) for w in aperiodic_words(b, p, i)]
