"""
Pattern embeddings, avoidance, flattening and interval pattern embeddings.

An embedding is the tuple of 1-based host positions i_1 < ... < i_m.

>>> w = parse_perm("817396254")
>>> (3, 5, 7, 8) in embeddings(parse_perm("3412"), w)
True
>>> flatten(parse_perm("2574136"), (2, 3, 5, 6))
Permutation(3412)
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Iterable, Iterator, Sequence

from .permcore import Permutation, PermutationError, bruhat_leq, length, parse_perm

__all__ = [
    "Embedding", "IntervalPattern", "PatternList", "flatten", "embeddings",
    "iter_embeddings", "contains", "avoids", "pattern_leq", "induced_lower",
    "interval_embeddings", "interval_avoids", "load_pattern_file", "pattern_list",
    "pattern_list_member", "first_member", "list_checksum", "PATTERN_CHECKSUMS",
]

Embedding = tuple[int, ...]

# sha256 of the shipped data files; a mismatch means the data was edited
PATTERN_CHECKSUMS = {
    "six.txt": "89b11fcca38b62ea92e30cfb6bb23d74c1850d5bb362bf6d8e2b913e61d26fb0",
    "sixty_six.txt": "a5799699768e6a56f8bc7bb0b066ccbea65fedb5ab4a17541f88e23e02985a49",
    "dotted.txt": "bc464f30754b88a66e6931c51a5dad83c73a085fb863167c712980e3ba838f48",
}


def flatten(w: Sequence[int], Z: Iterable[int]) -> Permutation:
    """The permutation order-isomorphic to w restricted to the positions Z."""
    Z = tuple(Z)
    n = len(w)
    if any(not 1 <= z <= n for z in Z) or any(a >= b for a, b in zip(Z, Z[1:])):
        raise PermutationError(f"{Z} is not an increasing set of positions in 1..{n}")
    vals = [w[z - 1] for z in Z]
    rank = {x: r for r, x in enumerate(sorted(vals), 1)}
    return Permutation._trusted(rank[x] for x in vals)


def _neighbours(v: Sequence[int]) -> list[tuple[int, int]]:
    # for each k, the earlier indices holding the next smaller / next larger value
    out = []
    for k, x in enumerate(v):
        lo = hi = -1
        for j in range(k):
            if v[j] < x and (lo < 0 or v[j] > v[lo]):
                lo = j
            if v[j] > x and (hi < 0 or v[j] < v[hi]):
                hi = j
        out.append((lo, hi))
    return out


def iter_embeddings(v: Sequence[int], w: Sequence[int]) -> Iterator[Embedding]:
    """
    Embeddings of v into w in lexicographic order, by backtracking over host
    positions; each new entry is checked only against its value neighbours
    among the entries already placed.
    """
    m, n = len(v), len(w)
    if m > n:
        return
    if m == 0:
        yield ()
        return
    nb = _neighbours(v)
    chosen = [0] * m  # 0-based host positions
    vals = [0] * m

    def rec(k: int, start: int):
        lo, hi = nb[k]
        bound_lo = vals[lo] if lo >= 0 else 0
        bound_hi = vals[hi] if hi >= 0 else n + 1
        for p in range(start, n - (m - k) + 1):
            x = w[p]
            if bound_lo < x < bound_hi:
                chosen[k] = p
                vals[k] = x
                if k + 1 == m:
                    yield tuple(c + 1 for c in chosen)
                else:
                    yield from rec(k + 1, p + 1)

    yield from rec(0, 0)


def embeddings(v: Sequence[int], w: Sequence[int]) -> list[Embedding]:
    return list(iter_embeddings(v, w))


def contains(w: Sequence[int], v: Sequence[int]) -> bool:
    for _ in iter_embeddings(v, w):
        return True
    return False


def avoids(w: Sequence[int], v: Sequence[int]) -> bool:
    return not contains(w, v)


def pattern_leq(v: Sequence[int], w: Sequence[int]) -> bool:
    """v ≺ w (non-strict)."""
    return len(v) <= len(w) and contains(w, v)


@dataclass(frozen=True)
class IntervalPattern:
    """A Bruhat interval [x, v] in S_m."""

    x: Permutation
    v: Permutation

    def __post_init__(self):
        if len(self.x) != len(self.v):
            raise PermutationError(f"size mismatch: {len(self.x)} vs {len(self.v)}")
        if not bruhat_leq(self.x, self.v):
            raise PermutationError(f"{self.x} is not below {self.v} in Bruhat order")

    @property
    def m(self) -> int:
        return len(self.v)

    @property
    def codim(self) -> int:
        return length(self.v) - length(self.x)


def induced_lower(w: Sequence[int], Z: Sequence[int], x: Sequence[int]) -> Permutation:
    """w with its entries at Z rearranged into the pattern x."""
    vals = sorted(w[z - 1] for z in Z)
    word = list(w)
    for z, xi in zip(Z, x):
        word[z - 1] = vals[xi - 1]
    return Permutation._trusted(word)


def interval_embeddings(pat: IntervalPattern, w: Sequence[int]) -> list[tuple[Permutation, Embedding]]:
    """
    All (u, Z) with [pat.x, pat.v] embedding into [u, w] along Z, using the
    length-difference criterion for the interval isomorphism.

    >>> pat = IntervalPattern(parse_perm("2143"), parse_perm("4231"))
    >>> interval_embeddings(pat, parse_perm("4231"))
    [(Permutation(2143), (1, 2, 3, 4))]
    """
    lw = length(w)
    d = pat.codim
    out = []
    for Z in iter_embeddings(pat.v, w):
        u = induced_lower(w, Z, pat.x)
        if lw - length(u) == d:
            out.append((u, Z))
    return out


def interval_avoids(w: Sequence[int], pat: IntervalPattern) -> bool:
    return not interval_embeddings(pat, w)


class PatternList(str, Enum):
    SIX = "six"
    SIXTY_SIX = "sixty_six"


def _read_data(name: str) -> bytes:
    return resources.files("klatlas").joinpath("data", name).read_bytes()


def list_checksum(name: str) -> str:
    return hashlib.sha256(_read_data(name)).hexdigest()


def load_pattern_file(text: str) -> list[Permutation]:
    """One permutation literal per line; '#' starts a comment."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_perm(line))
        except PermutationError as exc:
            raise PermutationError(f"line {lineno}: {exc}") from None
    return out


_LISTS: dict[PatternList, list[Permutation]] = {}


def pattern_list(list_id: PatternList | str) -> list[Permutation]:
    try:
        list_id = PatternList(list_id)
    except ValueError:
        raise ValueError(f"unknown pattern list {list_id!r}") from None
    if list_id not in _LISTS:
        name = f"{list_id.value}.txt"
        if list_checksum(name) != PATTERN_CHECKSUMS[name]:
            raise RuntimeError(f"pattern data {name} does not match its checksum")
        _LISTS[list_id] = load_pattern_file(_read_data(name).decode("utf-8"))
    return _LISTS[list_id]


def first_member(w: Sequence[int], list_id: PatternList | str) -> Permutation | None:
    """The first listed pattern contained in w, if any."""
    for v in pattern_list(list_id):
        if len(v) <= len(w) and contains(w, v):
            return v
    return None


def pattern_list_member(w: Sequence[int], list_id: PatternList | str) -> bool:
    """True iff w contains some pattern of the named list."""
    return first_member(w, list_id) is not None
