"""
The singular locus of the Schubert variety X_w, combinatorially.

Components come from interval pattern embeddings of three families of
Bruhat intervals (types I, IIA, IIB). The graph description by critical 3412
embeddings and their A1/A2/B regions is provided alongside, together with
the dotted-pattern filter on 4231/3412 occurrences and a KL-polynomial
oracle for the maximal singular locus.

>>> sorted(map(str, ms(parse_perm("4231"))))
['2143']
>>> sorted(map(str, ms(parse_perm("3412"))))
['1324']
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .klengine import KLTable, default_table
from .patterns import (
    Embedding, IntervalPattern, PATTERN_CHECKSUMS, flatten, interval_embeddings,
    iter_embeddings, list_checksum,
)
from .permcore import (
    Permutation, PermutationError, bruhat_leq, lower_covers, parse_perm, upper_covers,
)

__all__ = [
    "Kind", "Critical3412", "RegionData", "Witness", "Component", "DottedPattern",
    "family_interval", "families_up_to", "critical_3412_embeddings", "regions", "is_reduced",
    "singular_components", "ms", "singular_at", "dotted_patterns",
    "dotted_filter_occurrences", "ms_oracle_via_kl", "IIB_MIN_Y",
]

P3412 = (3, 4, 1, 2)
P4231 = (4, 2, 3, 1)

# the IIB family starts at y = 1 (a single B point); see family_interval
IIB_MIN_Y = 1


class Kind(str, Enum):
    I = "I"
    IIA = "IIA"
    IIB = "IIB"


def _seg(j: int, i: int) -> list[int]:
    """The segment j, j-1, ..., i; empty when j < i."""
    return list(range(j, i - 1, -1))


def family_interval(kind: Kind | str, y: int, z: int = 0) -> IntervalPattern:
    """
    The interval [x, v] of the given family.

    >>> p = family_interval("I", 1, 1); str(p.x), str(p.v)
    ('2143', '4231')
    >>> p = family_interval("IIB", 2); str(p.x), str(p.v)
    ('154326', '564312')
    """
    kind = Kind(kind)
    if kind is Kind.I:
        if y < 1 or z < 1:
            raise ValueError(f"type I needs y, z >= 1, got y={y}, z={z}")
        x = _seg(y + 1, 1) + _seg(y + z + 2, y + 2)
        v = [y + z + 2, y + 1] + _seg(y, 2) + _seg(y + z + 1, y + 2) + [1]
    elif kind is Kind.IIA:
        if y < 0 or z < 0:
            raise ValueError(f"type IIA needs y, z >= 0, got y={y}, z={z}")
        x = _seg(y + 1, 1) + [y + 3, y + 2] + _seg(y + z + 4, y + 4)
        v = [y + 3] + _seg(y + 1, 2) + [y + z + 4, 1] + _seg(y + z + 3, y + 4) + [y + 2]
    else:
        if y < IIB_MIN_Y:
            raise ValueError(f"type IIB needs y >= {IIB_MIN_Y}, got y={y}")
        x = [1] + _seg(y + 3, 2) + [y + 4]
        v = [y + 3, y + 4] + _seg(y + 2, 3) + [1, 2]
    return IntervalPattern(Permutation(x), Permutation(v))


@lru_cache(maxsize=None)
def families_up_to(n: int) -> tuple[tuple[Kind, int, int, IntervalPattern], ...]:
    """Every (kind, y, z, interval) whose patterns have at most n entries."""
    out = []
    for y in range(1, n):
        for z in range(1, n - y - 1):
            out.append((Kind.I, y, z, family_interval(Kind.I, y, z)))
    for y in range(0, n - 3):
        for z in range(0, n - y - 3):
            out.append((Kind.IIA, y, z, family_interval(Kind.IIA, y, z)))
    for y in range(IIB_MIN_Y, n - 3):
        out.append((Kind.IIB, y, 0, family_interval(Kind.IIB, y)))
    return tuple(out)


@dataclass(frozen=True)
class Critical3412:
    i: int
    j: int
    k: int
    m: int

    @property
    def positions(self) -> tuple[int, int, int, int]:
        return (self.i, self.j, self.k, self.m)


@dataclass(frozen=True)
class RegionData:
    A1: frozenset[int]
    A2: frozenset[int]
    B: frozenset[int]

    @property
    def A(self) -> frozenset[int]:
        return self.A1 | self.A2


def _critical_empty(w: Sequence[int], i: int, j: int, k: int, m: int) -> bool:
    wi, wj, wk, wm = w[i - 1], w[j - 1], w[k - 1], w[m - 1]
    for p in range(i + 1, j):
        if wm < w[p - 1] < wi:
            return False
    for p in range(j + 1, k):
        x = w[p - 1]
        if wi < x < wj or wk < x < wm:
            return False
    for p in range(k + 1, m):
        if wm < w[p - 1] < wi:
            return False
    return True


def critical_3412_embeddings(w: Sequence[int]) -> list[Critical3412]:
    """3412 embeddings whose four critical regions hold no graph point."""
    return [Critical3412(*Z) for Z in iter_embeddings(P3412, w) if _critical_empty(w, *Z)]


def regions(c: Critical3412, w: Sequence[int]) -> RegionData:
    i, j, k, m = c.positions
    wi, wj, wk, wm = w[i - 1], w[j - 1], w[k - 1], w[m - 1]
    if not (wk < wm < wi < wj):
        raise PermutationError(f"{c.positions} is not a 3412 embedding in {w}")
    return RegionData(
        A1=frozenset(p for p in range(i + 1, j) if wk < w[p - 1] < wm),
        A2=frozenset(p for p in range(k + 1, m) if wi < w[p - 1] < wj),
        B=frozenset(p for p in range(j + 1, k) if wm < w[p - 1] < wi),
    )


def is_reduced(c: Critical3412, w: Sequence[int]) -> bool:
    """B-region values strictly decrease left to right."""
    B = sorted(regions(c, w).B)
    return all(w[a - 1] > w[b - 1] for a, b in zip(B, B[1:]))


@dataclass(frozen=True)
class Witness:
    """One interval embedding of a family into [u, w]."""

    kind: Kind
    y: int
    z: int
    Z: Embedding

    def type_one_parts(self) -> tuple[int, tuple[int, ...], tuple[int, ...], int]:
        """(i, J, K, m) for a type I witness."""
        if self.kind is not Kind.I:
            raise ValueError("not a type I witness")
        Z = self.Z
        return Z[0], Z[1:self.y + 1], Z[self.y + 1:self.y + 1 + self.z], Z[-1]

    def critical(self) -> Critical3412:
        """The 3412 embedding inside a type II witness."""
        Z = self.Z
        if self.kind is Kind.IIA:
            return Critical3412(Z[0], Z[self.y + 1], Z[self.y + 2], Z[-1])
        if self.kind is Kind.IIB:
            return Critical3412(Z[0], Z[1], Z[-2], Z[-1])
        raise ValueError("type I witnesses carry no single critical embedding")


@dataclass(frozen=True)
class Component:
    """X_u; `kind` is that of the first witness found."""

    u: Permutation
    kind: Kind
    witnesses: tuple[Witness, ...] = field(compare=False)

    @property
    def kinds(self) -> frozenset[Kind]:
        return frozenset(wt.kind for wt in self.witnesses)


def singular_components(w: Sequence[int]) -> list[Component]:
    """
    Components of the singular locus of X_w, one per distinct label u,
    sorted by u.
    """
    found: dict[Permutation, list[Witness]] = {}
    for kind, y, z, pat in families_up_to(len(w)):
        for u, Z in interval_embeddings(pat, w):
            found.setdefault(u, []).append(Witness(kind, y, z, Z))
    return [Component(u, ws[0].kind, tuple(ws)) for u, ws in sorted(found.items())]


def ms(w: Sequence[int]) -> set[Permutation]:
    """The maximal singular locus: labels of the components."""
    return {c.u for c in singular_components(w)}


def singular_at(w: Sequence[int], u: Sequence[int]) -> bool:
    """Is X_w singular at the point e_u?"""
    if len(u) != len(w):
        raise PermutationError(f"size mismatch: {len(u)} vs {len(w)}")
    return any(bruhat_leq(u, v) for v in ms(w))


@dataclass(frozen=True)
class DottedPattern:
    word: Permutation
    dotted: Embedding


@lru_cache(maxsize=None)
def dotted_patterns() -> tuple[DottedPattern, ...]:
    """The 13 patterns whose dotted 4231/3412 occurrences are discarded."""
    raw = resources.files("klatlas").joinpath("data", "dotted.txt").read_bytes()
    if list_checksum("dotted.txt") != PATTERN_CHECKSUMS["dotted.txt"]:
        raise RuntimeError("dotted pattern data does not match its checksum")
    out = []
    for lineno, line in enumerate(raw.decode("utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            word, pos = line.split(":")
            dp = DottedPattern(parse_perm(word), tuple(int(p) for p in pos.split(",")))
        except ValueError as exc:
            raise ValueError(f"dotted.txt:{lineno}: {exc}") from None
        if flatten(dp.word, dp.dotted) not in (P4231, P3412):
            raise ValueError(f"dotted.txt:{lineno}: dotted part does not flatten to 4231 or 3412")
        out.append(dp)
    return tuple(out)


def dotted_filter_occurrences(w: Sequence[int]) -> list[Embedding]:
    """
    4231 and 3412 occurrences in w that are not the dotted part of an
    occurrence of any dotted pattern, in lexicographic order.
    """
    occ = set(iter_embeddings(P4231, w)) | set(iter_embeddings(P3412, w))
    if not occ:
        return []
    for dp in dotted_patterns():
        idx = [d - 1 for d in dp.dotted]
        for Z in iter_embeddings(dp.word, w):
            occ.discard(tuple(Z[d] for d in idx))
    return sorted(occ)


def ms_oracle_via_kl(w: Sequence[int], table: KLTable | None = None) -> set[Permutation]:
    """
    Bruhat-maximal u <= w with P_{u,w} != 1, read off the KL polynomials.
    """
    if table is None:
        table = default_table(len(w))
    col = table.column(w)
    bad = {u for u, p in col.items() if p != 1}
    for u in bad:
        # the non-smooth cells form a lower order ideal; anything else is a bug upstream
        for y in lower_covers(u):
            if y not in bad:
                raise ArithmeticError(f"P_{{{y},{w}}} = 1 but P_{{{u},{w}}} != 1 with {y} < {u}")
    return {Permutation._trusted(u) for u in bad if not any(y in bad for y in upper_covers(u))}

