"""
Kazhdan-Lusztig polynomials P_{u,w} for the symmetric group.

Both tables run the same recursion, one whole column P_{., w} at a time.
With s = s_i a right descent of w and v = ws,

    P_{x,w} = q^{1-c} P_{xs,v} + q^c P_{x,v}
              - sum_{z < v, zs < z} mu(z, v) q^{(l(w) - l(z))/2} P_{x,z}

where c = 1 if xs < x and c = 0 otherwise. The identity holds for every x
(P vanishes off the lower interval), so a column needs no Bruhat
comparisons, and the mu-terms are read off the column of v itself.

`SparseKLTable` stores each column as a dict over the lower interval [id, w]
and is the right tool for isolated queries in any S_n. `DenseKLTable` holds
every column of S_n as numpy arrays indexed by lexicographic rank and is what
the exhaustive sweeps use.

>>> from klatlas.permcore import parse_perm
>>> str(kl_poly(parse_perm("1234"), parse_perm("3412")))
'1 + q'
"""

from __future__ import annotations

import json
from itertools import permutations
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .permcore import PermutationError, format_perm, identity, length, parse_perm
from .polyq import ZERO, PolyQ

__all__ = [
    "KLTable", "SparseKLTable", "DenseKLTable", "KLConsistencyError", "KLTableFileError",
    "kl_poly", "mu", "kl_stat", "kl_member", "kl_table_build", "table_save",
    "table_load", "default_table", "MAX_DENSE_N", "FORMAT", "VERSION",
]

FORMAT = "kl-table"
VERSION = 1

# S_7 needs a few hundred MB; S_8 is out of reach for dense columns in RAM.
MAX_DENSE_N = 7


class KLConsistencyError(ArithmeticError):
    """The recursion produced a term the theory rules out (a bug, not bad input)."""


class KLTableFileError(ValueError):
    """Corrupt, truncated or version-mismatched table file."""


def _pick_descent(w: Sequence[int], rule: str) -> int:
    ds = [i for i in range(1, len(w)) if w[i - 1] > w[i]]
    if rule == "first":
        return ds[0]
    if rule == "last":
        return ds[-1]
    raise ValueError(f"unknown descent rule {rule!r}")


class KLTable:
    """Common interface of the two table implementations."""

    n: int
    descent_rule: str

    def poly(self, u: Sequence[int], w: Sequence[int]) -> PolyQ:
        raise NotImplementedError

    def id_poly(self, w: Sequence[int]) -> PolyQ:
        return self.poly(identity(len(w)), w)

    def column(self, w: Sequence[int]) -> dict[tuple[int, ...], PolyQ]:
        """All nonzero P_{x,w}, keyed by x."""
        raise NotImplementedError

    def entries(self) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], PolyQ]]:
        """Stored (u, w, P_{u,w}) for comparable pairs."""
        raise NotImplementedError

    def _check(self, u: Sequence[int], w: Sequence[int]) -> None:
        if len(u) != len(w):
            raise PermutationError(f"size mismatch: {len(u)} vs {len(w)}")
        if len(w) != self.n:
            raise PermutationError(f"table is for S_{self.n}, got a permutation of size {len(w)}")


class SparseKLTable(KLTable):
    """
    Lazily filled memo of columns, each a dict x -> coefficient tuple over
    the lower interval of w.
    """

    def __init__(self, n: int, descent_rule: str = "first"):
        self.n = n
        self.descent_rule = descent_rule
        e = tuple(range(1, n + 1))
        self._cols: dict[tuple[int, ...], dict[tuple[int, ...], tuple[int, ...]]] = {e: {e: (1,)}}

    def __contains__(self, w) -> bool:
        return tuple(w) in self._cols

    def _column(self, w: tuple[int, ...]) -> dict[tuple[int, ...], tuple[int, ...]]:
        col = self._cols.get(w)
        if col is not None:
            return col
        # iterative descent to the first memoized ancestor keeps the stack shallow
        chain = []
        x = w
        while x not in self._cols:
            i = _pick_descent(x, self.descent_rule)
            chain.append((x, i))
            x = _swap(x, i)
        for x, i in reversed(chain):
            self._cols[x] = self._step(x, i)
        return self._cols[w]

    def _step(self, w: tuple[int, ...], i: int) -> dict[tuple[int, ...], tuple[int, ...]]:
        v = _swap(w, i)
        colv = self._column(v)
        lw = length(w)
        lv = lw - 1
        # support of w is support(v) ∪ support(v)·s
        support = set(colv)
        support.update(_swap(x, i) for x in colv)

        mus = []
        for z, cz in colv.items():
            if z == v or z[i - 1] < z[i]:
                continue
            k = lv - length(z)
            if k % 2 == 1 and (k - 1) // 2 < len(cz) and cz[(k - 1) // 2]:
                mus.append((cz[(k - 1) // 2], (lw - length(z)) // 2, z))
        mu_cols = [(m, e, self._column(z)) for m, e, z in mus]

        out: dict[tuple[int, ...], tuple[int, ...]] = {}
        bound = (lw - 1) // 2
        for x in support:
            xs = _swap(x, i)
            a = colv.get(xs, ())
            b = colv.get(x, ())
            acc = [0] * (max(len(a), len(b)) + 1)
            if x[i - 1] > x[i]:  # xs < x
                for e, c in enumerate(a):
                    acc[e] += c
                for e, c in enumerate(b):
                    acc[e + 1] += c
            else:
                for e, c in enumerate(a):
                    acc[e + 1] += c
                for e, c in enumerate(b):
                    acc[e] += c
            for m, shift, colz in mu_cols:
                pz = colz.get(x)
                if pz:
                    need = shift + len(pz)
                    if need > len(acc):
                        acc.extend([0] * (need - len(acc)))
                    for e, c in enumerate(pz):
                        acc[e + shift] -= m * c
            while acc and acc[-1] == 0:
                acc.pop()
            if not acc:
                continue
            if x != w and len(acc) - 1 > bound:
                raise KLConsistencyError(
                    f"P_{{{format_perm(x)},{format_perm(w)}}} has degree {len(acc) - 1} > {bound}")
            if acc[0] != 1:
                raise KLConsistencyError(
                    f"P_{{{format_perm(x)},{format_perm(w)}}} has constant term {acc[0]}")
            out[x] = tuple(acc)
        return out

    def poly(self, u: Sequence[int], w: Sequence[int]) -> PolyQ:
        self._check(u, w)
        c = self._column(tuple(w)).get(tuple(u))
        return PolyQ._raw(c) if c else ZERO

    def column(self, w: Sequence[int]) -> dict[tuple[int, ...], PolyQ]:
        self._check(w, w)
        return {x: PolyQ._raw(c) for x, c in self._column(tuple(w)).items()}

    def entries(self):
        for w in sorted(self._cols):
            col = self._cols[w]
            for u in sorted(col):
                yield u, w, PolyQ._raw(col[u])

    def insert(self, u: Sequence[int], w: Sequence[int], p: PolyQ) -> None:
        """Idempotent insert used by `table_load`; racing writers agree."""
        self._cols.setdefault(tuple(w), {})[tuple(u)] = p.coeffs


def _swap(x: tuple[int, ...], i: int) -> tuple[int, ...]:
    return x[:i - 1] + (x[i], x[i - 1]) + x[i + 1:]


class DenseKLTable(KLTable):
    """
    Every column of S_n. `cols[j]` is an integer array of shape (N, d + 1)
    whose row r holds the coefficients of P_{perms[r], perms[j]}.
    """

    def __init__(self, n: int, descent_rule: str = "first", *, _build: bool = True):
        self.n = n
        self.descent_rule = descent_rule
        self.perms = [tuple(p) for p in permutations(range(1, n + 1))]
        self.index = {p: r for r, p in enumerate(self.perms)}
        self.N = len(self.perms)
        self.lengths = np.array([length(p) for p in self.perms], dtype=np.int64)
        self.cols: list[np.ndarray | None] = [None] * self.N
        # right multiplication by s_i as an index map, and the descent mask
        self.smul = {}
        self.sdesc = {}
        for i in range(1, n):
            self.smul[i] = np.array([self.index[_swap(p, i)] for p in self.perms], dtype=np.int64)
            self.sdesc[i] = np.array([p[i - 1] > p[i] for p in self.perms], dtype=bool)
        if _build:
            self._build()

    def _build(self) -> None:
        e = self.index[tuple(range(1, self.n + 1))]
        col = np.zeros((self.N, 1), dtype=np.int8)
        col[e, 0] = 1
        self.cols[e] = col
        for j in np.argsort(self.lengths, kind="stable"):
            if self.cols[j] is None:
                w = self.perms[j]
                self.cols[j] = self._step(j, _pick_descent(w, self.descent_rule))

    def _step(self, j: int, i: int) -> np.ndarray:
        lens = self.lengths
        jv = self.smul[i][j]
        colv = self.cols[jv].astype(np.int64)
        lw = int(lens[j])
        lv = lw - 1
        desc = self.sdesc[i]
        a = colv[self.smul[i]]
        width = colv.shape[1] + 1
        acc = np.zeros((self.N, width), dtype=np.int64)
        acc[desc, :-1] += a[desc]
        acc[desc, 1:] += colv[desc]
        nd = ~desc
        acc[nd, 1:] += a[nd]
        acc[nd, :-1] += colv[nd]

        k = lv - lens
        cand = np.nonzero(desc & (k > 0) & (k % 2 == 1) & ((k - 1) // 2 < colv.shape[1]))[0]
        if len(cand):
            m = colv[cand, (k[cand] - 1) // 2]
            for z, mz in zip(cand[m != 0], m[m != 0]):
                shift = (lw - int(lens[z])) // 2
                colz = self.cols[z].astype(np.int64)
                need = shift + colz.shape[1]
                if need > acc.shape[1]:
                    acc = np.pad(acc, ((0, 0), (0, need - acc.shape[1])))
                acc[:, shift:need] -= int(mz) * colz

        nz = np.nonzero(acc.any(axis=0))[0]
        acc = acc[:, :nz[-1] + 1] if len(nz) else acc[:, :1]
        bound = (lw - 1) // 2
        if acc.shape[1] - 1 > bound:
            bad = acc[:, bound + 1:].any(axis=1)
            bad[j] = False
            if bad.any():
                x = self.perms[int(np.nonzero(bad)[0][0])]
                raise KLConsistencyError(
                    f"P_{{{format_perm(x)},{format_perm(self.perms[j])}}} exceeds degree {bound}")
        rows = acc.any(axis=1)
        if (acc[rows, 0] != 1).any():
            raise KLConsistencyError(f"constant term != 1 in column of {format_perm(self.perms[j])}")
        return _narrow(acc)

    def col(self, w: Sequence[int]) -> np.ndarray:
        return self.cols[self.index[tuple(w)]]

    def poly(self, u: Sequence[int], w: Sequence[int]) -> PolyQ:
        self._check(u, w)
        row = self.cols[self.index[tuple(w)]][self.index[tuple(u)]]
        return PolyQ(row.tolist())

    def id_stat(self, w: Sequence[int]) -> int:
        """P_{id,w}(1) without building a polynomial."""
        return int(self.cols[self.index[tuple(w)]][0].sum())

    def column(self, w: Sequence[int]) -> dict[tuple[int, ...], PolyQ]:
        self._check(w, w)
        c = self.cols[self.index[tuple(w)]]
        return {self.perms[r]: PolyQ(c[r].tolist()) for r in np.nonzero(c.any(axis=1))[0]}

    def entries(self):
        for j, w in enumerate(self.perms):
            c = self.cols[j]
            for r in np.nonzero(c.any(axis=1))[0]:
                yield self.perms[r], w, PolyQ(c[r].tolist())

    def nbytes(self) -> int:
        return sum(c.nbytes for c in self.cols if c is not None)


def _narrow(a: np.ndarray) -> np.ndarray:
    lo, hi = (int(a.min()), int(a.max())) if a.size else (0, 0)
    for dt in (np.int8, np.int16, np.int32):
        info = np.iinfo(dt)
        if info.min <= lo and hi <= info.max:
            return a.astype(dt)
    return a


_DEFAULT_TABLES: dict[int, KLTable] = {}


def default_table(n: int) -> KLTable:
    """A process-wide lazily filled table for S_n."""
    t = _DEFAULT_TABLES.get(n)
    if t is None:
        t = _DEFAULT_TABLES[n] = SparseKLTable(n)
    return t


def kl_poly(u: Sequence[int], w: Sequence[int], table: KLTable | None = None) -> PolyQ:
    """
    P_{u,w}: 0 unless u <= w, 1 if u == w.

    >>> str(kl_poly(parse_perm("2143"), parse_perm("4231")))
    '1 + q'
    """
    if len(u) != len(w):
        raise PermutationError(f"size mismatch: {len(u)} vs {len(w)}")
    if table is None:
        table = default_table(len(w))
    return table.poly(u, w)


def mu(z: Sequence[int], w: Sequence[int], table: KLTable | None = None) -> int:
    """Coefficient of q^{(l(w) - l(z) - 1)/2} in P_{z,w}; 0 if that exponent is not integral."""
    k = length(w) - length(z)
    if k <= 0 or k % 2 == 0:
        return 0
    return kl_poly(z, w, table).coefficient((k - 1) // 2)


def kl_stat(w: Sequence[int], table: KLTable | None = None) -> int:
    """P_{id,w}(1)."""
    if isinstance(table, DenseKLTable):
        return table.id_stat(w)
    return kl_poly(identity(len(w)), w, table).eval_at_one()


def kl_member(w: Sequence[int], m: int, table: KLTable | None = None) -> bool:
    """w in KL_m, i.e. P_{id,w}(1) <= m."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return kl_stat(w, table) <= m


def kl_table_build(n: int, *, allow_long: bool = False, descent_rule: str = "first") -> DenseKLTable:
    """Full table of P_{u,w} over S_n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_DENSE_N and not allow_long:
        raise ValueError(f"dense tables are limited to n <= {MAX_DENSE_N} (pass allow_long to override)")
    return DenseKLTable(n, descent_rule)


def table_save(table: KLTable, path: str | Path) -> None:
    """JSON lines: a header, then one record per stored comparable pair."""
    path = Path(path)
    complete = isinstance(table, DenseKLTable)
    with path.open("w", encoding="utf-8") as f:
        f.write(json.dumps({"format": FORMAT, "version": VERSION, "n": table.n,
                            "complete": complete, "descent_rule": table.descent_rule}) + "\n")
        for u, w, p in table.entries():
            f.write(json.dumps({"n": table.n, "u": format_perm(u), "w": format_perm(w),
                                "coeffs": list(p.coeffs)}) + "\n")


def table_load(path: str | Path) -> KLTable:
    """Inverse of `table_save`; rejects foreign or damaged files."""
    path = Path(path)
    try:
        f = path.open(encoding="utf-8")
    except OSError as exc:
        raise KLTableFileError(f"{path}: cannot open ({exc.strerror})") from exc
    with f:
        first = f.readline()
        try:
            header = json.loads(first)
        except json.JSONDecodeError as exc:
            raise KLTableFileError(f"{path}:1: header is not JSON") from exc
        if not isinstance(header, dict) or header.get("format") != FORMAT:
            raise KLTableFileError(f"{path}:1: not a {FORMAT} file")
        if header.get("version") != VERSION:
            raise KLTableFileError(f"{path}:1: version {header.get('version')!r}, expected {VERSION}")
        n = header.get("n")
        if not isinstance(n, int) or n < 1:
            raise KLTableFileError(f"{path}:1: bad n {n!r}")
        rule = header.get("descent_rule", "first")
        if header.get("complete"):
            table: KLTable = DenseKLTable(n, rule, _build=False)
            rows: list[list[tuple[int, list[int]]]] = [[] for _ in range(table.N)]
        else:
            table = SparseKLTable(n, rule)
        for lineno, line in enumerate(f, 2):
            try:
                rec = json.loads(line)
                u, w = parse_perm(rec["u"]), parse_perm(rec["w"])
                coeffs = rec["coeffs"]
                if rec["n"] != n or len(u) != n or len(w) != n:
                    raise ValueError("size does not match header")
                if not coeffs or coeffs[0] != 1 or not all(isinstance(c, int) for c in coeffs):
                    raise ValueError("coefficients must be integers with constant term 1")
            except (ValueError, KeyError, TypeError, PermutationError) as exc:
                raise KLTableFileError(f"{path}:{lineno}: bad record ({exc})") from exc
            if isinstance(table, DenseKLTable):
                rows[table.index[w]].append((table.index[u], coeffs))
            else:
                table.insert(u, w, PolyQ(coeffs))
    if isinstance(table, DenseKLTable):
        for j, recs in enumerate(rows):
            if not recs:
                raise KLTableFileError(f"{path}: complete table lacks column {format_perm(table.perms[j])}")
            width = max(len(c) for _, c in recs)
            col = np.zeros((table.N, width), dtype=np.int64)
            for r, c in recs:
                col[r, :len(c)] = c
            table.cols[j] = _narrow(col)
    return table
