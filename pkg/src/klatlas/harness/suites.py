"""
Exhaustive verification suites over S_n.

Each suite is a per-permutation check `check(w, table) -> (status, detail)`
swept over S_n in lexicographic order. The sweep can fan out over a fork
pool; every check is independent and results are re-sorted by w, so the
report does not depend on the number of jobs.

>>> s = run_suite("theorem_main", SuiteConfig(n=4))
>>> s.ok, s.total, s.failed
(True, 24, 0)
"""

from __future__ import annotations

import multiprocessing as mp
import sys
import time
from functools import lru_cache
from itertools import combinations
from typing import Any, Callable, Sequence

from ..klengine import (
    MAX_DENSE_N, DenseKLTable, KLTable, SparseKLTable, default_table, kl_stat, kl_table_build,
    table_load, table_save,
)
from ..patterns import PatternList, contains, first_member, flatten, pattern_list
from ..permcore import Permutation, all_perms, bruhat_leq, length, parse_perm, rank
from ..polyq import ONE, PolyQ
from ..rescomb import (
    check_MNempty, check_onecompempty, cortez_data, covex_report, exceptional_R_graph_points,
    exceptional_R_region, is_covexillary, min_height, rv_violations,
)
from ..singloc import dotted_filter_occurrences, ms, ms_oracle_via_kl
from .report import Status, SuiteConfig, Summary, VerificationRecord

__all__ = [
    "SUITES", "UsageError", "run_suite", "table_for", "ms_cached", "verify_theorem_main",
    "verify_corollary", "verify_kl2_patterns", "verify_ms_crosschecks", "verify_lemma_me",
    "verify_conjecture1", "verify_region_lemmas", "pattern_minimality",
]

Check = Callable[..., tuple[Status, dict[str, Any]]]

P53241, P52431, P632541 = map(parse_perm, ("53241", "52431", "632541"))
P653421, P526413 = map(parse_perm, ("653421", "526413"))


class UsageError(ValueError):
    """A configuration the harness refuses to run."""


@lru_cache(maxsize=None)
def ms_cached(w: tuple[int, ...]) -> tuple[Permutation, ...]:
    return tuple(sorted(ms(w)))


def _strs(ws) -> list[str]:
    return [str(x) for x in ws]


def _status(bad: list[str]) -> Status:
    return Status.FAIL if bad else Status.PASS


# ---- per-permutation checks -------------------------------------------------

def _theorem_hyp(w) -> tuple[bool, tuple[Permutation, ...], Permutation | None]:
    m = ms_cached(tuple(w))
    six = first_member(w, PatternList.SIX)
    return len(m) == 1 and six is None, m, six


def check_theorem_main(w, table: KLTable):
    hyp, m, six = _theorem_hyp(w)
    st = kl_stat(w, table)
    detail: dict[str, Any] = {"kl_stat": st, "ms": _strs(m), "six": six and str(six)}
    bad = []
    if hyp:
        h = min_height(w)
        P = table.id_poly(w)
        detail.update(h=h, P=str(P))
        if P != ONE + PolyQ.monomial(h):
            bad.append("forward")
    if st == 2 and not hyp:
        bad.append("converse")
    if bad:
        detail["violated"] = bad
    return _status(bad), detail


def check_corollary(w, table: KLTable):
    hyp, m, _ = _theorem_hyp(w)
    if not hyp:
        return Status.SKIP, {}
    v, h = m[0], min_height(w)
    target = ONE + PolyQ.monomial(h)
    wrong = []
    for u, P in sorted(table.column(w).items()):
        expect = target if bruhat_leq(u, v) else ONE
        if P != expect:
            wrong.append({"u": str(Permutation(u)), "P": str(P), "expected": str(expect)})
    detail: dict[str, Any] = {"v": str(v), "h": h}
    if wrong:
        detail["mismatches"] = wrong
    return _status(wrong), detail


def check_kl2(w, table: KLTable):
    st = kl_stat(w, table)
    hit = first_member(w, PatternList.SIXTY_SIX)
    detail = {"kl_stat": st, "pattern": hit and str(hit)}
    return _status([] if (st <= 2) == (hit is None) else ["equivalence"]), detail


def check_ms_crosschecks(w, table: KLTable):
    m = set(ms_cached(tuple(w)))
    oracle = ms_oracle_via_kl(w, table)
    dotted = dotted_filter_occurrences(w)
    bad = []
    if m != oracle:
        bad.append("oracle")
    if len(dotted) != len(m):
        bad.append("dotted_count")
    detail: dict[str, Any] = {"ms": _strs(sorted(m)), "dotted": len(dotted)}
    if "oracle" in bad:
        detail["oracle"] = _strs(sorted(oracle))
    if bad:
        detail["violated"] = bad
    return _status(bad), detail


def lemma_me_subpattern(w, k: int) -> tuple[int, ...] | None:
    """
    Z as the union of the index sets of the first k surviving 4231/3412
    occurrences, each standing for a distinct component; None if there are
    fewer than k.
    """
    occ = dotted_filter_occurrences(w)
    if len(occ) < k:
        return None
    return tuple(sorted(set().union(*occ[:k])))


def check_lemma_me(w, table: KLTable, k: int = 1):
    if len(ms_cached(tuple(w))) < k:
        return Status.SKIP, {}
    Z = lemma_me_subpattern(w, k)
    if Z is None:
        return Status.FAIL, {"violated": ["too_few_occurrences"]}
    v = flatten(w, Z)
    mv = len(ms_cached(tuple(v)))
    bad = []
    if len(Z) > 4 * k:
        bad.append("size")
    if mv < k:
        bad.append("components")
    detail: dict[str, Any] = {"k": k, "Z": list(Z), "v": str(v), "ms_v": mv}
    if bad:
        detail["violated"] = bad
    return _status(bad), detail


def _form_ab(P: PolyQ) -> tuple[int, int] | None:
    t = P.terms()
    if t.get(0) != 1 or len(t) != 3 or any(c != 1 for c in t.values()):
        return None
    a, b = sorted(e for e in t if e)
    return a, b


def _form_2a(P: PolyQ) -> int | None:
    t = P.terms()
    if t.get(0) != 1 or len(t) != 2:
        return None
    (a, c), = ((e, c) for e, c in t.items() if e)
    return a if c == 2 else None


def check_conjecture1(w, table: KLTable):
    st = kl_stat(w, table)
    if st > 3:
        return Status.PASS, {"kl_stat": st}
    m = len(ms_cached(tuple(w)))
    detail: dict[str, Any] = {"kl_stat": st, "ms_size": m}
    bad = []
    if m > 3:
        bad.append("part1")
    if st == 3:
        P = table.id_poly(w)
        detail["P"] = str(P)
        ab, a2 = _form_ab(P), _form_2a(P)
        if m in (1, 2) and ab is None:
            bad.append(f"part{m + 1}")
            if a2 is not None:
                detail["doubled_form"] = True
        if m == 3 and a2 is None:
            bad.append("part4")
    if bad:
        detail["violated"] = bad
        detail["note"] = "counterexample to the conjecture, not a harness error"
    return _status(bad), detail


def region_lemma_violations(w) -> tuple[list[str], list[str]]:
    """(applicable checks, violated checks) among the rescomb invariants for w."""
    m = len(ms_cached(tuple(w)))
    used, bad = [], []
    if is_covexillary(w):
        rep = covex_report(w)
        used.append("covex_correspondence")
        if len(rep.non_inclusion_indices) != m:
            bad.append("covex_correspondence")
        if m == 1:
            used.append("covexonecomp")
            if contains(w, P53241) and contains(w, P52431) and not contains(w, P632541):
                bad.append("covexonecomp")
            i = rep.non_inclusion_indices[0]
            e = rep.entries[i - 1]
            if not contains(w, P653421):
                used.append("covexfibub")
                if min(e.p, e.q) != e.r + 1:
                    bad.append("covexfibub")
            if not contains(w, P53241):
                used.append("covexfiblb")
                if rep.r_before(i) != e.r - 1:
                    bad.append("covexfiblb")
        return used, bad
    used.append("rv")
    if rv_violations(w):
        bad.append("rv")
    if m != 1:
        return used, bad
    used += ["onecompempty", "MNempty"]
    bad += [f"onecompempty({r})" for r in check_onecompempty(w)]
    bad += [f"MNempty({r})" for r in check_MNempty(w).violations]
    cd = cortez_data(w)
    if cd.h > 1 and not contains(w, P526413):
        used.append("exccomb")
        u = cd.u
        if length(w) - length(u) != cd.h or not bruhat_leq(u, w):
            bad.append("exccomb(length)")
        R = exceptional_R_region(w)
        n = len(w)
        if any(rank(u, p, q) - rank(w, p, q) != ((p, q) in R)
               for p in range(1, n + 1) for q in range(1, n + 1)):
            bad.append("exccomb(rank)")
        if exceptional_R_graph_points(w):
            bad.append("exccomb(graph)")
    return used, bad


def check_region_lemmas(w, table: KLTable):
    used, bad = region_lemma_violations(w)
    detail: dict[str, Any] = {"checked": used}
    if bad:
        detail["violated"] = bad
    return _status(bad), detail


# ---- sweeping ---------------------------------------------------------------

_TABLES: dict[int, KLTable] = {}
_CTX: dict[str, Any] = {}


def table_for(cfg: SuiteConfig) -> KLTable:
    """The KL table for S_n: dense up to MAX_DENSE_N, loaded from or saved to cfg.cache."""
    n = cfg.n
    t = _TABLES.get(n)
    if t is not None:
        return t
    if cfg.cache is not None and cfg.cache.exists():
        t = table_load(cfg.cache)
        if t.n != n:
            raise UsageError(f"cache {cfg.cache} holds S_{t.n}, not S_{n}")
    elif n <= MAX_DENSE_N:
        t = kl_table_build(n)
        if cfg.cache is not None:
            table_save(t, cfg.cache)
    else:
        t = SparseKLTable(n)
    _TABLES[n] = t
    return t


def _work(w):
    return _CTX["check"](w, _CTX["table"], **_CTX["params"])


def _sweep(check: Check, table: KLTable, perms: Sequence, jobs: int, params: dict) -> list:
    _CTX.update(check=check, table=table, params=params)
    try:
        if jobs > 1 and "fork" in mp.get_all_start_methods():
            # workers inherit the table through fork; nothing large is pickled
            with mp.get_context("fork").Pool(jobs) as pool:
                return pool.map(_work, perms, chunksize=max(1, len(perms) // (8 * jobs)))
        return [_work(w) for w in perms]
    finally:
        _CTX.clear()


def _guard(cfg: SuiteConfig) -> None:
    if cfg.n > MAX_DENSE_N:
        if not cfg.allow_long:
            raise UsageError(f"n = {cfg.n} sweeps take hours; pass --allow-long to run them")
        print(f"warning: S_{cfg.n} sweep uses the sparse engine and may run for hours",
              file=sys.stderr)


def run_suite(name: str, cfg: SuiteConfig, **params) -> Summary:
    try:
        check = SUITES[name]
    except KeyError:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    _guard(cfg)
    t0 = time.perf_counter()
    table = table_for(cfg)
    perms = all_perms(cfg.n)
    results = _sweep(check, table, perms, cfg.jobs, params)
    records = [VerificationRecord(name, cfg.n, w, st, det) for w, (st, det) in zip(perms, results)]
    if name == "kl2_patterns":
        records += pattern_minimality()
    records.sort(key=lambda r: (len(r.w), tuple(r.w)))
    s = Summary(name, cfg.n, records, time.perf_counter() - t0)
    if cfg.time_budget is not None and s.seconds > cfg.time_budget:
        print(f"warning: {name} took {s.seconds:.0f}s, over the {cfg.time_budget:.0f}s budget",
              file=sys.stderr)
    return s


def _stat(v: Sequence[int]) -> int:
    t = _TABLES.get(len(v))
    return kl_stat(v, t if isinstance(t, DenseKLTable) else default_table(len(v)))


def pattern_minimality() -> list[VerificationRecord]:
    """Each listed pattern lies outside KL_2 while all its proper subpatterns lie inside."""
    out = []
    for v in pattern_list(PatternList.SIXTY_SIX):
        st = _stat(v)
        subs = {flatten(v, Z) for k in range(1, len(v)) for Z in combinations(range(1, len(v) + 1), k)}
        outside = sorted(s for s in subs if _stat(s) > 2)
        bad = (["kl_stat"] if st <= 2 else []) + (["minimality"] if outside else [])
        detail: dict[str, Any] = {"kl_stat": st, "subpatterns": len(subs)}
        if outside:
            detail["outside_kl2"] = _strs(outside)
        if bad:
            detail["violated"] = bad
        out.append(VerificationRecord("kl2_patterns", len(v), v, _status(bad), detail))
    return out


SUITES: dict[str, Check] = {
    "theorem_main": check_theorem_main,
    "corollary": check_corollary,
    "kl2_patterns": check_kl2,
    "ms_crosschecks": check_ms_crosschecks,
    "lemma_me": check_lemma_me,
    "conjecture1": check_conjecture1,
    "region_lemmas": check_region_lemmas,
}


def verify_theorem_main(cfg: SuiteConfig) -> Summary:
    return run_suite("theorem_main", cfg)


def verify_corollary(cfg: SuiteConfig) -> Summary:
    return run_suite("corollary", cfg)


def verify_kl2_patterns(cfg: SuiteConfig) -> Summary:
    return run_suite("kl2_patterns", cfg)


def verify_ms_crosschecks(cfg: SuiteConfig) -> Summary:
    return run_suite("ms_crosschecks", cfg)


def verify_lemma_me(cfg: SuiteConfig, k: int) -> Summary:
    if k < 1:
        raise UsageError(f"k must be positive, got {k}")
    return run_suite("lemma_me", cfg, k=k)


def verify_conjecture1(cfg: SuiteConfig) -> Summary:
    return run_suite("conjecture1", cfg)


def verify_region_lemmas(cfg: SuiteConfig) -> Summary:
    return run_suite("region_lemmas", cfg)
