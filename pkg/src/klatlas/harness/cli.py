"""
The `klatlas` command line.

    klatlas verify <suite> [--n N] [--jobs J] [--format json|text] [--cache PATH] [--allow-long]
    klatlas compute <op> <perm>... [--format json|text]

Exit status: 0 when every check passes, 1 on any failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from ..klengine import KLConsistencyError, KLTableFileError, kl_poly, kl_stat
from ..permcore import Permutation, PermutationError, coessential_set, parse_perm
from ..rescomb import cortez_data, min_3412_embedding
from ..singloc import ms
from .report import SuiteConfig, write_jsonl, write_text
from .suites import SUITES, UsageError, run_suite

__all__ = ["main", "compute"]

OPS = ("kl", "ms", "coess", "min3412", "cortez", "klstat")
_ARITY = {"kl": 2}


def compute(op: str, perms: Sequence[Permutation]) -> tuple[Any, str]:
    """(JSON payload, text rendering) for one compute operation."""
    want = _ARITY.get(op, 1)
    if len(perms) != want:
        raise UsageError(f"{op} takes {want} permutation(s), got {len(perms)}")
    w = perms[-1]
    if op == "kl":
        P = kl_poly(perms[0], w)
        return {"u": str(perms[0]), "w": str(w), "P": str(P), "coeffs": list(P.coeffs)}, str(P)
    if op == "klstat":
        st = kl_stat(w)
        return {"w": str(w), "kl_stat": st}, str(st)
    if op == "ms":
        labels = [str(u) for u in sorted(ms(w))]
        return {"w": str(w), "ms": labels}, "\n".join(labels) if labels else "(smooth)"
    if op == "coess":
        rows = [{"p": e.p, "q": e.q, "r": e.r, "inclusion": e.inclusion} for e in coessential_set(w)]
        text = "\n".join(f"p={r['p']} q={r['q']} r={r['r']}" + (" inclusion" if r["inclusion"] else "")
                         for r in rows)
        return {"w": str(w), "coessential": rows}, text or "(empty)"
    if op == "min3412":
        e = min_3412_embedding(w)
        if e is None:
            return {"w": str(w), "embedding": None}, "none (w avoids 3412)"
        d = _emb_dict(e)
        return {"w": str(w), "embedding": d}, _kv(d)
    if op == "cortez":
        cd = cortez_data(w)
        d = {**_emb_dict(cd.emb), "alpha'": cd.alpha_prime, "delta'": cd.delta_prime,
             "a'": cd.a_prime, "d'": cd.d_prime, "kappa": cd.kappa,
             "I": sorted(cd.I), "J": sorted(cd.J), "v": str(cd.v), "sigma": str(cd.sigma),
             "u": str(cd.u), "M": cd.M, "N": cd.N}
        return {"w": str(w), **d}, _kv(d)
    raise UsageError(f"unknown operation {op!r}; choose from {', '.join(OPS)}")


def _emb_dict(e) -> dict[str, int]:
    return {"a": e.a, "b": e.b, "c": e.c, "d": e.d, "alpha": e.alpha, "beta": e.beta,
            "gamma": e.gamma, "delta": e.delta, "h": e.height, "amplitude": e.amplitude}


def _kv(d: dict[str, Any]) -> str:
    def fmt(x):
        return ",".join(map(str, x)) if isinstance(x, list) else str(x)
    return " ".join(f"{k}={fmt(v)}" for k, v in d.items())


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="permutation size for sweeps")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--cache", default=None, help="KL table file to load or create")
    common.add_argument("--allow-long", action="store_true", help="permit n >= 8 sweeps")
    common.add_argument("--time-budget", type=float, default=None, help="seconds before warning")

    p = argparse.ArgumentParser(prog="klatlas", description=__doc__.split("\n")[1])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite over S_n")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--k", type=int, default=1, help="component count for lemma_me")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")
    c = sub.add_parser("compute", parents=[common], help="evaluate one operation")
    c.add_argument("op", choices=OPS)
    c.add_argument("perms", nargs="+", metavar="PERM")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    p = _parser()
    args = p.parse_args(argv)
    try:
        if args.command == "compute":
            perms = []
            for i, text in enumerate(args.perms, 1):
                try:
                    perms.append(parse_perm(text))
                except PermutationError as exc:
                    raise PermutationError(f"argument {i}: {exc}") from None
            payload, text = compute(args.op, perms)
            print(json.dumps(payload, sort_keys=True) if args.format == "json" else text)
            return 0
        if args.n is None:
            raise UsageError("verify needs --n")
        cfg = SuiteConfig(n=args.n, jobs=args.jobs, format=args.format, cache=args.cache,
                          time_budget=args.time_budget, allow_long=args.allow_long)
        params = {"k": args.k} if args.suite == "lemma_me" else {}
        summary = run_suite(args.suite, cfg, **params)
    except (UsageError, PermutationError, KLTableFileError, ValueError) as exc:
        print(f"klatlas: error: {exc}", file=sys.stderr)
        return 2
    except KLConsistencyError as exc:
        print(f"klatlas: internal inconsistency: {exc}", file=sys.stderr)
        return 1
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        (write_jsonl if cfg.format == "json" else write_text)(summary, out)
    finally:
        if args.out:
            out.close()
    if cfg.format == "json":
        print(summary.line(), file=sys.stderr)
    return 0 if summary.ok else 1


if __name__ == "__main__":
    sys.exit(main())
