"""Command line interface.

Global flags (--seed, --out, --csv, --budget, --override-hypotheses)
come before the subcommand:

    csl --seed 7 verify thm1 --r-d 5 --d 2
    csl jcount --r 2 --d 2 --V 10 --method mitm
    csl energy cong --q 101 --N 9 --U 9
    csl factor 4199
    csl char eval --q 15 --indices 1,2 --n 7
    csl compare-exponents --N 1000 --q 100003 --d 2 --r 5 --delta 0.05
    csl cache ls
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cache as cachemod
from .campaigns import CampaignConfig, compare_exponents, run_campaign
from .characters import crt_character
from .energy import cong_energy, ff_box_energy, linear_forms_energy
from .errors import CharSumLabError
from .ffield import build_field
from .meanvalues import (VinogradovParams, vinogradov_count_mitm,
                         vinogradov_count_naive)
from .modular import factor_squarefree
from .reports import emit_report
from .sums import LinearSystem

VERIFY_TARGETS = ("thm1", "thm2", "thm3", "thm4", "thm5",
                  "lemma1", "lemma2", "lemma3", "lemma4", "lemma5", "lemma6",
                  "lemma7", "lemma8", "lemma9", "weil", "smoothing", "phi")


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip() != ""]


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csl", description="mixed character sum laboratory")
    parser.add_argument("--seed", type=int, default=0, help="campaign seed (u64)")
    parser.add_argument("--out", type=str, default=None, help="JSON report path")
    parser.add_argument("--csv", type=str, default=None, help="CSV report path")
    parser.add_argument("--budget", type=int, default=10**9,
                        help="enumeration budget in tuple operations")
    parser.add_argument("--override-hypotheses", action="store_true",
                        help="run sweeps outside the stated lemma hypotheses")
    sub = parser.add_subparsers(dest="command", required=True)

    p_factor = sub.add_parser("factor", help="factor a squarefree modulus")
    p_factor.add_argument("q", type=int)

    p_char = sub.add_parser("char", help="character operations")
    char_sub = p_char.add_subparsers(dest="char_command", required=True)
    p_eval = char_sub.add_parser("eval", help="evaluate a character")
    p_eval.add_argument("--q", type=int, required=True)
    p_eval.add_argument("--indices", type=_int_list, required=True,
                        help="comma-separated index per prime factor")
    p_eval.add_argument("--n", type=int, required=True)

    p_j = sub.add_parser("jcount", help="Vinogradov system count")
    p_j.add_argument("--r", type=int, required=True)
    p_j.add_argument("--d", type=int, required=True)
    p_j.add_argument("--V", type=int, required=True)
    p_j.add_argument("--method", choices=("naive", "mitm"), default="mitm")
    p_j.add_argument("--no-cache", action="store_true")

    p_energy = sub.add_parser("energy", help="multiplicative energy counts")
    energy_sub = p_energy.add_subparsers(dest="energy_command", required=True)
    p_cong = energy_sub.add_parser("cong")
    p_cong.add_argument("--q", type=int, required=True)
    p_cong.add_argument("--M", type=int, default=0)
    p_cong.add_argument("--N", type=int, required=True)
    p_cong.add_argument("--U", type=int, required=True)
    p_cong.add_argument("--method", choices=("hashed", "naive"), default="hashed")
    p_ffbox = energy_sub.add_parser("ffbox")
    p_ffbox.add_argument("--q", type=int, required=True)
    p_ffbox.add_argument("--n", type=int, required=True)
    p_ffbox.add_argument("--H", type=int, required=True)
    p_ffbox.add_argument("--U", type=int, required=True)
    p_ffbox.add_argument("--method", choices=("hashed", "naive"), default="hashed")
    p_lin = energy_sub.add_parser("linforms")
    p_lin.add_argument("--q", type=int, required=True)
    p_lin.add_argument("--matrix", type=_int_list, required=True,
                       help="row-major n*n integer entries")
    p_lin.add_argument("--H", type=int, required=True)
    p_lin.add_argument("--U", type=int, required=True)
    p_lin.add_argument("--method", choices=("hashed", "naive"), default="hashed")

    p_verify = sub.add_parser("verify", help="run a verification campaign")
    p_verify.add_argument("target", choices=VERIFY_TARGETS)
    p_verify.add_argument("--d", type=int, default=2)
    p_verify.add_argument("--r", type=int, default=None)
    p_verify.add_argument("--r-d", dest="r_d", type=int, default=None)
    p_verify.add_argument("--s", type=int, default=2)
    p_verify.add_argument("--q-min", type=int, default=3)
    p_verify.add_argument("--q-max", type=int, default=300)
    p_verify.add_argument("--field-max", type=int, default=4096)
    p_verify.add_argument("--samples", type=int, default=5)
    p_verify.add_argument("--chars-per-modulus", type=int, default=2)
    p_verify.add_argument("--V-list", dest="V_list", type=_int_list, default=None)
    p_verify.add_argument("--V-phi", dest="V_phi", type=int, default=100)
    p_verify.add_argument("--tuple-cap", type=int, default=8)
    p_verify.add_argument("--grid", type=int, default=1024)
    p_verify.add_argument("--constant", type=float, default=None,
                          help="pass threshold on the max LHS/RHS ratio")
    p_verify.add_argument("--slack", type=float, default=0.0)
    p_verify.add_argument("--threads", type=int, default=1)
    p_verify.add_argument("--use-cache", action="store_true")
    p_verify.add_argument("--diagnostics", action="store_true")
    p_verify.add_argument("--basis", type=_int_list, default=None,
                          help="row-major n*n working-basis matrix for field targets")

    p_cmp = sub.add_parser("compare-exponents", help="exponent comparison table")
    p_cmp.add_argument("--N", type=int, required=True)
    p_cmp.add_argument("--q", type=int, required=True)
    p_cmp.add_argument("--d", type=int, required=True)
    p_cmp.add_argument("--r", type=int, required=True)
    p_cmp.add_argument("--delta", type=float, default=0.05)

    p_cache = sub.add_parser("cache", help="J-count cache maintenance")
    p_cache.add_argument("cache_command", choices=("ls", "clear"))

    return parser


def _cmd_factor(args) -> int:
    m = factor_squarefree(args.q)
    _print_json({"q": m.q, "primes": list(m.primes)})
    return 0


def _cmd_char_eval(args) -> int:
    m = factor_squarefree(args.q)
    chi = crt_character(m, args.indices)
    value = chi.value(args.n)
    _print_json({"q": args.q, "indices": args.indices, "n": args.n,
                 "value_re": value.real, "value_im": value.imag,
                 "primitive": chi.is_primitive, "order": chi.order})
    return 0


def _cmd_jcount(args) -> int:
    p = VinogradovParams(args.r, args.d, args.V)
    if args.method == "naive":
        count = vinogradov_count_naive(p, budget=args.budget)
    elif args.no_cache:
        count = vinogradov_count_mitm(p, budget=args.budget)
    else:
        count = cachemod.get_j_count(args.r, args.d, args.V, budget=args.budget)
    _print_json({"r": args.r, "d": args.d, "V": args.V,
                 "method": args.method, "count": count})
    return 0


def _cmd_energy(args) -> int:
    if args.energy_command == "cong":
        count = cong_energy(args.q, args.M, args.N, args.U, method=args.method,
                            override_hypotheses=args.override_hypotheses)
        payload = {"variant": "cong", "q": args.q, "M": args.M, "N": args.N,
                   "U": args.U, "count": count}
    elif args.energy_command == "ffbox":
        spec = build_field(args.q, args.n)
        count = ff_box_energy(spec, args.H, args.U, method=args.method,
                              override_hypotheses=args.override_hypotheses)
        payload = {"variant": "ffbox", "q": args.q, "n": args.n, "H": args.H,
                   "U": args.U, "count": count}
    else:
        entries = args.matrix
        n = int(round(len(entries) ** 0.5))
        if n * n != len(entries):
            raise CharSumLabError("matrix must have n*n entries")
        L = LinearSystem(tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n)))
        count = linear_forms_energy(args.q, L, args.H, args.U, method=args.method,
                                    override_hypotheses=args.override_hypotheses)
        payload = {"variant": "linforms", "q": args.q, "matrix": entries,
                   "H": args.H, "U": args.U, "count": count}
    _print_json(payload)
    return 0


def _cmd_verify(args) -> int:
    target = args.target
    basis = None
    if args.basis:
        n = int(round(len(args.basis) ** 0.5))
        if n * n != len(args.basis):
            raise CharSumLabError("basis must have n*n entries")
        basis = tuple(tuple(args.basis[i * n:(i + 1) * n]) for i in range(n))
    cfg = CampaignConfig(
        target=target, seed=args.seed, d=args.d, r=args.r, r_d=args.r_d,
        s=args.s, q_min=args.q_min, q_max=args.q_max, field_max=args.field_max,
        samples=args.samples, chars_per_modulus=args.chars_per_modulus,
        V_list=tuple(args.V_list) if args.V_list else None, V_phi=args.V_phi,
        tuple_cap=args.tuple_cap, grid=args.grid, slack=args.slack,
        constant=args.constant, budget=args.budget,
        override_hypotheses=args.override_hypotheses, use_cache=args.use_cache,
        diagnostics=args.diagnostics, threads=args.threads, basis=basis,
        out=args.out, csv=args.csv)
    report = run_campaign(cfg)
    agg = report.aggregate
    print(f"target={target} records={len(report.records)} "
          f"max_ratio={agg.get('max_ratio')} passed={report.passed}")
    if args.out:
        print(f"report written to {args.out}")
    return 0 if report.passed else 1


def _cmd_compare(args) -> int:
    table = compare_exponents(args.N, args.q, args.d, args.r, args.delta)
    _print_json(table)
    return 0


def _cmd_cache(args) -> int:
    if args.cache_command == "ls":
        entries = cachemod.cache_ls()
        _print_json({"path": str(cachemod.cache_file()),
                     "entries": [{"r": k[0], "d": k[1], "V": k[2], "count": v}
                                 for k, v in entries]})
    else:
        removed = cachemod.cache_clear()
        _print_json({"path": str(cachemod.cache_file()), "removed": removed})
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "factor":
            return _cmd_factor(args)
        if args.command == "char":
            return _cmd_char_eval(args)
        if args.command == "jcount":
            return _cmd_jcount(args)
        if args.command == "energy":
            return _cmd_energy(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "compare-exponents":
            return _cmd_compare(args)
        if args.command == "cache":
            return _cmd_cache(args)
    except CharSumLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
