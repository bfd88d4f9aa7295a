"""
Command-line driver.

Exit codes: 0 success, 1 mathematical or validation failure, 2 usage or
parse failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import dieudonne, formats, strata, verify
from .formats import FormatError
from .weyl import reduced_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_ENUMERATE_G = 8


class UsageError(Exception):
    pass


def _write(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _print(text: str = "") -> None:
    print(text, flush=True)


def cmd_enumerate(args) -> int:
    if not 1 <= args.g <= MAX_ENUMERATE_G:
        raise UsageError(f"--g must be in 1..{MAX_ENUMERATE_G}")
    records = strata.all_strata(args.g, jobs=args.jobs)
    _write(formats.emit_table(records, args.format), args.out)
    return EXIT_OK


def _stratum_lines(r: strata.StratumRecord) -> list[str]:
    return [
        f"g        {r.g}",
        f"phi      {r.phi}",
        f"psi      {r.psi}",
        f"dim      {r.dim}",
        f"a        {r.a_number}",
        f"f        {r.p_rank}",
        f"pi       {formats.signed_text(r.frobenius_perm)}",
        f"w_min    {formats.signed_text(r.w_min)}",
        f"word     {formats.word_text(reduced_word(r.w_min))}",
        f"kraft    {';'.join(map(str, r.kraft))}",
    ]


def cmd_stratum(args) -> int:
    try:
        phi = strata.ElementarySequence.parse(args.phi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if phi.g > 20:
        raise UsageError("phi is longer than the supported g <= 20")
    _print("\n".join(_stratum_lines(strata.stratum(phi))))
    return EXIT_OK


def cmd_poset(args) -> int:
    limit = strata.MAX_POINTWISE_G if args.order == "pointwise" else strata.MAX_BRUHAT_G
    if not 1 <= args.g <= limit:
        raise UsageError(f"--g must be in 1..{limit} for --order {args.order}")
    records = strata.all_strata(args.g, jobs=args.jobs)
    poset = strata.eo_poset(args.g, args.order, records)
    if args.dot:
        Path(args.dot).write_bytes(formats.emit_dot(poset))
    _print(f"g={args.g} order={args.order}: {len(poset.records)} nodes, {len(poset.edges)} edges")
    if args.g <= strata.MAX_BRUHAT_G:
        cmp = strata.compare_posets(args.g, records)
        _print(cmp.report())
        return EXIT_OK if cmp.agree else EXIT_FAIL
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        m = formats.read_module(Path(args.module).read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {args.module}: {exc.strerror}") from None
    except FormatError as exc:
        raise UsageError(f"{args.module}: {exc}") from None
    violations = dieudonne.validate(m)
    if violations:
        _print("invalid module")
        for v in violations:
            _print(f"  {v}")
        return EXIT_FAIL
    _print("valid module")
    try:
        flag = dieudonne.canonical_filtration(m)
        t = dieudonne.final_type(m, flag)
    except dieudonne.ClassificationError as exc:
        _print(f"classification failed: {exc}")
        return EXIT_FAIL
    _print(f"filtration dims  {','.join(map(str, t.flag_dims))}")
    _print(f"psi              {t.psi}")
    if t.phi is not None:
        _print(f"phi              {t.phi}")
        _print(f"dim              {strata.dimension(t.phi)}")
    _print(f"a                {dieudonne.a_number(m)}")
    _print(f"f                {dieudonne.p_rank(m)}")
    _print(f"kraft            {';'.join(map(str, dieudonne.kraft_decomposition(t)))}")
    return EXIT_OK


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"--primes: cannot parse {text!r}") from None
    from .fields import is_prime
    bad = [p for p in primes if not is_prime(p)]
    if bad or not primes:
        raise UsageError(f"--primes: {bad or 'empty list'} not prime")
    return primes


def cmd_verify(args) -> int:
    if not 1 <= args.max_g <= 8:
        raise UsageError("--max-g must be in 1..8")
    primes = _parse_primes(args.primes)
    suites = verify.SUITES if args.suite == "all" else (args.suite,)
    results = verify.run(suites, args.max_g, primes, jobs=args.jobs)
    for r in results:
        _print(r.summary())
    ok = all(r.passed for r in results)
    _print("ALL PASS" if ok else "FAILURES")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eostrata", description="Ekedahl-Oort strata combinatorics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="table of all strata for a given g")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--format", choices=formats.TABLE_FORMATS, default="table")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("stratum", help="invariants of one stratum")
    p.add_argument("--phi", required=True, help='elementary sequence, e.g. "0,1,1"')
    p.set_defaults(func=cmd_stratum)

    p = sub.add_parser("poset", help="Hasse diagram of strata")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--order", choices=("pointwise", "bruhat"), default="pointwise")
    p.add_argument("--dot")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("classify", help="classify a BT1 module document")
    p.add_argument("--module", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run the oracle suites")
    p.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    p.add_argument("--max-g", type=int, default=4)
    p.add_argument("--primes", default="2,3")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
