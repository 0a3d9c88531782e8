"""``verify``: run the identity suite from the command line.

Exit status is 0 when every selected identity holds, 1 when any fails and
2 when any could not be evaluated.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import QSeriesError
from .verifier import builtin_suite, load_suite, run_suite, select


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify", description="Check q-series identities coefficientwise.")
    p.add_argument("--suite", action="append", metavar="FILE",
                   help="suite file to use instead of the built-in suite (repeatable)")
    pick = p.add_mutually_exclusive_group()
    pick.add_argument("--only", action="append", metavar="NAME", help="run only this identity (repeatable)")
    pick.add_argument("--tag", action="append", metavar="TAG", help="run identities carrying this tag (repeatable)")
    p.add_argument("--order", type=int, metavar="N", help="override every identity's order")
    p.add_argument("--json", metavar="PATH", help="write a JSON report ('-' for stdout)")
    p.add_argument("--jobs", type=int, default=1, metavar="K", help="worker processes (default 1)")
    p.add_argument("--list", action="store_true", help="list the selected identities and exit")
    return p


def _format_row(r) -> str:
    detail = ""
    if r.first_mismatch is not None:
        mm = r.first_mismatch
        detail = f"q^{mm.exponent}: lhs {mm.lhs}, rhs {mm.rhs}"
    elif r.error:
        detail = r.error
    return f"{r.identity:<28} {r.order:>5} {r.status:<6} {r.ms:>10.1f}  {detail}".rstrip()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.order is not None and args.order <= 0:
        print("verify: --order must be positive", file=sys.stderr)
        return 2
    if args.jobs < 1:
        print("verify: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        if args.suite:
            specs = [s for path in args.suite for s in load_suite(path)]
        else:
            specs = builtin_suite()
    except (OSError, QSeriesError, ValueError) as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2
    chosen = select(specs, names=args.only, tags=args.tag)
    if not chosen:
        print("verify: warning: no identity matches the selection", file=sys.stderr)

    if args.list:
        for s in chosen:
            print(s.text())
        return 0

    reports = run_suite(chosen, order=args.order, jobs=args.jobs)
    print(f"{'identity':<28} {'order':>5} {'status':<6} {'ms':>10}")
    for r in reports:
        print(_format_row(r))
    counts = {k: sum(r.status == k for r in reports) for k in ("ok", "fail", "error")}
    print(f"{len(reports)} checked: {counts['ok']} ok, {counts['fail']} fail, {counts['error']} error")

    if args.json:
        payload = json.dumps([r.to_json() for r in reports], indent=2)
        if args.json == "-":
            print(payload)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")

    if counts["error"]:
        return 2
    if counts["fail"]:
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
