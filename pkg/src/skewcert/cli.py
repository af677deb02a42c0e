"""Command-line entry point: wires the presets and certifications together
and emits machine-readable reports.

Report schema (version 1):

    { "schema": 1, "command": str, "params": {...},
      "verdicts": [ {"claim", "paper_label", "verdict", "data"}... ],
      "elapsed_ms": int, "seed": int }

Rational parameters and report values are serialized as "num/den" strings.
Exit codes: 0 all certified, 2 relation or counterexample found, 3
inconclusive (truncation ceiling), 1 usage or internal error.  Reports are
deterministic given (command, flags, seed); elapsed_ms is the only field
that varies between runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import harness
from .errors import KernelError
from .pbw import LieAlg, jacobi_check
from .scalar import rat


def _json_default(o):
    if isinstance(o, Fraction):
        return f"{o.numerator}/{o.denominator}"
    return repr(o)


def emit_report(command: str, params: dict, verdicts: list, seed: int,
                elapsed_ms: int, output: str | None) -> None:
    report = {
        "schema": 1,
        "command": command,
        "params": params,
        "verdicts": verdicts,
        "elapsed_ms": elapsed_ms,
        "seed": seed,
    }
    text = json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def parse_lie_algebra(text: str) -> LieAlg:
    """Text format for non-preset algebras:

        basis u v w
        weight u = 1
        bracket v u = w            # or sums like  2*w + -1/3*u
        bracket w u = 0

    Unlisted brackets are zero; unlisted weights default to 1.  Either order
    of the bracket pair is accepted and stored antisymmetrically.
    """
    basis: list[str] = []
    weights: dict[str, int] = {}
    brackets: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "basis":
            basis = parts[1:]
        elif parts[0] == "weight":
            if len(parts) != 4 or parts[2] != "=":
                raise ValueError(f"line {lineno}: expected 'weight NAME = INT'")
            weights[parts[1]] = int(parts[3])
        elif parts[0] == "bracket":
            if len(parts) < 5 or parts[3] != "=":
                raise ValueError(f"line {lineno}: expected 'bracket J I = TERMS'")
            j_name, i_name = parts[1], parts[2]
            rhs = " ".join(parts[4:])
            terms = []
            if rhs.strip() != "0":
                for piece in rhs.replace("- ", "+ -").split("+"):
                    piece = piece.strip()
                    if not piece:
                        continue
                    if "*" in piece:
                        coeff_s, name = piece.split("*", 1)
                        coeff = rat(coeff_s.strip())
                    elif piece.startswith("-"):
                        coeff, name = rat(-1), piece[1:]
                    else:
                        coeff, name = rat(1), piece
                    terms.append((coeff, name.strip()))
            brackets[(j_name, i_name)] = terms
        else:
            raise ValueError(f"line {lineno}: unknown directive {parts[0]!r}")
    if not basis:
        raise ValueError("missing 'basis' line")
    index = {b: i for i, b in enumerate(basis)}
    table: dict = {}
    for (j_name, i_name), terms in brackets.items():
        if j_name not in index or i_name not in index:
            raise ValueError(f"bracket mentions unknown basis element: {j_name} {i_name}")
        j, i = index[j_name], index[i_name]
        entries = [(index[k], c) for c, k in terms]
        if j == i:
            if entries:
                raise ValueError(f"[{j_name}, {i_name}] must be zero")
            continue
        if j < i:
            j, i = i, j
            entries = [(k, -c) for k, c in entries]
        merged = dict(table.get((j, i), ()))
        for k, c in entries:
            merged[k] = merged.get(k, Fraction(0)) + c
        table[(j, i)] = tuple(merged.items())
    weight_list = [weights.get(b, 1) for b in basis]
    return LieAlg("user", basis, table, weights=weight_list)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=harness.DEFAULT_SEED)
    common.add_argument("--output", help="also write the JSON report to this path")
    common.add_argument("--jobs", type=int, default=1,
                        help="parallelism degree recorded in the report; word "
                             "evaluation is deterministic and independent of it")
    ap = argparse.ArgumentParser(
        prog="skewcert",
        description="exact certifications for free symmetric subalgebras of "
                    "division rings built from enveloping algebras",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    cert = sub.add_parser("certify", help="run a certification").add_subparsers(
        dest="target", required=True)
    h = cert.add_parser("heisenberg", parents=[common])
    h.add_argument("--max-word-len", type=int, default=3)
    h.add_argument("--order", type=int, default=32)
    d = cert.add_parser("twodim", parents=[common])
    d.add_argument("--max-word-len", type=int, default=3)
    d.add_argument("--order", type=int, default=16)
    g = cert.add_parser("groupring", parents=[common])
    g.add_argument("--max-word-len", type=int, default=6)
    c = cert.add_parser("cauchon", parents=[common])
    c.add_argument("--alpha", required=True)
    c.add_argument("--beta", required=True)
    c.add_argument("--shift", default="2")
    c.add_argument("--max-word-len", type=int, default=2)
    n = cert.add_parser("nilpotent", parents=[common])
    n.add_argument("--order", type=int, default=12)

    ver = sub.add_parser("verify", help="verify a computed identity").add_subparsers(
        dest="target", required=True)
    s = ver.add_parser("scaling", parents=[common])
    s.add_argument("--lambda", dest="lams", action="append", default=None,
                   help="scaling factor; repeatable (default: 2 and 3)")
    s.add_argument("--order", type=int, default=12,
                   help="series order for the class-3 cross-check")
    ver.add_parser("valuation", parents=[common])

    st = sub.add_parser("selftest", parents=[common], help="full property suite")
    st.add_argument("--quick", action="store_true",
                    help="smaller sample counts (used by the test suite)")

    ca = sub.add_parser("check-algebra", parents=[common],
                        help="parse and validate a Lie algebra table")
    ca.add_argument("path")
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    seed = args.seed
    t0 = time.monotonic()
    params: dict = {"jobs": args.jobs}
    try:
        if args.command == "certify" and args.target == "heisenberg":
            params.update(max_word_len=args.max_word_len, order=args.order)
            verdicts = harness.run_certify_heisenberg(args.max_word_len, args.order, seed)
            command = "certify heisenberg"
        elif args.command == "certify" and args.target == "twodim":
            params.update(max_word_len=args.max_word_len, order=args.order)
            verdicts = harness.run_certify_twodim(args.max_word_len, args.order, seed)
            command = "certify twodim"
        elif args.command == "certify" and args.target == "groupring":
            params.update(max_word_len=args.max_word_len)
            verdicts = harness.run_certify_groupring(args.max_word_len, seed)
            command = "certify groupring"
        elif args.command == "certify" and args.target == "cauchon":
            params.update(alpha=args.alpha, beta=args.beta, shift=args.shift,
                          max_word_len=args.max_word_len)
            verdicts = harness.run_certify_cauchon(args.alpha, args.beta, args.shift,
                                                   args.max_word_len, seed)
            command = "certify cauchon"
        elif args.command == "certify" and args.target == "nilpotent":
            params.update(order=args.order)
            verdicts = harness.run_certify_nilpotent(args.order, seed)
            command = "certify nilpotent"
        elif args.command == "verify" and args.target == "scaling":
            lams = [rat(x) for x in (args.lams or ["2", "3"])]
            params.update(lams=[str(x) for x in lams], order=args.order)
            verdicts = harness.run_verify_scaling(tuple(lams), seed, class3_order=args.order)
            command = "verify scaling"
        elif args.command == "verify" and args.target == "valuation":
            verdicts = harness.run_verify_valuation(seed)
            command = "verify valuation"
        elif args.command == "selftest":
            params.update(quick=args.quick)
            verdicts = harness.run_selftest(seed, quick=args.quick)
            command = "selftest"
        elif args.command == "check-algebra":
            with open(args.path) as fh:
                L = parse_lie_algebra(fh.read())
            ok = jacobi_check(L)
            verdicts = [harness.verdict(
                "Jacobi identity holds on all basis triples", "PBW", ok,
                {"basis": list(L.basis), "graded": L.graded,
                 "weights": list(L.weights)})]
            params.update(path=args.path)
            command = "check-algebra"
        else:  # pragma: no cover
            ap.error("unknown command")
            return 1
    except KernelError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1
    elapsed_ms = int((time.monotonic() - t0) * 1000)
    emit_report(command, params, verdicts, seed, elapsed_ms, args.output)
    return harness.worst_exit(verdicts)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
