#!/usr/bin/env python3
"""Regenerate the golden reports used for diff-based regression testing.

Reports are byte-stable given (command, flags, seed) except for elapsed_ms,
which is zeroed here; the CLI test scrubs the same field before diffing.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from skewcert import cli  # noqa: E402

GOLDEN = pathlib.Path(__file__).resolve().parents[1] / "tests" / "golden"

COMMANDS = {
    "valuation.json": ["verify", "valuation"],
    "groupring.json": ["certify", "groupring", "--max-word-len", "3"],
    "twodim.json": ["certify", "twodim", "--max-word-len", "2", "--order", "16"],
    "heisenberg.json": ["certify", "heisenberg", "--max-word-len", "2", "--order", "32"],
    "cauchon.json": ["certify", "cauchon", "--alpha", "5/6", "--beta", "1/6", "--shift", "2"],
    "cauchon_refused.json": ["certify", "cauchon", "--alpha", "5/6", "--beta", "5/6", "--shift", "2"],
    "scaling.json": ["verify", "scaling", "--lambda", "2", "--order", "10"],
    "nilpotent.json": ["certify", "nilpotent", "--order", "10"],
}


def scrub(node):
    """Zero every elapsed_ms, recursively (nested CertReport dicts too)."""
    if isinstance(node, dict):
        return {k: 0 if k == "elapsed_ms" else scrub(v) for k, v in node.items()}
    if isinstance(node, list):
        return [scrub(v) for v in node]
    return node


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in COMMANDS.items():
        out = GOLDEN / name
        code = cli.run(argv + ["--output", str(out)])
        report = scrub(json.loads(out.read_text()))
        out.write_text(json.dumps(report, indent=2, sort_keys=True, default=cli._json_default) + "\n")
        print(f"{name}: exit {code}")


if __name__ == "__main__":
    main()
