"""Bounded-length freeness certification: enumerate words in the candidate
generators, evaluate them in the host ring, coordinatize into exact sparse
Q-vectors and compute the rank by fraction-free elimination.

A `certified` verdict means the evaluated words are Q-linearly independent,
a finite sound shadow of freeness (for truncation-based coordinatizers the
implication holds because truncation is linear: independent images force
independent preimages).  `relation_found` carries an explicit rational
relation, re-verified in the ring when the coordinatizer is exact.
`inconclusive` is reserved for truncation-based coordinatizers that stay
rank-deficient at the escalation ceiling.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence

from .errors import AdapterFailure
from .rings import RingOps

Word = tuple[int, ...]  # letters: 1-based generator indices, negative = inverse


def enumerate_words(m: int, length: int, with_inverses: bool) -> list[Word]:
    """All words of length <= `length` over m generators, length-lex ordered.

    Monoid mode: letters 1..m, count (m^(L+1)-1)/(m-1).  Group mode: letters
    +-1..+-m, reduced (no letter adjacent to its own inverse)."""
    if m < 1 or length < 0:
        raise ValueError("need m >= 1 and length >= 0")
    alphabet = list(range(1, m + 1))
    if with_inverses:
        alphabet += [-g for g in range(1, m + 1)]
    words: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(length):
        nxt = []
        for w in frontier:
            for a in alphabet:
                if with_inverses and w and w[-1] == -a:
                    continue
                nxt.append(w + (a,))
        words.extend(nxt)
        frontier = nxt
    return words


def word_str(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    return ".".join(names[abs(a) - 1] + ("'" if a < 0 else "") for a in w)


def rank_over_Q(vectors: Sequence[dict]) -> tuple[int, Optional[list[Fraction]]]:
    """Exact rank by fraction-free (Bareiss) elimination on the integerized
    matrix, with an identity block carried along so a vanishing row yields a
    rational relation among the input vectors (first nonzero entry positive,
    integer content 1)."""
    n = len(vectors)
    if n == 0:
        return 0, None
    keys = sorted({k for v in vectors for k in v}, key=repr)
    col_of = {k: i for i, k in enumerate(keys)}
    width = len(keys)
    scales = []
    rows = []
    for v in vectors:
        denlcm = 1
        for c in v.values():
            denlcm = denlcm * c.denominator // gcd(denlcm, c.denominator)
        row = [0] * (width + n)
        for k, c in v.items():
            row[col_of[k]] = int(c * denlcm)
        scales.append(Fraction(denlcm))
        rows.append(row)
    for i in range(n):
        rows[i][width + i] = 1

    rank = 0
    prev = 1
    pivot_row = 0
    for col in range(width):
        pr = next((r for r in range(pivot_row, n) if rows[r][col]), None)
        if pr is None:
            continue
        rows[pivot_row], rows[pr] = rows[pr], rows[pivot_row]
        piv = rows[pivot_row][col]
        for r in range(pivot_row + 1, n):
            rc = rows[r][col]
            row_r, row_p = rows[r], rows[pivot_row]
            for j in range(width + n):
                num = row_r[j] * piv - rc * row_p[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                row_r[j] = q
        prev = piv
        rank += 1
        pivot_row += 1
        if pivot_row == n:
            break

    if rank == n:
        return rank, None
    for r in range(n):
        if any(rows[r][:width]):
            continue
        lam = [Fraction(rows[r][width + i]) * scales[i] for i in range(n)]
        if not any(lam):
            continue
        denlcm = 1
        for c in lam:
            denlcm = denlcm * c.denominator // gcd(denlcm, c.denominator)
        ints = [int(c * denlcm) for c in lam]
        g = 0
        for c in ints:
            g = gcd(g, c)
        ints = [c // g for c in ints]
        if next(c for c in ints if c) < 0:
            ints = [-c for c in ints]
        return rank, [Fraction(c) for c in ints]
    return rank, None


@dataclass
class Coordinatizer:
    """Family-level coordinatization: `build` maps the evaluated words to
    exact sparse Q-vectors at once (the exact fraction path needs a common
    left denominator across the family, so per-element maps do not suffice).

    `truncation_based` marks coordinatizers whose deficiency may be a
    truncation artifact; `escalate(order)` returns a higher-order rebuild."""

    name: str
    build: Callable[[list], list[dict]]
    truncation_based: bool = False
    order: Optional[int] = None
    escalate: Optional[Callable[[int], "Coordinatizer"]] = None


@dataclass
class CertReport:
    command: str
    params: dict
    verdict: str
    rank: int
    expected: int
    word_count: int
    relation: Optional[list[Fraction]] = None
    truncation_order: Optional[int] = None
    elapsed_ms: int = 0
    seed: int = 0
    words: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "verdict": self.verdict,
            "rank": self.rank,
            "expected": self.expected,
            "word_count": self.word_count,
            "relation": None
            if self.relation is None
            else [f"{c.numerator}/{c.denominator}" for c in self.relation],
            "truncation_order": self.truncation_order,
            "elapsed_ms": self.elapsed_ms,
            "seed": self.seed,
        }


def evaluate_words(generators, ops: RingOps, words: Sequence[Word], mode: str):
    """Evaluate words by ring multiplication, sharing prefixes.  Group mode
    needs every generator invertible (AdapterFailure otherwise)."""
    letters: dict[int, object] = {}
    for i, g in enumerate(generators, start=1):
        letters[i] = g
        if mode == "group":
            if ops.inv is None:
                raise AdapterFailure(f"{ops.name} cannot invert elements")
            if ops.is_unit is not None and not ops.is_unit(g):
                raise AdapterFailure(f"generator {i} is not invertible in {ops.name}")
            letters[-i] = ops.inv(g)
    values: dict[Word, object] = {}
    for w in words:
        values[w] = ops.one if not w else ops.mul(values[w[:-1]], letters[w[-1]])
    return [values[w] for w in words]


def certify_freeness(
    generators,
    ops: RingOps,
    coord: Coordinatizer,
    length: int,
    mode: str = "monoid",
    command: str = "certify",
    seed: int = 0,
    order_ceiling: int = 256,
) -> CertReport:
    if mode not in ("monoid", "group"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.monotonic()
    words = enumerate_words(len(generators), length, mode == "group")
    values = evaluate_words(generators, ops, words, mode)
    cur = coord
    while True:
        vectors = cur.build(values)
        rank, relation = rank_over_Q(vectors)
        if rank == len(words):
            verdict, relation = "certified", None
            break
        if not cur.truncation_based:
            verdict = "relation_found"
            # soundness: the relation must vanish exactly in the ring
            acc = ops.zero
            for c, v in zip(relation, values):
                if c:
                    acc = ops.add(acc, ops.smul(c, v))
            if not ops.is_zero(acc):
                raise AssertionError("relation does not re-evaluate to zero")
            break
        if cur.escalate is not None and cur.order is not None and cur.order * 2 <= order_ceiling:
            cur = cur.escalate(cur.order * 2)
            continue
        verdict, relation = "inconclusive", None
        break
    elapsed = int((time.monotonic() - t0) * 1000)
    return CertReport(
        command=command,
        params={"mode": mode, "max_word_len": length, "coordinatizer": cur.name},
        verdict=verdict,
        rank=rank,
        expected=len(words),
        word_count=len(words),
        relation=relation,
        truncation_order=cur.order,
        elapsed_ms=elapsed,
        seed=seed,
        words=words,
    )
