"""Exact conditional-probability tables for n-party binary-input/output boxes.

A box is the conditional distribution P(a | x) where x and a are n-tuples of
bits, one input and one output bit per party.  All probabilities are
`fractions.Fraction`; every identity in this package is checked with zero
tolerance.  Storage is dense: all 4^n entries are kept, zeros included.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

MAX_PARTIES = 8

Bits = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def bit_tuples(n: int) -> Iterator[Bits]:
    """All n-bit tuples in lexicographic order (0...0 first)."""
    return itertools.product((0, 1), repeat=n)


def parity(bits: Iterable[int]) -> int:
    p = 0
    for b in bits:
        p ^= b
    return p


def _check_party_count(n: int) -> None:
    if not 1 <= n <= MAX_PARTIES:
        raise ValueError(f"party count must be in 1..{MAX_PARTIES}, got {n}")


@dataclass(frozen=True)
class BoxTable:
    """Dense table P(a | x) over n binary-input, binary-output parties.

    Invariants, enforced at construction: every entry is a nonnegative
    Fraction and for every input x the entries sum to exactly 1.
    """

    n: int
    entries: dict[tuple[Bits, Bits], Fraction] = field(repr=False)

    def __post_init__(self):
        _check_party_count(self.n)
        full = {}
        for x in bit_tuples(self.n):
            total = ZERO
            for a in bit_tuples(self.n):
                p = self.entries.get((x, a), ZERO)
                if not isinstance(p, Fraction):
                    p = Fraction(p)
                if p < 0:
                    raise ValueError(f"negative probability at x={x}, a={a}")
                full[(x, a)] = p
                total += p
            if total != 1:
                raise ValueError(
                    f"conditional distribution for x={x} sums to {total}, not 1"
                )
        object.__setattr__(self, "entries", full)

    def prob(self, x: Bits, a: Bits) -> Fraction:
        return self.entries[(tuple(x), tuple(a))]

    def support(self, x: Bits) -> list[tuple[Bits, Fraction]]:
        """Nonzero outcomes for input x."""
        return [
            (a, self.entries[(x, a)])
            for a in bit_tuples(self.n)
            if self.entries[(x, a)] != 0
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoxTable):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries


def box_from_entries(n: int, entries: dict) -> BoxTable:
    return BoxTable(n=n, entries=dict(entries))


def make_full_correlation_from_callable(n: int, f) -> BoxTable:
    """Box with P(a|x) = 1/2^(n-1) iff parity(a) == f(x), else 0."""
    _check_party_count(n)
    w = Fraction(1, 2 ** (n - 1))
    entries = {}
    for x in bit_tuples(n):
        fx = f(x) & 1
        for a in bit_tuples(n):
            entries[(x, a)] = w if parity(a) == fx else ZERO
    return BoxTable(n=n, entries=entries)


def make_npr(n: int) -> BoxTable:
    """The n-party PR box: output parity equals the product of all inputs."""

    def f(x):
        prod = 1
        for xi in x:
            prod &= xi
        return prod

    return make_full_correlation_from_callable(n, f)


def make_even_parity(n: int) -> BoxTable:
    """The n-party even-parity box: output parity 0 for every input."""
    return make_full_correlation_from_callable(n, lambda x: 0)


def make_correlated(n: int, eps: Fraction) -> BoxTable:
    """Entrywise mixture eps * PR + (1 - eps) * even-parity."""
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError(f"eps must be in [0, 1], got {eps}")
    return mix([make_npr(n), make_even_parity(n)], [eps, 1 - eps])


def make_full_correlation(f) -> BoxTable:
    """Full-correlation box of a Boolean function given in ANF form."""
    return make_full_correlation_from_callable(f.n, f.evaluate)


def mix(boxes: list[BoxTable], weights: list[Fraction]) -> BoxTable:
    """Entrywise convex combination of boxes over the same parties."""
    if not boxes:
        raise ValueError("mix requires at least one box")
    if len(boxes) != len(weights):
        raise ValueError("one weight per box required")
    n = boxes[0].n
    if any(b.n != n for b in boxes):
        raise ValueError("mixed boxes must share the party count")
    weights = [Fraction(w) for w in weights]
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    if sum(weights) != 1:
        raise ValueError(f"weights sum to {sum(weights)}, not 1")
    entries = {}
    for key in boxes[0].entries:
        entries[key] = sum(
            (w * b.entries[key] for b, w in zip(boxes, weights)), ZERO
        )
    return BoxTable(n=n, entries=entries)


def xor_boxes(p: BoxTable, q: BoxTable) -> BoxTable:
    """Box producing the bitwise XOR of two boxes' outputs on a shared input.

    Both boxes receive the same input tuple and answer independently; party i
    outputs the XOR of its two output bits.
    """
    if p.n != q.n:
        raise ValueError("xor_boxes requires equal party counts")
    n = p.n
    entries = {(x, c): ZERO for x in bit_tuples(n) for c in bit_tuples(n)}
    for x in bit_tuples(n):
        sup_p = p.support(x)
        sup_q = q.support(x)
        for a, pa in sup_p:
            for b, qb in sup_q:
                c = tuple(ai ^ bi for ai, bi in zip(a, b))
                entries[(x, c)] += pa * qb
    return BoxTable(n=n, entries=entries)


def xor_star(functions: list, eps: Fraction) -> BoxTable:
    """Correlated-error XOR of full-correlation boxes.

    Returns eps * (P_f1 xor ... xor P_fm) + (1 - eps) * even-parity: the
    perfect boxes are XORed first and the error is applied once, jointly.
    This differs from XORing the individual eps-mixtures, whose errors are
    independent.
    """
    if not functions:
        raise ValueError("xor_star requires at least one function")
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError(f"eps must be in [0, 1], got {eps}")
    n = functions[0].n
    if any(f.n != n for f in functions):
        raise ValueError("all functions must share the variable count")
    combined = make_full_correlation(functions[0])
    for f in functions[1:]:
        combined = xor_boxes(combined, make_full_correlation(f))
    return mix([combined, make_even_parity(n)], [eps, 1 - eps])


def marginal(p: BoxTable, parties: Iterable[int]) -> dict:
    """Output marginal over a party subset, for each full input x.

    `parties` holds 1-based party indices.  Returns a map from
    (x, a_sub) to probability, where a_sub lists the subset's outputs in
    increasing party order.
    """
    subset = sorted(set(parties))
    if not subset:
        raise ValueError("marginal requires a nonempty party subset")
    if subset[0] < 1 or subset[-1] > p.n:
        raise ValueError(f"party indices must lie in 1..{p.n}")
    idx = [i - 1 for i in subset]
    out: dict = {}
    for (x, a), v in p.entries.items():
        key = (x, tuple(a[i] for i in idx))
        out[key] = out.get(key, ZERO) + v
    return out


@dataclass(frozen=True)
class SignalingCheck:
    """Result of a non-signaling test; falsy when a violation was found.

    On failure, `witness` is (party k, input x, input x', a_slice): flipping
    party k's input from x to x' changes the other parties' marginal at
    outputs a_slice.
    """

    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_non_signaling(p: BoxTable) -> SignalingCheck:
    """Check that no single party's input shifts the others' output marginal.

    The single-party flip condition is checked exhaustively and exactly; it
    is equivalent to marginal invariance for every party subset.
    """
    n = p.n
    for k in range(n):
        for x in bit_tuples(n):
            if x[k] == 1:
                continue
            x_flip = x[:k] + (1,) + x[k + 1:]
            for a_rest in bit_tuples(n - 1):
                total0 = ZERO
                total1 = ZERO
                for ak in (0, 1):
                    a = a_rest[:k] + (ak,) + a_rest[k:]
                    total0 += p.entries[(x, a)]
                    total1 += p.entries[(x_flip, a)]
                if total0 != total1:
                    return SignalingCheck(
                        ok=False, witness=(k + 1, x, x_flip, a_rest)
                    )
    return SignalingCheck(ok=True)


def box_equal(p: BoxTable, q: BoxTable) -> bool:
    """Exact entrywise equality."""
    return p == q
