"""Locality testing by exact linear programming over deterministic strategies.

A box is local when it is a convex mixture of deterministic strategies, one
response function per party.  Membership in that hull is decided exactly:
strategies that would put weight on a zero-probability entry are eliminated
up front (their weight is forced to zero), and a phase-1 simplex settles the
rest.  A non-local verdict carries a Farkas certificate that is checked
against every strategy column.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .boxes import BoxTable, Bits, bit_tuples, box_from_entries

MAX_LP_PARTIES = 5

ZERO = Fraction(0)
ONE = Fraction(1)

# A strategy assigns each party a response pair (output on input 0, on 1).
Strategy = tuple[tuple[int, int], ...]


def strategies(n: int) -> list[Strategy]:
    """All 4^n deterministic strategy tuples, in a fixed order."""
    per_party = [(0, 0), (0, 1), (1, 0), (1, 1)]
    return list(itertools.product(per_party, repeat=n))


def strategy_output(s: Strategy, x: Bits) -> Bits:
    return tuple(s[i][x[i]] for i in range(len(x)))


def deterministic_box(n: int, s: Strategy) -> BoxTable:
    entries = {}
    for x in bit_tuples(n):
        a_out = strategy_output(s, x)
        for a in bit_tuples(n):
            entries[(x, a)] = ONE if a == a_out else ZERO
    return box_from_entries(n, entries)


@dataclass
class LocalModel:
    """Convex weights over deterministic strategies reproducing a box."""

    weights: dict[Strategy, Fraction]

    @property
    def n(self) -> int:
        some = next(iter(self.weights))
        return len(some)

    def to_box(self) -> BoxTable:
        n = self.n
        entries = {(x, a): ZERO for x in bit_tuples(n) for a in bit_tuples(n)}
        for s, w in self.weights.items():
            if w == 0:
                continue
            for x in bit_tuples(n):
                entries[(x, strategy_output(s, x))] += w
        return box_from_entries(n, entries)


@dataclass
class NonlocalityCertificate:
    """Farkas witness: row duals that separate the box from the local hull.

    Rows are the (x, a) probability equations plus the normalization row
    ("norm",).  The certificate satisfies dot(y, rhs) > 0 while
    dot(y, column) <= 0 for every deterministic strategy.
    """

    row_duals: dict

    def verify(self, box: BoxTable) -> bool:
        dot_b = ZERO
        for key, y in self.row_duals.items():
            if key == ("norm",):
                dot_b += y
            else:
                x, a = key
                dot_b += y * box.entries[(x, a)]
        if dot_b <= 0:
            return False
        norm_dual = self.row_duals.get(("norm",), ZERO)
        for s in strategies(box.n):
            dot = norm_dual
            for x in bit_tuples(box.n):
                key = (x, strategy_output(s, x))
                if key in self.row_duals:
                    dot += self.row_duals[key]
            if dot > 0:
                return False
        return True


@dataclass
class LocalityResult:
    model: LocalModel | None
    certificate: NonlocalityCertificate | None

    @property
    def local(self) -> bool:
        return self.model is not None


def decide_locality(box: BoxTable) -> LocalityResult:
    """Exact locality decision with model or separating certificate."""
    n = box.n
    if n > MAX_LP_PARTIES:
        raise ValueError(
            f"locality LP supports up to {MAX_LP_PARTIES} parties, got {n}"
        )

    all_strategies = strategies(n)
    zero_rows = [key for key, v in box.entries.items() if v == 0]
    zero_set = set(zero_rows)

    # A strategy hitting any zero-probability entry must carry weight zero.
    surviving: list[Strategy] = []
    eliminated: list[Strategy] = []
    for s in all_strategies:
        hits_zero = any(
            (x, strategy_output(s, x)) in zero_set for x in bit_tuples(n)
        )
        (eliminated if hits_zero else surviving).append(s)

    # Equations: one per nonzero entry, plus total weight one.  Zero rows
    # are satisfied automatically once the hitting strategies are gone.
    row_keys = [key for key, v in box.entries.items() if v != 0]
    b = [box.entries[key] for key in row_keys] + [ONE]
    columns = []
    for s in surviving:
        produced = {(x, strategy_output(s, x)) for x in bit_tuples(n)}
        col = [ONE if key in produced else ZERO for key in row_keys]
        col.append(ONE)
        columns.append(col)

    result = lp.solve_equality_feasibility(columns, b)
    if result.feasible:
        weights = {
            s: w for s, w in zip(surviving, result.solution) if w != 0
        }
        return LocalityResult(model=LocalModel(weights=weights), certificate=None)

    # Extend the reduced certificate over the dropped zero rows so that it
    # also separates the eliminated strategies.
    duals = {key: y for key, y in zip(row_keys, result.certificate) if y != 0}
    duals[("norm",)] = result.certificate[-1]
    worst = ZERO
    for s in eliminated:
        dot = duals.get(("norm",), ZERO)
        for x in bit_tuples(n):
            key = (x, strategy_output(s, x))
            if key in duals and key != ("norm",):
                dot += duals[key]
        if dot > worst:
            worst = dot
    penalty = worst + ONE
    if eliminated:
        for s in eliminated:
            for x in bit_tuples(n):
                key = (x, strategy_output(s, x))
                if key in zero_set:
                    duals[key] = -penalty
                    break
    certificate = NonlocalityCertificate(row_duals=duals)
    return LocalityResult(model=None, certificate=certificate)


def is_local(box: BoxTable) -> LocalModel | None:
    """LocalModel when the box is a mixture of deterministic strategies."""
    return decide_locality(box).model


def realism_distribution(model: LocalModel) -> dict:
    """Joint distribution over all potential outputs, one pair per party.

    The returned map sends tuples (a_{1,0}, a_{1,1}, ..., a_{n,0}, a_{n,1})
    to probabilities; a_{i,j} is party i's output had it received input j.
    Marginalizing at positions picked by an input tuple reproduces the
    modeled box.
    """
    dist: dict = {}
    for s, w in model.weights.items():
        if w == 0:
            continue
        point = tuple(bit for pair in s for bit in pair)
        dist[point] = dist.get(point, ZERO) + w
    return dist


def realism_marginal(dist: dict, n: int, x: Bits) -> dict:
    """Marginal of the joint potential-output distribution at input x."""
    out: dict = {}
    for point, w in dist.items():
        a = tuple(point[2 * i + x[i]] for i in range(n))
        out[a] = out.get(a, ZERO) + w
    return out
