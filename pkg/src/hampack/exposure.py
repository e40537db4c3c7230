"""Edge-exposure machinery: derived probabilities, exposure rounds, audit.

A target edge density p is split across two exposure rounds on the bipartite
side, (1-p0)(1-p1) = 1-p, with the second-round rate p1 = sqrt(p/(n log^4 n)),
and a per-attempt rate q = sqrt(p/(n log^8 n)) = p1/log^2 n used by all later
online exposures.  As long as an individual edge is attempted no more than
log^2 n times, the accumulated attempt probability stays below p1, so the
generated digraph is stochastically dominated by the binomial model at
density p.  The ledger records every attempt so this budget can be audited
after the fact; violations are flagged, never discarded.

All logarithms are natural.

Strict mode enforces the analytical validity window
log^15 n / n <= p <= 8^8 / (2 (9e)^9) and rejects anything outside it; at
small n that window is empty, which strict mode reports as a parameter-range
error.  Practical mode accepts any p in [0, 1] and clamps derived
probabilities into [0, 1], recording which ones were clamped.
"""

import math
from dataclasses import dataclass, field

from .errors import InvalidInputError, ParameterRangeError
from .graphs import BipartiteGraph, Digraph
from .rng import SeededRng

__all__ = [
    "EPSILON_DENSITY",
    "Params",
    "derive_parameters",
    "ExposureLedger",
    "expose",
    "first_exposure",
    "second_exposure",
    "AvailableEdgeSet",
    "init_available_edges",
    "coupling_audit",
]

# upper edge of the valid density window: 8^8 / (2 * (9e)^9)
EPSILON_DENSITY = 8.0 ** 8 / (2.0 * (9.0 * math.e) ** 9)

MODES = ("practical", "strict")


@dataclass(frozen=True)
class Params:
    """Derived exposure parameters for one (n, p) instance."""

    n: int
    p: float
    p0: float
    p1: float
    q: float
    mode: str
    p0_raw: float
    p1_raw: float
    q_raw: float
    clamped: tuple[str, ...]
    epsilon: float = EPSILON_DENSITY

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "p0": self.p0,
            "p1": self.p1,
            "q": self.q,
            "mode": self.mode,
            "p0_raw": self.p0_raw,
            "p1_raw": self.p1_raw,
            "q_raw": self.q_raw,
            "clamped": list(self.clamped),
            "epsilon": self.epsilon,
        }


def strict_density_window(n: int) -> tuple[float, float]:
    """Valid [low, high] density window for strict mode at this n."""
    low = math.log(n) ** 15 / n
    return (low, EPSILON_DENSITY)


def derive_parameters(n: int, p: float, mode: str = "practical") -> Params:
    """Split the density p into the two-round rates p0, p1 and the rate q.

    Requires n >= 5 and 0 <= p <= 1.  Strict mode additionally requires p
    inside the validity window, which is empty until n is astronomically
    large; it exists so the analytical regime is honestly represented, not
    because it can run at desk scale.
    """
    if mode not in MODES:
        raise InvalidInputError(f"mode must be one of {MODES}, got {mode!r}")
    if n < 5:
        raise ParameterRangeError(f"need n >= 5, got {n}")
    if not (0.0 <= p <= 1.0):
        raise ParameterRangeError(f"p must lie in [0, 1], got {p}")
    if mode == "strict":
        low, high = strict_density_window(n)
        if not (low <= p <= high):
            raise ParameterRangeError(
                f"strict mode requires log^15(n)/n <= p <= {high:.6g}; "
                f"at n={n} the window is [{low:.6g}, {high:.6g}] and p={p} is outside it"
            )
    ln = math.log(n)
    p1_raw = math.sqrt(p / (n * ln ** 4))
    q_raw = math.sqrt(p / (n * ln ** 8))
    # solves (1-p0)(1-p1) = 1-p exactly for the unclamped p1
    p0_raw = (p - p1_raw) / (1.0 - p1_raw) if p1_raw < 1.0 else 1.0
    clamped = []
    vals = {}
    for name, raw in (("p0", p0_raw), ("p1", p1_raw), ("q", q_raw)):
        v = raw
        if v < 0.0 or v > 1.0:
            v = min(1.0, max(0.0, v))
            clamped.append(name)
        vals[name] = v
    if clamped and mode == "strict":
        raise ParameterRangeError(f"derived probabilities out of [0,1] in strict mode: {clamped}")
    return Params(
        n=n, p=float(p), p0=vals["p0"], p1=vals["p1"], q=vals["q"], mode=mode,
        p0_raw=p0_raw, p1_raw=p1_raw, q_raw=q_raw, clamped=tuple(clamped),
    )


class ExposureLedger:
    """Per-edge attempt and success counts for all online exposures.

    attempts[(u, v)] counts every Bernoulli attempt on the ordered pair,
    across every procedure and retry of a trial.  successes holds the pairs
    that succeeded at least once; they are part of the generated digraph
    whether or not any cycle ended up using them.
    """

    def __init__(self) -> None:
        self.attempts: dict[tuple[int, int], int] = {}
        self.successes: set[tuple[int, int]] = set()
        self.total_attempts = 0
        self.total_successes = 0

    def record(self, edge: tuple[int, int], success: bool) -> None:
        self.attempts[edge] = self.attempts.get(edge, 0) + 1
        self.total_attempts += 1
        if success:
            self.successes.add(edge)
            self.total_successes += 1

    def max_attempts(self) -> int:
        return max(self.attempts.values(), default=0)


def expose(edge: tuple[int, int], prob: float, ledger: ExposureLedger, rng: SeededRng) -> bool:
    """One recorded Bernoulli(prob) attempt on an ordered edge."""
    success = rng.bernoulli(prob)
    ledger.record(edge, success)
    return success


def first_exposure(n: int, p0: float, rng: SeededRng) -> BipartiteGraph:
    """Round one: every (x, y) pair appears independently with probability p0.

    Pairs are drawn in row-major order (x outer, y inner), one draw each.
    """
    if n < 1:
        raise ParameterRangeError(f"need n >= 1, got {n}")
    hits = rng.bernoulli_matrix(n, n, p0)
    edges = [(int(x) + 1, int(y) + 1) for x, y in zip(*hits.nonzero())]
    return BipartiteGraph(n, edges)


def second_exposure(b_prime: BipartiteGraph, x_plus: int, y_minus: int,
                    p1: float, rng: SeededRng) -> BipartiteGraph:
    """Round two: re-expose the row of x_plus and the column of y_minus.

    Each pair touching x_plus or y_minus that is not already present gets one
    Bernoulli(p1) draw; present edges are kept as is (union semantics, no
    re-draw).  The shared pair (x_plus, y_minus) is drawn at most once.
    Draw order: the full row y = 1..n, then the column x = 1..n skipping
    x_plus.
    """
    n = b_prime.n
    if not (1 <= x_plus <= n and 1 <= y_minus <= n):
        raise InvalidInputError(f"designated vertices ({x_plus},{y_minus}) outside 1..{n}")
    added = []
    for y in range(1, n + 1):
        if not b_prime.has_edge(x_plus, y) and rng.bernoulli(p1):
            added.append((x_plus, y))
    for x in range(1, n + 1):
        if x == x_plus:
            continue
        if not b_prime.has_edge(x, y_minus) and rng.bernoulli(p1):
            added.append((x, y_minus))
    if not added:
        return b_prime
    return BipartiteGraph(n, list(b_prime.edges()) + added)


class AvailableEdgeSet:
    """The shrinking pool of ordered pairs still available for exposure.

    Contains no loops, no edge of the generated subdigraph, no pair whose
    tail is the protected source vertex, and no pair whose head is the
    protected target vertex.  Edges only ever leave the pool; the removal
    log records the order in which they left, and a removed edge can never
    return.
    """

    def __init__(self, n: int, pairs: set[tuple[int, int]]):
        self.n = n
        self._pairs = set(pairs)
        self.removal_log: list[tuple[int, int]] = []
        self._removed: set[tuple[int, int]] = set()

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "AvailableEdgeSet":
        """Direct construction from an explicit pair collection (tests, demos)."""
        ps = set()
        for u, v in pairs:
            if u == v:
                raise InvalidInputError(f"loop ({u},{v}) cannot be available")
            if not (1 <= u <= n and 1 <= v <= n):
                raise InvalidInputError(f"pair ({u},{v}) outside 1..{n}")
            ps.add((u, v))
        return cls(n, ps)

    def __len__(self) -> int:
        return len(self._pairs)

    def __contains__(self, edge: tuple[int, int]) -> bool:
        return edge in self._pairs

    def remove_edges(self, edges) -> None:
        """Remove each edge once; every edge must currently be present."""
        for e in sorted(set(edges)):
            if e not in self._pairs:
                raise InvalidInputError(f"edge {e} not available (already removed or never present)")
            self._pairs.discard(e)
            self._removed.add(e)
            self.removal_log.append(e)

    def edges_into(self, tails, head: int) -> list[tuple[int, int]]:
        """Available edges tail -> head for tails in the given order."""
        return [(t, head) for t in tails if (t, head) in self._pairs]

    def edges_out_of(self, tail: int, heads) -> list[tuple[int, int]]:
        """Available edges tail -> head for heads in the given order."""
        return [(tail, h) for h in heads if (tail, h) in self._pairs]

    def edges_between(self, tails, heads) -> list[tuple[int, int]]:
        """Available pairs (t, h), tails x heads, in sorted order."""
        out = []
        for t in sorted(set(tails)):
            for h in sorted(set(heads)):
                if (t, h) in self._pairs:
                    out.append((t, h))
        return out

    def snapshot(self) -> frozenset:
        return frozenset(self._pairs)


def init_available_edges(d_prime: Digraph, x_plus: int, target: int) -> AvailableEdgeSet:
    """Initial availability pool for the conversion phase.

    Starts from every ordered non-loop pair, then excludes edges already in
    the generated subdigraph, every pair with tail x_plus (that row's
    exposure budget is spent), and every pair with head equal to the image
    of the protected column (likewise spent).
    """
    n = d_prime.n
    if not (1 <= x_plus <= n and 1 <= target <= n):
        raise InvalidInputError(f"protected vertices ({x_plus},{target}) outside 1..{n}")
    pairs = set()
    for u in range(1, n + 1):
        if u == x_plus:
            continue
        for v in range(1, n + 1):
            if v == target or v == u:
                continue
            if not d_prime.has_edge(u, v):
                pairs.add((u, v))
    return AvailableEdgeSet(n, pairs)


def coupling_audit(ledger: ExposureLedger, params: Params) -> dict:
    """Post-hoc check that no edge exceeded its attempt budget.

    An edge stays within the coupling budget while its attempt count X_e is
    at most log^2 n (equivalently X_e * q <= p1).  Violations are reported,
    never discarded; the flag is informational.
    """
    bound = math.log(params.n) ** 2
    histogram: dict[int, int] = {}
    violations = []
    for edge in sorted(ledger.attempts):
        c = ledger.attempts[edge]
        histogram[c] = histogram.get(c, 0) + 1
        if c > bound:
            violations.append([edge[0], edge[1], c])
    return {
        "max_attempts": ledger.max_attempts(),
        "histogram": {str(k): histogram[k] for k in sorted(histogram)},
        "violations": violations,
        "bound": bound,
        "ok": not violations,
        "total_attempts": ledger.total_attempts,
        "distinct_edges": len(ledger.attempts),
    }
