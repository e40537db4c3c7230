"""Brute-force ground truth for tiny digraphs.

Enumerates every Hamilton cycle by backtracking and finds a maximum
edge-disjoint packing by branch and bound over cycle conflict masks.  Cost
is exponential, so both entry points refuse n > 8; they exist to validate
the randomized construction on instances small enough to check exactly.
"""

from .errors import SizeError
from .graphs import Cycle, Digraph

__all__ = ["enumerate_hamilton_cycles", "brute_force_psi", "MAX_ORACLE_N"]

MAX_ORACLE_N = 8


def enumerate_hamilton_cycles(digraph: Digraph) -> list[Cycle]:
    """All directed Hamilton cycles, canonical and sorted.

    Each cycle is found exactly once by anchoring the start at vertex 1,
    which matches the canonical rotation.  n = 1 has no Hamilton cycle.
    """
    n = digraph.n
    if n > MAX_ORACLE_N:
        raise SizeError(f"exhaustive enumeration capped at n={MAX_ORACLE_N}, got {n}")
    if n < 2:
        return []

    out = digraph.out_adj
    found: list[tuple[int, ...]] = []
    path = [1]
    visited = [False] * (n + 1)
    visited[1] = True

    def extend() -> None:
        if len(path) == n:
            if digraph.has_edge(path[-1], 1):
                found.append(tuple(path))
            return
        for w in out[path[-1]]:
            if not visited[w]:
                visited[w] = True
                path.append(w)
                extend()
                path.pop()
                visited[w] = False

    extend()
    found.sort()
    return [Cycle(verts) for verts in found]


def brute_force_psi(digraph: Digraph) -> tuple[int, list[Cycle]]:
    """Maximum number of edge-disjoint Hamilton cycles, with one witness family.

    Branch and bound over the cycle list in canonical order; the only
    pruning is the count bound (candidates left cannot beat the incumbent),
    so the result is exact and independent of any degree-based ceiling.
    """
    cycles = enumerate_hamilton_cycles(digraph)
    edge_bit = {e: i for i, e in enumerate(digraph.edges())}
    masks = []
    for c in cycles:
        m = 0
        for e in c.edges():
            m |= 1 << edge_bit[e]
        masks.append(m)

    best = 0
    best_family: list[int] = []
    total = len(masks)
    chosen: list[int] = []

    def search(start: int, used: int) -> None:
        nonlocal best, best_family
        if len(chosen) > best:
            best = len(chosen)
            best_family = list(chosen)
        for j in range(start, total):
            if len(chosen) + (total - j) <= best:
                break
            if used & masks[j]:
                continue
            chosen.append(j)
            search(j + 1, used | masks[j])
            chosen.pop()

    search(0, 0)
    return best, [cycles[j] for j in best_family]
