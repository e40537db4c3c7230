"""
Rotations, endpoint trees, and path reconstruction
==================================================

Walks through the path-rotation calculus on a small example: the quarter
partition, a single left and right rotation, then a sprinkled rotation
state whose endpoints are stored as derivation records and materialized on
demand.

Run:  python3 demos/rotation_walkthrough.py
"""

from hampack import (AvailableEdgeSet, ExposureLedger, SeededRng, left_rotate,
                     quarter_partition, reconstruct_path, right_rotate,
                     rotate_to_target)

# a path on 12 vertices and its position quarters
path = (4, 9, 1, 12, 7, 3, 10, 5, 2, 11, 8, 6)
qp = quarter_partition(len(path))
print(f"path      {path}")
print(f"quarters  V1={qp.v1} V2={qp.v2} V3={qp.v3} V4={qp.v4}")

# one left rotation: pivots x (a V1 position) and y (a V2 position); the
# new path starts at the old successor of x and the right half is untouched
x, y = path[qp.v1[1] - 1], path[qp.v2[0] - 1]
rotated = left_rotate(path, x, y)
print(f"\nleft_rotate(x={x}, y={y})  -> {rotated}")
print(f"new left endpoint = {rotated[0]} (successor of {x} in the original)")

# one right rotation on the result, mirrored on the other side
w, z = rotated[qp.v3[0] - 1], rotated[qp.v4[1] - 1]
rotated2 = right_rotate(rotated, z, w)
print(f"right_rotate(z={z}, w={w}) -> {rotated2}")
print(f"new right endpoint = {rotated2[-1]}")

# now the sprinkled version: rounds expose connecting edges online from an
# available pool and record each new endpoint as (parent, pivot pair); no
# path is materialized until asked for
rng = SeededRng(11, "sprinkling")
base = tuple(rng.sample(range(1, 41), 20))
pool = AvailableEdgeSet.from_pairs(
    40, [(u, v) for u in base for v in base if u != v])
ledger = ExposureLedger()
state = rotate_to_target(base, pool, ledger, rng,
                         target=3, t_max=5, n=40, mode="practical")

lefts = state.end_set("left", state.t_left)
rights = state.end_set("right", state.t_right)
print(f"\nsprinkled state on a 20-vertex path:")
print(f"  rounds used: left={state.t_left}, right={state.t_right}")
print(f"  endpoint sets: left={sorted(lefts)}, right={sorted(rights)}")
print(f"  bernoulli attempts logged: {ledger.total_attempts}")

# any endpoint pair pins down one concrete path; the left chain and the
# right chain commute because each side only touches its own half
l_end, r_end = lefts[0], rights[0]
final = reconstruct_path(state, l_end, r_end)
print(f"\nreconstruct({l_end}, {r_end}):")
print(f"  {final}")
assert final[0] == l_end and final[-1] == r_end
assert sorted(final) == sorted(base)
print("  endpoints and vertex set check out")

# the same path falls out of replaying the recorded pivot chains by hand
replay = state.base
for a, b in state.pivot_chain("left", l_end, state.t_left):
    replay = left_rotate(replay, a, b)
for a, b in state.pivot_chain("right", r_end, state.t_right):
    replay = right_rotate(replay, a, b)
assert replay == final
print("  manual pivot-chain replay agrees")
