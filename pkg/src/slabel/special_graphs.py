"""Exact polynomial-time labelings for paths, cycles and perfect n-ary
trees, closed-form values, and structure detection for solver dispatch."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .core import Graph, Labeling, sl_value
from .instances import gen_perfect_nary, nary_depths, nary_node_count


class StructureKind(Enum):
    PATH = "path"
    CYCLE = "cycle"
    PERFECT_NARY = "nary"
    OTHER = "other"


@dataclass(frozen=True)
class Structure:
    kind: StructureKind
    arity: int | None = None
    depth: int | None = None
    root: int | None = None


def _connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for x, _ in g.adjacency[v]:
            if not seen[x]:
                seen[x] = True
                count += 1
                stack.append(x)
    return count == g.n


def _bfs_depths(g: Graph, root: int) -> list[int]:
    depth = [-1] * g.n
    depth[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for x, _ in g.adjacency[v]:
            if depth[x] < 0:
                depth[x] = depth[v] + 1
                queue.append(x)
    return depth


def _nary_structure(g: Graph) -> Structure | None:
    degree_count: dict[int, int] = {}
    for v in range(g.n):
        degree_count[g.degree(v)] = degree_count.get(g.degree(v), 0) + 1
    if len(degree_count) > 3:
        return None
    candidates = [v for v in range(g.n) if degree_count[g.degree(v)] == 1]
    for root in candidates:
        arity = g.degree(root)
        if arity < 1:
            continue
        depth = _bfs_depths(g, root)
        d = max(depth)
        if d < 1:
            continue
        ok = True
        for v in range(g.n):
            children = sum(1 for x, _ in g.adjacency[v] if depth[x] == depth[v] + 1)
            expected = arity if depth[v] < d else 0
            if children != expected:
                ok = False
                break
        if ok:
            return Structure(
                kind=StructureKind.PERFECT_NARY, arity=arity, depth=d, root=root
            )
    return None


def detect_structure(g: Graph) -> Structure:
    """Classify g as a path, cycle, perfect n-ary tree, or other.

    A path that is also a perfect 1-ary tree is reported as a path.
    """
    degrees = [g.degree(v) for v in range(g.n)]
    if g.n >= 2 and g.m == g.n - 1 and _connected(g):
        if max(degrees) <= 2 and degrees.count(1) == 2:
            return Structure(kind=StructureKind.PATH)
        nary = _nary_structure(g)
        if nary is not None:
            return nary
        return Structure(kind=StructureKind.OTHER)
    if g.n >= 3 and g.m == g.n and all(d == 2 for d in degrees) and _connected(g):
        return Structure(kind=StructureKind.CYCLE)
    return Structure(kind=StructureKind.OTHER)


def _path_order(g: Graph) -> list[int]:
    start = min(v for v in range(g.n) if g.degree(v) == 1)
    order = [start]
    prev = -1
    current = start
    while len(order) < g.n:
        nxt = min(x for x, _ in g.adjacency[current] if x != prev)
        order.append(nxt)
        prev, current = current, nxt
    return order


def _cycle_order(g: Graph) -> list[int]:
    order = [0]
    prev = -1
    current = 0
    while len(order) < g.n:
        nxt = min(x for x, _ in g.adjacency[current] if x != prev)
        order.append(nxt)
        prev, current = current, nxt
    return order


def _alternating_labeling(g: Graph, order: list[int]) -> Labeling:
    """Even positions along the walk get labels 1.., odd positions the rest."""
    labels = [0] * g.n
    next_label = 1
    for pos in range(2, g.n + 1, 2):
        labels[order[pos - 1]] = next_label
        next_label += 1
    for pos in range(1, g.n + 1, 2):
        labels[order[pos - 1]] = next_label
        next_label += 1
    return Labeling(labels=tuple(labels))


def solve_path(g: Graph) -> Labeling:
    """Optimal labeling of a path: walking from one endpoint, every second
    node takes the smallest unused label."""
    if detect_structure(g).kind is not StructureKind.PATH:
        raise ValueError("graph is not a path")
    return _alternating_labeling(g, _path_order(g))


def solve_cycle(g: Graph) -> Labeling:
    """Optimal labeling of a cycle, alternating around the cycle from an
    arbitrary start node; odd cycles leave one unpaired node."""
    if detect_structure(g).kind is not StructureKind.CYCLE:
        raise ValueError("graph is not a cycle")
    return _alternating_labeling(g, _cycle_order(g))


def _label_by_depth(g: Graph, depth_of: list[int], root: int, d: int) -> Labeling:
    labels = [0] * g.n
    if d % 2 == 1:
        covered = [v for v in range(g.n) if depth_of[v] % 2 == 0 and v != root]
        next_label = 1
        for v in covered:
            labels[v] = next_label
            next_label += 1
        labels[root] = next_label
        next_label += 1
    else:
        covered = [v for v in range(g.n) if depth_of[v] % 2 == 1]
        next_label = 1
        for v in covered:
            labels[v] = next_label
            next_label += 1
        labels[root] = next_label
        next_label += 1
    for v in range(g.n):
        if labels[v] == 0:
            labels[v] = next_label
            next_label += 1
    return Labeling(labels=tuple(labels))


def label_perfect_nary(g: Graph, structure: Structure) -> Labeling:
    """Optimal labeling of a graph detected as a perfect n-ary tree.

    Odd depth: even-depth nodes take the smallest labels with the root
    last within that block (the root covers one edge fewer than the other
    covering nodes).  Even depth: odd-depth nodes take the smallest
    labels, then the root.
    """
    if structure.kind is not StructureKind.PERFECT_NARY:
        raise ValueError("graph is not a perfect n-ary tree")
    assert structure.root is not None and structure.depth is not None
    depth_of = _bfs_depths(g, structure.root)
    return _label_by_depth(g, depth_of, structure.root, structure.depth)


def solve_perfect_nary(arity: int, depth: int) -> tuple[Labeling, int]:
    """Optimal labeling and value for the canonical perfect n-ary tree."""
    if arity < 1:
        raise ValueError(f"arity must be >= 1, got {arity}")
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    g = gen_perfect_nary(arity, depth)
    phi = _label_by_depth(g, nary_depths(arity, depth), 0, depth)
    return phi, sl_value(g, phi)


def formula_path_cycle(kind: str, n_nodes: int) -> int:
    """Closed-form optimal value for a path or cycle on n_nodes nodes."""
    if kind == "path":
        if n_nodes < 2:
            raise ValueError(f"path formula needs n >= 2, got {n_nodes}")
        if n_nodes % 2 == 0:
            return n_nodes**2 // 4
        return (n_nodes - 1) ** 2 // 4 + (n_nodes - 1) // 2
    if kind == "cycle":
        if n_nodes < 3:
            raise ValueError(f"cycle formula needs n >= 3, got {n_nodes}")
        if n_nodes % 2 == 0:
            return n_nodes**2 // 4 + n_nodes // 2
        return (n_nodes + 1) ** 2 // 4
    raise ValueError(f"kind must be 'path' or 'cycle', got {kind!r}")


def formula_nary(arity: int, depth: int) -> tuple[Fraction, bool]:
    """Closed-form expression for perfect n-ary trees, evaluated exactly.

    The expression is only guaranteed to equal the optimum when the
    relevant node count is divisible by arity + 1; the flag reports
    whether the value came out integral.  The algorithmic value from
    solve_perfect_nary is the ground truth either way.
    """
    if arity < 1:
        raise ValueError(f"arity must be >= 1, got {arity}")
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    v = nary_node_count(arity, depth)
    if depth % 2 == 1:
        value = Fraction((v - 1) ** 2, 2 * (arity + 1)) + Fraction(v - 1, 2)
    else:
        value = (
            Fraction((v - 1 - arity) ** 2, 2 * (arity + 1))
            + Fraction(arity * (v - 1 - arity), arity + 1)
            + Fraction(v - 1 + arity, 2)
        )
    return value, value.denominator == 1
