"""Increasing-chord path and rooted spanning tree search in straight-line drawings.

Both searches are exhaustive.  A node budget bounds the work; running out
raises :class:`SearchBudgetExceeded`, which callers must treat as *unknown*,
never as absence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Optional, Sequence

from .geom import RationalPoint, Q, dist2
from .kernel import ScaledPoints
from .predicates import VertexPath

DEFAULT_TREE_BUDGET = 10**7
DEFAULT_PATH_BUDGET = 10**6


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, expansions: int):
        super().__init__(f"search budget exhausted after {expansions} expansions")
        self.expansions = expansions


@dataclass
class SearchStats:
    expansions: int = 0
    budget: Optional[int] = None

    def tick(self, k: int = 1) -> None:
        self.expansions += k
        if self.budget is not None and self.expansions > self.budget:
            raise SearchBudgetExceeded(self.expansions)


@dataclass(frozen=True)
class Drawing:
    vertices: tuple[RationalPoint, ...]
    edges: tuple[tuple[int, int], ...]
    labels: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        verts = tuple(p if isinstance(p, RationalPoint) else RationalPoint(Q(p[0]), Q(p[1])) for p in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex positions")
        n = len(verts)
        seen = set()
        edges = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) references a missing vertex")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            edges.append(key)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "labels", dict(self.labels))

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def scaled(self) -> ScaledPoints:
        return ScaledPoints(self.vertices)

    @cached_property
    def _by_label(self) -> dict[str, int]:
        return {lab: v for v, lab in self.labels.items()}

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def vertex(self, label: str) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise KeyError(f"no vertex labelled {label!r}") from None

    def find_label(self, label: str) -> Optional[int]:
        return self._by_label.get(label)

    def points(self, path: Sequence[int]) -> VertexPath:
        return VertexPath(self.vertices[v] for v in path)

    def is_ic(self, path: Sequence[int]) -> bool:
        return self.scaled.path_ok(path)


@dataclass(frozen=True)
class RootedTree:
    root: int
    parent: Mapping[int, int]

    def path_to(self, v: int) -> list[int]:
        out = [v]
        seen = {v}
        while v != self.root:
            if v not in self.parent:
                raise ValueError(f"vertex {out[0]} does not reach the root")
            v = self.parent[v]
            if v in seen:
                raise ValueError("parent map contains a cycle")
            seen.add(v)
            out.append(v)
        out.reverse()
        return out

    def vertices(self) -> set[int]:
        return {self.root, *self.parent}


def _check_vertex(d: Drawing, v: int) -> None:
    if not 0 <= v < len(d):
        raise ValueError(f"vertex {v} is not in the drawing")


def iter_ic_paths(d: Drawing, s: int, t: Optional[int] = None, stats: Optional[SearchStats] = None) -> Iterator[tuple[int, ...]]:
    """All increasing-chord simple paths from ``s`` (ending at ``t`` if given)."""
    _check_vertex(d, s)
    sp = d.scaled
    adj = d.adjacency
    n = len(d)
    bx, by = sp.buffers(n)
    bx[0], by[0] = sp.xs[s], sp.ys[s]
    path = [s]
    on_path = [False] * n
    on_path[s] = True
    iters = [iter(adj[s])]
    while iters:
        w = next(iters[-1], None)
        if w is None:
            iters.pop()
            on_path[path.pop()] = False
            continue
        if on_path[w]:
            continue
        if stats is not None:
            stats.tick()
        k = len(path)
        if not sp.extend_ok(bx, by, k, w):
            continue
        bx[k], by[k] = sp.xs[w], sp.ys[w]
        path.append(w)
        on_path[w] = True
        if t is None or w == t:
            yield tuple(path)
        if w == t:
            path.pop()
            on_path[w] = False
            continue
        iters.append(iter(adj[w]))


def find_ic_path(d: Drawing, s: int, t: int, budget: Optional[int] = DEFAULT_PATH_BUDGET, stats: Optional[SearchStats] = None) -> Optional[tuple[int, ...]]:
    """Some increasing-chord path of ``d`` from ``s`` to ``t`` (vertex ids), or None."""
    _check_vertex(d, s)
    _check_vertex(d, t)
    if s == t:
        raise ValueError("s and t must differ")
    stats = stats if stats is not None else SearchStats()
    stats.budget = budget
    for path in iter_ic_paths(d, s, t, stats):
        return path
    return None


def verify_ic_rooted_tree(d: Drawing, tree: RootedTree) -> bool:
    _check_vertex(d, tree.root)
    for child, par in tree.parent.items():
        _check_vertex(d, child)
        if not d.has_edge(child, par):
            raise ValueError(f"tree edge ({child}, {par}) is not an edge of the drawing")
    if tree.root in tree.parent:
        return False
    if tree.vertices() != set(range(len(d))):
        return False
    for v in tree.parent:
        try:
            p = tree.path_to(v)
        except ValueError:
            return False
        if not d.is_ic(p):
            return False
    return True


def verify_ic_tree_drawing(d: Drawing) -> bool:
    """Is every vertex pair of the tree drawing ``d`` joined by an increasing-chord path?"""
    n = len(d)
    if len(d.edges) != n - 1 or not _connected(d):
        raise ValueError("drawing is not a tree")
    sp = d.scaled
    for root in range(n):
        bx, by = sp.buffers(n)
        stack = [(root, -1, 0)]
        while stack:
            v, par, depth = stack.pop()
            if depth >= 2 and not sp.extend_ok(bx, by, depth, v):
                return False
            bx[depth], by[depth] = sp.xs[v], sp.ys[v]
            for w in d.adjacency[v]:
                if w != par:
                    stack.append((w, v, depth + 1))
    return True


def _connected(d: Drawing) -> bool:
    if not len(d):
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in d.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(d)


def find_ic_rooted_spanning_tree(
    d: Drawing,
    r: int,
    budget: Optional[int] = DEFAULT_TREE_BUDGET,
    stats: Optional[SearchStats] = None,
) -> Optional[RootedTree]:
    """Exhaustive search for a spanning tree whose root paths are all increasing-chord.

    The search fixes root paths one vertex at a time.  At each node it lists,
    for every unplaced vertex, the increasing-chord root paths consistent with
    the paths already fixed; a vertex with none refutes the node, otherwise
    the vertex with the fewest options (nearest the root on ties) is branched
    on.  Every valid tree extending the fixed paths offers its own path to
    the branched vertex, so no tree is missed.
    """
    _check_vertex(d, r)
    stats = stats if stats is not None else SearchStats()
    stats.budget = budget
    n = len(d)
    sp = d.scaled
    adj = d.adjacency
    root_pt = d.vertices[r]
    closeness = [dist2(p, root_pt) for p in d.vertices]
    parent: dict[int, int] = {}
    placed = [False] * n
    placed[r] = True
    bx, by = sp.buffers(n)

    def candidates() -> dict[int, list[tuple[int, ...]]]:
        found: dict[int, list[tuple[int, ...]]] = {}
        bx[0], by[0] = sp.xs[r], sp.ys[r]
        path = [r]
        on_path = [False] * n
        on_path[r] = True
        iters = [iter(adj[r])]
        while iters:
            w = next(iters[-1], None)
            if w is None:
                iters.pop()
                on_path[path.pop()] = False
                continue
            if on_path[w]:
                continue
            u = path[-1]
            k = len(path)
            if placed[w]:
                if parent.get(w) != u:
                    continue
            else:
                if not sp.extend_ok(bx, by, k, w):
                    continue
                found.setdefault(w, []).append(tuple(path) + (w,))
            bx[k], by[k] = sp.xs[w], sp.ys[w]
            path.append(w)
            on_path[w] = True
            iters.append(iter(adj[w]))
        return found

    def solve() -> bool:
        stats.tick()
        open_vertices = [v for v in range(n) if not placed[v]]
        if not open_vertices:
            return True
        found = candidates()
        if len(found) < len(open_vertices):
            return False
        v = min(open_vertices, key=lambda u: (len(found[u]), closeness[u], u))
        for path in found[v]:
            newly = []
            for a, b in zip(path, path[1:]):
                if not placed[b]:
                    placed[b] = True
                    parent[b] = a
                    newly.append(b)
            if solve():
                return True
            for b in newly:
                placed[b] = False
                del parent[b]
        return False

    if solve():
        return RootedTree(r, dict(parent))
    return None
