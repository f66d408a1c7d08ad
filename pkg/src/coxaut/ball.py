"""Balls in the Cayley graph with respect to right multiplication.

Vertices are group elements stored as canonical words; x and y are joined
by an edge labeled s exactly when y = x s (equivalently x = y s).  The
ball of radius r contains every element of word length at most r.  Vertex
ids are assigned by breadth-first search from the identity, expanding the
frontier in id order and the generators in index order, so ids are
reproducible and the ball of a smaller radius is an id-prefix of the ball
of a larger one.
"""

from __future__ import annotations

from collections import deque

from .system import CoxeterSystem
from .words import Word, LimitExceeded, multiply, format_word

DEFAULT_MAX_VERTICES = 10**6


class CayleyBall:
    """A radius-r ball; vertex 0 is the identity."""

    def __init__(self, system: CoxeterSystem, radius: int, words: list[Word]):
        self.system = system
        self.radius = radius
        self.words = words
        self.index: dict[Word, int] = {w: i for i, w in enumerate(words)}
        # adj[v][s] = the vertex v·s when it lies in the ball
        self.adj: list[dict[int, int]] = [dict() for _ in words]
        self.edges: set[tuple[int, int, int]] = set()

    def _add_edge(self, u: int, v: int, label: int) -> None:
        self.adj[u][label] = v
        self.adj[v][label] = u
        self.edges.add((min(u, v), max(u, v), label))

    @property
    def size(self) -> int:
        return len(self.words)

    def word_length(self, v: int) -> int:
        return len(self.words[v])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def complete(self) -> bool:
        """True when the ball is the whole Cayley graph (the group is finite).

        Every vertex of the full Cayley graph has degree |S|; a boundary
        vertex of a proper ball is missing at least the edge toward the
        sphere of the next radius, so full degree everywhere means no
        boundary exists.
        """
        return all(len(nbrs) == self.system.rank for nbrs in self.adj)

    def interior(self, interior_radius: int) -> list[int]:
        """Vertex ids at word length <= interior_radius."""
        return [v for v in range(self.size) if len(self.words[v]) <= interior_radius]

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v].values())

    def edge_label(self, u: int, v: int) -> int:
        for label, w in self.adj[u].items():
            if w == v:
                return label
        raise KeyError(f"no edge between {u} and {v}")

    def has_edge(self, u: int, v: int) -> bool:
        return any(w == v for w in self.adj[u].values())

    def to_json_dict(self) -> dict:
        return {
            "radius": self.radius,
            "vertices": [{"id": i, "word": format_word(self.system, w)} for i, w in enumerate(self.words)],
            "edges": [[u, v, self.system.name_of(s)] for u, v, s in sorted(self.edges)],
        }

    def to_dot(self) -> str:
        """Graphviz rendering convenience; labels are generator names."""
        lines = ["graph cayley_ball {"]
        for i, w in enumerate(self.words):
            lines.append(f'  v{i} [label="{format_word(self.system, w)}"];')
        for u, v, s in sorted(self.edges):
            lines.append(f'  v{u} -- v{v} [label="{self.system.name_of(s)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_ball(
    system: CoxeterSystem,
    radius: int,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_states: int | None = None,
) -> CayleyBall:
    """Breadth-first enumeration of all elements of length <= radius."""
    from .words import DEFAULT_MAX_STATES

    if max_states is None:
        max_states = DEFAULT_MAX_STATES
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    words: list[Word] = [()]
    index: dict[Word, int] = {(): 0}
    ball = CayleyBall(system, radius, words)
    frontier = [0]
    for layer in range(1, radius + 1):
        next_frontier: list[int] = []
        for v in frontier:
            for s in system.generators():
                target = multiply(system, words[v], (s,), max_states=max_states)
                if target in index:
                    ball._add_edge(v, index[target], s)
                    continue
                if len(target) != layer:
                    # shorter product: its vertex already exists by BFS order
                    raise AssertionError("BFS invariant violated")
                if len(words) >= max_vertices:
                    raise LimitExceeded(f"ball exceeded {max_vertices} vertices")
                vid = len(words)
                index[target] = vid
                words.append(target)
                ball.adj.append(dict())
                next_frontier.append(vid)
                ball._add_edge(v, vid, s)
        frontier = next_frontier
        if not frontier:
            break
    ball.index = index
    return ball


def distance(ball: CayleyBall, u: int, v: int) -> int | None:
    """Graph distance inside the ball; None when unreachable (never, for balls)."""
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in ball.adj[x].values():
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                queue.append(y)
    return None


def count_paths(ball: CayleyBall, u: int, v: int, length: int) -> int:
    """Number of simple paths from u to v of exactly the given length.

    Depth-first with a distance-from-target prune: a partial path with k
    steps left is abandoned unless the current vertex is within k of v.
    """
    if length == 0:
        return 1 if u == v else 0
    dist_to_v = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if dist_to_v[x] >= length:
            continue
        for y in ball.adj[x].values():
            if y not in dist_to_v:
                dist_to_v[y] = dist_to_v[x] + 1
                queue.append(y)

    count = 0
    path_set = {u}

    def walk(x: int, remaining: int) -> None:
        nonlocal count
        if remaining == 0:
            if x == v:
                count += 1
            return
        for y in ball.adj[x].values():
            if y in path_set:
                continue
            d = dist_to_v.get(y)
            if d is None or d > remaining - 1:
                continue
            path_set.add(y)
            walk(y, remaining - 1)
            path_set.discard(y)

    walk(u, length)
    return count
