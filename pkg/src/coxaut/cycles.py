"""Embedded cycles in Cayley balls and the essential/relator dichotomy.

An embedded 2n-cycle is essential when every pair of opposite vertices is
at graph distance n with exactly two simple paths of length n between
them (the two arcs of the cycle itself).  A relator cycle is the trace of
the relation (st)^m from some base vertex: 2m edges alternating s, t.
On the full Cayley graph the essential cycles are exactly the relator
cycles; on a finite ball that equivalence is only trustworthy for cycles
far enough from the boundary, so every classification carries a
``certified`` flag.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ball import CayleyBall, distance, count_paths
from .system import CoxeterSystem


@dataclass(frozen=True)
class EmbeddedCycle:
    """A cycle as a canonical vertex tuple plus the edge labels along it.

    vertices[i] -- vertices[i+1] is the edge labels[i]; labels[-1] closes the
    cycle back to vertices[0].  Canonical form: the smallest vertex id comes
    first and its smaller cycle-neighbor comes second.
    """

    vertices: tuple[int, ...]
    labels: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def half_length(self) -> int:
        return len(self.vertices) // 2

    def opposite_pairs(self) -> list[tuple[int, int]]:
        n = self.half_length
        return [(self.vertices[i], self.vertices[i + n]) for i in range(n)]


def _canonical_cycle(ball: CayleyBall, vertices: list[int]) -> EmbeddedCycle:
    k = len(vertices)
    start = vertices.index(min(vertices))
    rotated = vertices[start:] + vertices[:start]
    if rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[1:][::-1]
    labels = tuple(ball.edge_label(rotated[i], rotated[(i + 1) % k]) for i in range(k))
    return EmbeddedCycle(tuple(rotated), labels)


def enumerate_embedded_cycles(ball: CayleyBall, max_length: int) -> list[EmbeddedCycle]:
    """All embedded cycles of length <= max_length, each exactly once.

    Each cycle is found only from its minimal vertex (the DFS root only
    visits larger ids) and only in one direction (recorded when the second
    vertex is smaller than the last), so no deduplication pass is needed.
    """
    cycles: list[EmbeddedCycle] = []
    for root in range(ball.size):
        path = [root]
        on_path = {root}

        def walk() -> None:
            current = path[-1]
            for nxt in ball.neighbors(current):
                if nxt == root:
                    if len(path) >= 3 and path[1] < path[-1]:
                        cycles.append(_canonical_cycle(ball, list(path)))
                    continue
                if nxt < root or nxt in on_path or len(path) == max_length:
                    continue
                path.append(nxt)
                on_path.add(nxt)
                walk()
                path.pop()
                on_path.discard(nxt)

        walk()
    cycles.sort(key=lambda c: (len(c), c.vertices))
    return cycles


def relator_cycles(ball: CayleyBall) -> list[EmbeddedCycle]:
    """Traces of (st)^m for each finite pair, from every base vertex in the ball.

    A trace survives only if all 2m edges lie in the ball and it returns to
    its base; distinct bases on the same cycle give the same canonical form,
    which is deduplicated.
    """
    seen: dict[tuple[int, ...], EmbeddedCycle] = {}
    for base in range(ball.size):
        for s, t, m in ball.system.finite_pairs():
            vertices = [base]
            ok = True
            for i in range(2 * m - 1):
                label = (s, t)[i % 2]
                nxt = ball.adj[vertices[-1]].get(label)
                if nxt is None:
                    ok = False
                    break
                vertices.append(nxt)
            if not ok:
                continue
            # the 2m edge labels alternate s,t,...; the closing one is t
            if ball.adj[vertices[-1]].get(t) != base:
                continue
            if len(set(vertices)) != 2 * m:
                continue
            cycle = _canonical_cycle(ball, vertices)
            seen.setdefault(cycle.vertices, cycle)
    return sorted(seen.values(), key=lambda c: (len(c), c.vertices))


def map_cycle(ball: CayleyBall, vmap, cycle: EmbeddedCycle) -> EmbeddedCycle | None:
    """Image of a cycle under a vertex map, or None when any image is missing.

    Raises ValueError when the images fail to form an embedded cycle; a
    verified automorphism never does that.
    """
    images = [vmap[v] for v in cycle.vertices]
    if any(x is None for x in images):
        return None
    if len(set(images)) != len(images):
        raise ValueError("cycle image has repeated vertices")
    k = len(images)
    for i in range(k):
        if not ball.has_edge(images[i], images[(i + 1) % k]):
            raise ValueError("cycle image is not a cycle")
    return _canonical_cycle(ball, images)


@dataclass(frozen=True)
class EssentialityReport:
    essential: bool
    certified: bool
    failure: tuple[int, int, int, int] | None = None
    """(u, v, distance, path_count) for the first opposite pair violating the test."""


def certifies(ball: CayleyBall, cycle: EmbeddedCycle) -> bool:
    """Whether the ball is large enough to trust the essentiality verdict.

    A complete ball is the whole graph, so every verdict stands.  Otherwise
    every cycle vertex must sit at word length <= radius - n: all length-n
    simple paths between opposite vertices then stay inside the ball, so
    distances and path counts match the full Cayley graph.
    """
    if ball.complete:
        return True
    n = cycle.half_length
    return all(ball.word_length(v) <= ball.radius - n for v in cycle.vertices)


def is_essential(ball: CayleyBall, cycle: EmbeddedCycle) -> EssentialityReport:
    """Test every opposite pair: distance n and exactly two simple n-paths."""
    if len(cycle) % 2 != 0:
        return EssentialityReport(False, certifies(ball, cycle), None)
    n = cycle.half_length
    for u, v in cycle.opposite_pairs():
        d = distance(ball, u, v)
        if d != n:
            return EssentialityReport(False, certifies(ball, cycle), (u, v, d if d is not None else -1, -1))
        paths = count_paths(ball, u, v, n)
        if paths != 2:
            return EssentialityReport(False, certifies(ball, cycle), (u, v, d, paths))
    return EssentialityReport(True, certifies(ball, cycle), None)


def is_alternating(cycle: EmbeddedCycle) -> bool:
    """Labels read s t s t ... around the whole cycle (two labels, alternating)."""
    k = len(cycle.labels)
    if k % 2 != 0:
        return False
    return all(cycle.labels[i] == cycle.labels[i % 2] for i in range(k)) and cycle.labels[0] != cycle.labels[1]


def is_relator_shape(system: CoxeterSystem, cycle: EmbeddedCycle) -> bool:
    """Alternating in two labels s, t with length exactly 2 m(s, t)."""
    if not is_alternating(cycle):
        return False
    s, t = cycle.labels[0], cycle.labels[1]
    return system.order(s, t) == len(cycle) // 2


@dataclass(frozen=True)
class CharacterizationReport:
    """Certified-essential vs certified-relator comparison on one ball."""

    max_length: int
    cycles_examined: int
    certified_essential: int
    certified_relator: int
    essential_not_relator: tuple[EmbeddedCycle, ...]
    relator_not_essential: tuple[EmbeddedCycle, ...]

    @property
    def ok(self) -> bool:
        return not self.essential_not_relator and not self.relator_not_essential


def verify_essential_characterization(ball: CayleyBall, max_length: int | None = None) -> CharacterizationReport:
    """Check that certified essential cycles and certified relator cycles agree.

    Only certified cycles participate on either side: an uncertified relator
    cycle near the boundary may fail the distance test purely because the
    ball cuts off its second arc's competitors.
    """
    if max_length is None:
        m = ball.system.max_finite_order()
        max_length = 2 * m if m is not None else 4
    relators = {c.vertices: c for c in relator_cycles(ball) if certifies(ball, c)}
    essentials: dict[tuple[int, ...], EmbeddedCycle] = {}
    examined = 0
    for cycle in enumerate_embedded_cycles(ball, max_length):
        examined += 1
        report = is_essential(ball, cycle)
        if report.essential and report.certified:
            essentials[cycle.vertices] = cycle
    missing_relator = tuple(c for key, c in sorted(essentials.items()) if key not in relators)
    missing_essential = tuple(
        c for key, c in sorted(relators.items()) if key not in essentials and len(c) <= max_length
    )
    return CharacterizationReport(
        max_length=max_length,
        cycles_examined=examined,
        certified_essential=len(essentials),
        certified_relator=len([k for k, c in relators.items() if len(c) <= max_length]),
        essential_not_relator=missing_relator,
        relator_not_essential=missing_essential,
    )
