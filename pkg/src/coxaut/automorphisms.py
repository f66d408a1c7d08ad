"""Automorphisms of Cayley balls: standard, factored, and exotic.

Maps of a ball are stored as partial vertex maps with an interior radius:
the map is guaranteed defined on every vertex of word length at most that
radius, and anything it does further out is best-effort.  Left
multiplications lose one unit of interior per letter; diagram
automorphisms and the exotic maps are total.

A factored automorphism is a pair (w, d) of a group element and a diagram
automorphism acting by x -> w * d(x).  These compose by
(w1, d1)(w2, d2) = (w1 * d1(w2), d1 d2) and invert by
(w, d)^-1 = (d^-1(w^-1), d^-1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .ball import CayleyBall
from .system import (
    CoxeterSystem,
    DiagramAutomorphism,
    FlexibilityWitness,
    is_label_preserving,
    validate_witness,
)
from .words import (
    LimitExceeded,
    Word,
    inverse_word,
    multiply,
    reduce_word,
)

DEFAULT_MAX_NODES = 10**6


@dataclass(frozen=True)
class BallAutomorphism:
    """A partial vertex map, defined at least on word lengths <= interior_radius."""

    vmap: tuple[int | None, ...]
    interior_radius: int

    def image(self, v: int) -> int | None:
        return self.vmap[v]

    @property
    def is_total(self) -> bool:
        return all(x is not None for x in self.vmap)

    def defined_vertices(self) -> list[int]:
        return [v for v, x in enumerate(self.vmap) if x is not None]


def left_mult(ball: CayleyBall, word: Word) -> BallAutomorphism:
    """x -> w x.  Interior shrinks by the length of w unless the ball is complete."""
    w = reduce_word(ball.system, tuple(word))
    if len(w) > ball.radius:
        raise ValueError(f"multiplier length {len(w)} exceeds the ball radius {ball.radius}")
    vmap = tuple(ball.index.get(multiply(ball.system, w, x)) for x in ball.words)
    interior = ball.radius if ball.complete else ball.radius - len(w)
    return BallAutomorphism(vmap, interior)


def diagram_aut(ball: CayleyBall, d: DiagramAutomorphism) -> BallAutomorphism:
    """x -> d(x) letterwise.  Total: diagram automorphisms preserve word length."""
    vmap = tuple(ball.index.get(reduce_word(ball.system, d.apply_word(x))) for x in ball.words)
    return BallAutomorphism(vmap, ball.radius)


@dataclass(frozen=True)
class FactoredAutomorphism:
    """The pair (word, diagram) acting as x -> word * diagram(x)."""

    word: Word
    diagram: DiagramAutomorphism

    def act(self, system: CoxeterSystem, x: Word) -> Word:
        return multiply(system, self.word, self.diagram.apply_word(x))

    def compose(self, system: CoxeterSystem, other: FactoredAutomorphism) -> FactoredAutomorphism:
        """self after other, by the law (w1, d1)(w2, d2) = (w1 d1(w2), d1 d2)."""
        return FactoredAutomorphism(
            multiply(system, self.word, self.diagram.apply_word(other.word)),
            self.diagram.compose(other.diagram),
        )

    def inverse(self, system: CoxeterSystem) -> FactoredAutomorphism:
        dinv = self.diagram.inverse()
        return FactoredAutomorphism(reduce_word(system, dinv.apply_word(inverse_word(self.word))), dinv)

    def is_identity(self, system: CoxeterSystem) -> bool:
        return not self.word and self.diagram.is_identity()

    def to_ball(self, ball: CayleyBall) -> BallAutomorphism:
        if len(self.word) > ball.radius:
            raise ValueError(f"multiplier length {len(self.word)} exceeds the ball radius {ball.radius}")
        vmap = tuple(ball.index.get(self.act(ball.system, x)) for x in ball.words)
        interior = ball.radius if ball.complete else ball.radius - len(self.word)
        return BallAutomorphism(vmap, interior)


def identity_factored(system: CoxeterSystem) -> FactoredAutomorphism:
    return FactoredAutomorphism((), DiagramAutomorphism(tuple(system.generators())))


# -- exotic maps -------------------------------------------------------------


def psi_phi_word(system: CoxeterSystem, witness: FlexibilityWitness, word: Word) -> Word:
    """Apply phi before the first pivot occurrence, keep the rest.

    For a reduced word w = w1 s w2 with s the pivot and w1 pivot-free, the
    image is phi(w1) s w2; a word with no pivot maps to phi(word).  The
    result is independent of the chosen reduced word, so applying it to the
    canonical form gives a well-defined map on elements.
    """
    phi = witness.phi
    word = tuple(word)
    try:
        cut = word.index(witness.pivot)
    except ValueError:
        return phi.apply_word(word)
    return phi.apply_word(word[:cut]) + word[cut:]


def psi_phi(ball: CayleyBall, witness: FlexibilityWitness) -> BallAutomorphism:
    validate_witness(ball.system, witness)
    vmap = tuple(
        ball.index.get(reduce_word(ball.system, psi_phi_word(ball.system, witness, x))) for x in ball.words
    )
    return BallAutomorphism(vmap, ball.radius)


def psi_n_word(system: CoxeterSystem, witness: FlexibilityWitness, n: int, word: Word) -> Word:
    """Keep everything through the n-th pivot occurrence, apply phi after it.

    Words with fewer than n pivot occurrences are fixed.  In particular the
    alternating words (s t)^k for a generator t moved by phi are fixed
    exactly when k < n, which separates the members of the family.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    word = tuple(word)
    positions = [i for i, x in enumerate(word) if x == witness.pivot]
    if len(positions) < n:
        return word
    cut = positions[n - 1]
    return word[: cut + 1] + witness.phi.apply_word(word[cut + 1 :])


def psi_n(ball: CayleyBall, witness: FlexibilityWitness, n: int) -> BallAutomorphism:
    validate_witness(ball.system, witness)
    vmap = tuple(
        ball.index.get(reduce_word(ball.system, psi_n_word(ball.system, witness, n, x))) for x in ball.words
    )
    return BallAutomorphism(vmap, ball.radius)


# -- verification ------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    total: bool
    violations: tuple[str, ...]


def verify_ball_automorphism(ball: CayleyBall, aut: BallAutomorphism) -> VerificationReport:
    """Definedness on the interior, injectivity, and edge preservation.

    Edges are checked wherever both endpoint images exist, not only in the
    interior: every constructor in this module restricts a map of the full
    Cayley graph, so any defined pair must respect adjacency.  A total
    injective map on a finite vertex set is a bijection, and a bijection
    sending edges to edges sends non-edges to non-edges, so these checks
    suffice for total maps to certify a genuine graph automorphism.
    """
    violations: list[str] = []
    for v in ball.interior(aut.interior_radius):
        if aut.vmap[v] is None:
            violations.append(f"undefined at interior vertex {v} (length {ball.word_length(v)})")
    images: dict[int, int] = {}
    for v, x in enumerate(aut.vmap):
        if x is None:
            continue
        if x in images:
            violations.append(f"not injective: vertices {images[x]} and {v} both map to {x}")
        else:
            images[x] = v
    total = all(x is not None for x in aut.vmap)
    for u, v, s in sorted(ball.edges):
        fu, fv = aut.vmap[u], aut.vmap[v]
        if fu is None or fv is None:
            continue
        if not ball.has_edge(fu, fv):
            violations.append(
                f"edge ({u}, {v}) labeled {ball.system.name_of(s)} maps to non-adjacent pair ({fu}, {fv})"
            )
    return VerificationReport(ok=not violations, total=total, violations=tuple(violations))


# -- local permutations ------------------------------------------------------


def local_permutation(ball: CayleyBall, aut: BallAutomorphism, v: int) -> dict[int, int]:
    """The label permutation induced at v: s -> label of the image of edge (v, vs).

    Partial when some neighbor image is missing; raises ValueError when the
    map sends an edge to a non-edge (it is then no automorphism at all).
    """
    fv = aut.vmap[v]
    if fv is None:
        raise ValueError(f"vertex {v} has no image")
    result: dict[int, int] = {}
    for s, u in ball.adj[v].items():
        fu = aut.vmap[u]
        if fu is None:
            continue
        if not ball.has_edge(fv, fu):
            raise ValueError(f"edge ({v}, {u}) maps to non-adjacent pair ({fv}, {fu})")
        result[s] = ball.edge_label(fv, fu)
    return result


def star_interior(ball: CayleyBall, interior_radius: int) -> list[int]:
    """Vertices with a full star whose members all lie in the certified region.

    In a proper ball this is word length <= interior_radius - 1; in a complete
    ball vertices at the interior radius itself qualify whenever all their
    neighbors stay within it (e.g. the longest element of a finite group).
    """
    rank = ball.system.rank
    return [
        v
        for v in range(ball.size)
        if ball.word_length(v) <= interior_radius
        and ball.degree(v) == rank
        and all(ball.word_length(u) <= interior_radius for u in ball.adj[v].values())
    ]


@dataclass(frozen=True)
class PermutationField:
    """Local permutations over the star interior, with a constancy summary."""

    vertices: tuple[int, ...]
    perms: tuple[tuple[int, ...], ...]
    is_constant: bool
    constant: tuple[int, ...] | None

    def perm_at(self, v: int) -> tuple[int, ...]:
        return self.perms[self.vertices.index(v)]

    @property
    def is_identity_field(self) -> bool:
        return self.is_constant and self.constant == tuple(range(len(self.constant or ())))


def local_permutation_field(
    ball: CayleyBall, aut: BallAutomorphism, interior_radius: int | None = None
) -> PermutationField:
    """Total local permutations at every star-interior vertex.

    A left multiplication produces the identity at every vertex; a diagram
    automorphism produces its own permutation at every vertex; a non-constant
    field is the signature of an exotic map.
    """
    if interior_radius is None:
        interior_radius = aut.interior_radius
    vertices = star_interior(ball, interior_radius)
    rank = ball.system.rank
    perms: list[tuple[int, ...]] = []
    for v in vertices:
        pi = local_permutation(ball, aut, v)
        if len(pi) != rank:
            raise ValueError(f"local permutation at star-interior vertex {v} is not total")
        perms.append(tuple(pi[s] for s in range(rank)))
    distinct = set(perms)
    constant = perms[0] if len(distinct) == 1 else None
    return PermutationField(tuple(vertices), tuple(perms), len(distinct) <= 1, constant)


def coupling_violations(
    ball: CayleyBall, aut: BallAutomorphism, interior_radius: int | None = None
) -> list[tuple[int, int, int, int]]:
    """Adjacent-vertex coupling: across an s-edge, perm_at(vs)^-1 perm_at(v) fixes
    s and every generator at finite order with s.

    Returns (v, u, s, x) tuples naming each violation; empty means the law
    holds throughout the checked region.
    """
    field = local_permutation_field(ball, aut, interior_radius)
    position = {v: i for i, v in enumerate(field.vertices)}
    fixed_sets = {
        s: [s] + ball.system.neighbors(s) for s in ball.system.generators()
    }
    violations: list[tuple[int, int, int, int]] = []
    for v in field.vertices:
        for s, u in ball.adj[v].items():
            if u not in position:
                continue
            pv = field.perms[position[v]]
            pu = field.perms[position[u]]
            inv_pu = [0] * len(pu)
            for i, val in enumerate(pu):
                inv_pu[val] = i
            for x in fixed_sets[s]:
                if inv_pu[pv[x]] != x:
                    violations.append((v, u, s, x))
    return violations


# -- composition and decomposition -------------------------------------------


def compose_ball(ball: CayleyBall, outer: BallAutomorphism, inner: BallAutomorphism) -> BallAutomorphism:
    """outer after inner; the interior radius is recomputed from actual definedness."""
    vmap: list[int | None] = []
    for v in range(ball.size):
        mid = inner.vmap[v]
        vmap.append(outer.vmap[mid] if mid is not None else None)
    interior = ball.radius
    for v, x in enumerate(vmap):
        if x is None:
            interior = min(interior, ball.word_length(v) - 1)
    return BallAutomorphism(tuple(vmap), interior)


def decompose(ball: CayleyBall, aut: BallAutomorphism) -> FactoredAutomorphism | None:
    """Recover (w, d) with aut(x) = w * d(x) on the interior, if that form exists.

    w is the image of the identity and d the local permutation there.  Raises
    ValueError when that permutation does not preserve the pair orders (no
    factored form can exist, not even in spirit); returns None when the
    factored candidate disagrees with the map somewhere on the interior, the
    signature of an exotic map.
    """
    fe = aut.vmap[0]
    if fe is None:
        raise ValueError("the identity vertex has no image")
    pi = local_permutation(ball, aut, 0)
    if len(pi) != ball.system.rank:
        raise ValueError("the identity star is not fully mapped; decomposition needs interior radius >= 1")
    images = tuple(pi[s] for s in ball.system.generators())
    if not is_label_preserving(ball.system, images):
        raise ValueError("the local permutation at the identity does not preserve pair orders")
    candidate = FactoredAutomorphism(ball.words[fe], DiagramAutomorphism(images))
    for v in ball.interior(aut.interior_radius):
        expected = ball.index.get(candidate.act(ball.system, ball.words[v]))
        if expected is None or expected != aut.vmap[v]:
            return None
    return candidate


# -- identity-stabilizer census ----------------------------------------------


@dataclass(frozen=True)
class StabilizerEntry:
    """One automorphism class, keyed by its restriction to the probe sub-ball."""

    images: tuple[int, ...]
    automorphism: BallAutomorphism
    verdict: str
    diagram: DiagramAutomorphism | None


@dataclass(frozen=True)
class StabilizerCensus:
    radius: int
    probe_radius: int
    probe_count: int
    entries: tuple[StabilizerEntry, ...]
    search_nodes: int

    @property
    def count(self) -> int:
        return len(self.entries)

    @property
    def diagram_count(self) -> int:
        return sum(1 for e in self.entries if e.verdict == "diagram")

    @property
    def exotic_count(self) -> int:
        return sum(1 for e in self.entries if e.verdict == "exotic")


def identity_stabilizer_census(
    ball: CayleyBall, probe_radius: int, max_nodes: int = DEFAULT_MAX_NODES
) -> StabilizerCensus:
    """All graph automorphisms of the ball fixing the identity, up to agreement
    on the probe sub-ball.

    The search assigns images in vertex-id order.  Distance from the fixed
    identity is a graph invariant, and in a ball it equals word length, so a
    candidate image must match the vertex's word length (and degree).  Each
    vertex beyond the identity has an already-assigned neighbor, so candidates
    come from the neighbors of that neighbor's image.  Every edge is checked
    when its later endpoint is placed; a completed assignment is a bijection
    sending edges to edges, hence an automorphism.

    Automorphisms of the ball that disagree only outside the probe sub-ball
    are boundary artifacts of the truncation; deduplicating by the restriction
    keeps one entry per genuinely distinct probe-level action.  Probe ids are
    an id-prefix because breadth-first ids are sorted by word length.
    """
    if probe_radius < 0 or probe_radius > ball.radius:
        raise ValueError("probe radius must lie between 0 and the ball radius")
    size = ball.size
    probe_count = sum(1 for w in ball.words if len(w) <= probe_radius)
    wl = [ball.word_length(v) for v in range(size)]
    degree = [ball.degree(v) for v in range(size)]
    neighbor_ids = [set(ball.adj[v].values()) for v in range(size)]
    assigned_neighbors = [[u for u in sorted(neighbor_ids[v]) if u < v] for v in range(size)]

    assignment = [-1] * size
    assignment[0] = 0
    used = [False] * size
    used[0] = True
    restrictions: set[tuple[int, ...]] = set()
    nodes = 0

    def extend(v: int) -> None:
        nonlocal nodes
        if v == size:
            restrictions.add(tuple(assignment[:probe_count]))
            return
        anchors = assigned_neighbors[v]
        if not anchors:
            # isolated-from-smaller-ids never happens in a BFS ball, but a
            # rank-1 system gives a two-vertex ball where it would; fall back
            # to scanning everything.
            pool = range(size)
        else:
            pool = sorted(neighbor_ids[assignment[anchors[0]]])
        for c in pool:
            if used[c] or wl[c] != wl[v] or degree[c] != degree[v]:
                continue
            if any(assignment[u] not in neighbor_ids[c] for u in anchors):
                continue
            nodes += 1
            if nodes > max_nodes:
                raise LimitExceeded(f"stabilizer search exceeded {max_nodes} nodes")
            assignment[v] = c
            used[c] = True
            extend(v + 1)
            assignment[v] = -1
            used[c] = False

    extend(1)

    diagram_restrictions: dict[tuple[int, ...], DiagramAutomorphism] = {}
    from .system import enumerate_diagram_automorphisms

    for d in enumerate_diagram_automorphisms(ball.system):
        restr = tuple(diagram_aut(ball, d).vmap[:probe_count])
        diagram_restrictions.setdefault(restr, d)

    entries = []
    for images in sorted(restrictions):
        d = diagram_restrictions.get(images)
        padded = images + (None,) * (size - probe_count)
        entries.append(
            StabilizerEntry(
                images=images,
                automorphism=BallAutomorphism(tuple(padded), probe_radius),
                verdict="diagram" if d is not None else "exotic",
                diagram=d,
            )
        )
    return StabilizerCensus(
        radius=ball.radius,
        probe_radius=probe_radius,
        probe_count=probe_count,
        entries=tuple(entries),
        search_nodes=nodes,
    )


# -- the exotic family is infinite -------------------------------------------


@dataclass(frozen=True)
class PsiFamilyReport:
    """Fixed/moved behavior of psi_n on the test words (s t)^k."""

    moved_generator: int
    n_max: int
    fixed: tuple[tuple[bool, ...], ...]
    ok: bool
    detail: str


def psi_family_distinctness(
    ball: CayleyBall, witness: FlexibilityWitness, n_max: int
) -> PsiFamilyReport:
    """Check that psi_1, ..., psi_n_max are pairwise distinct maps.

    With t a generator moved by phi, the element (s t)^k is fixed by psi_n
    exactly when k < n, so the column at k = n separates psi_n from every
    psi_m with m > n; pairwise distinctness follows from the triangular
    fixed/moved table.  The ball must contain every test element (s t)^k,
    hence the radius requirement.
    """
    system = ball.system
    if ball.radius < 2 * n_max:
        raise ValueError(f"radius {ball.radius} too small; need at least {2 * n_max} for n_max={n_max}")
    validate_witness(system, witness)
    moved = [t for t in system.generators() if witness.phi(t) != t]
    t = moved[0]
    s = witness.pivot
    rows: list[tuple[bool, ...]] = []
    problems: list[str] = []
    for n in range(1, n_max + 1):
        row: list[bool] = []
        for k in range(1, n_max + 1):
            word = tuple((s, t)[i % 2] for i in range(2 * k))
            image = reduce_word(system, psi_n_word(system, witness, n, word))
            fixed = image == reduce_word(system, word)
            row.append(fixed)
            if fixed != (k < n):
                problems.append(f"psi_{n} on (st)^{k}: fixed={fixed}, expected {k < n}")
        rows.append(tuple(row))
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if rows[a] == rows[b]:
                problems.append(f"psi_{a + 1} and psi_{b + 1} agree on every test word")
    return PsiFamilyReport(
        moved_generator=t,
        n_max=n_max,
        fixed=tuple(rows),
        ok=not problems,
        detail="; ".join(problems) if problems else f"{n_max} maps pairwise distinct",
    )
