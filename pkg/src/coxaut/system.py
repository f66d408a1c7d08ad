"""Coxeter systems, their defining diagrams, and diagram automorphisms.

A system is given by a finite ordered generator set S and the symmetric
order function m(s, t) in {2, 3, ...} or infinity for distinct s, t.
Generators are handled as dense integer ids in declaration order; only
finite orders are stored, every unlisted pair is infinite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

INFINITY = math.inf

# Diagram automorphism enumeration is factorial in the rank.
MAX_RANK = 12


class ParseError(ValueError):
    """Raised for malformed diagram files or word strings."""


class CoxeterSystem:
    """A generator list plus the finite pair orders; immutable after construction."""

    def __init__(self, names, finite_orders):
        names = tuple(names)
        if not names:
            raise ParseError("at least one generator is required")
        if len(set(names)) != len(names):
            raise ParseError("duplicate generator names")
        orders: dict[tuple[int, int], int] = {}
        for (s, t), m in dict(finite_orders).items():
            if s == t:
                raise ParseError(f"self-pair ({names[s]}, {names[s]}) is not allowed")
            if not isinstance(m, int) or m < 2:
                raise ParseError(f"order for ({names[s]}, {names[t]}) must be an integer >= 2, got {m!r}")
            key = (min(s, t), max(s, t))
            if key in orders and orders[key] != m:
                raise ParseError(f"conflicting orders for ({names[key[0]]}, {names[key[1]]})")
            orders[key] = m
        self.names = names
        self._orders = orders
        self._index = {name: i for i, name in enumerate(names)}
        # Session-level memo of canonical forms, keyed by word tuple.
        # Plain dict get/setdefault gives the linearizable get-or-insert the
        # word engine relies on under concurrent use.
        self._reduce_cache: dict[tuple[int, ...], tuple[int, ...]] = {}

    @property
    def rank(self) -> int:
        return len(self.names)

    def generators(self) -> range:
        return range(self.rank)

    def order(self, s: int, t: int):
        """m(s, t): 1 on the diagonal, a stored finite value, or INFINITY."""
        if s == t:
            return 1
        return self._orders.get((min(s, t), max(s, t)), INFINITY)

    def is_finite(self, s: int, t: int) -> bool:
        return s != t and (min(s, t), max(s, t)) in self._orders

    def finite_pairs(self) -> list[tuple[int, int, int]]:
        """Sorted (s, t, m) triples with s < t and m finite: the diagram edges."""
        return sorted((s, t, m) for (s, t), m in self._orders.items())

    def neighbors(self, s: int) -> list[int]:
        """Generators joined to s by a diagram edge (finite order)."""
        return [t for t in self.generators() if t != s and self.is_finite(s, t)]

    def max_finite_order(self) -> int | None:
        return max(self._orders.values()) if self._orders else None

    def name_of(self, s: int) -> str:
        return self.names[s]

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(f"unknown generator name {name!r}") from None

    def to_json_dict(self) -> dict:
        return {
            "generators": list(self.names),
            "orders": [[s, t, m] for s, t, m in self.finite_pairs()],
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoxeterSystem):
            return NotImplemented
        return self.names == other.names and self._orders == other._orders

    def __repr__(self) -> str:
        pairs = ", ".join(f"m({self.names[s]},{self.names[t]})={m}" for s, t, m in self.finite_pairs())
        return f"CoxeterSystem({' '.join(self.names)}{'; ' + pairs if pairs else ''})"


def parse_system(text: str) -> CoxeterSystem:
    """Parse the diagram file format.

    Line-oriented, '#' starts a comment.  The first real line is
    ``gens <name1> <name2> ...``; each following line is
    ``pair <nameA> <nameB> <m>`` with m an integer >= 2 or ``inf``
    (equivalent to omitting the pair).
    """
    names: tuple[str, ...] | None = None
    pair_lines: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if names is None:
            if tokens[0] != "gens":
                raise ParseError(f"line {lineno}: expected 'gens' line first")
            if len(tokens) < 2:
                raise ParseError(f"line {lineno}: 'gens' needs at least one name")
            names = tuple(tokens[1:])
        elif tokens[0] == "gens":
            raise ParseError(f"line {lineno}: duplicate 'gens' line")
        elif tokens[0] == "pair":
            if len(tokens) != 4:
                raise ParseError(f"line {lineno}: expected 'pair <a> <b> <m>'")
            pair_lines.append((tokens[1], tokens[2], tokens[3]))
        else:
            raise ParseError(f"line {lineno}: unknown directive {tokens[0]!r}")
    if names is None:
        raise ParseError("missing 'gens' line")

    index = {name: i for i, name in enumerate(names)}
    if len(index) != len(names):
        raise ParseError("duplicate generator names")
    orders: dict[tuple[int, int], int] = {}
    seen: set[tuple[int, int]] = set()
    for a, b, m_token in pair_lines:
        for name in (a, b):
            if name not in index:
                raise ParseError(f"unknown generator name {name!r} in pair line")
        s, t = index[a], index[b]
        if s == t:
            raise ParseError(f"self-pair ({a}, {b}) is not allowed")
        key = (min(s, t), max(s, t))
        if key in seen:
            raise ParseError(f"pair ({a}, {b}) specified twice")
        seen.add(key)
        if m_token == "inf":
            continue
        try:
            m = int(m_token)
        except ValueError:
            raise ParseError(f"order must be an integer or 'inf', got {m_token!r}") from None
        if m < 2:
            raise ParseError(f"order for ({a}, {b}) must be >= 2, got {m}")
        orders[(s, t)] = m
    return CoxeterSystem(names, orders)


@dataclass(frozen=True)
class DiagramAutomorphism:
    """A permutation of the generators preserving every pair order."""

    images: tuple[int, ...]

    def __call__(self, s: int) -> int:
        return self.images[s]

    def apply_word(self, word: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self.images[x] for x in word)

    def compose(self, other: DiagramAutomorphism) -> DiagramAutomorphism:
        """self after other: (self.compose(other))(s) == self(other(s))."""
        return DiagramAutomorphism(tuple(self.images[x] for x in other.images))

    def inverse(self) -> DiagramAutomorphism:
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return DiagramAutomorphism(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycle_notation(self, names) -> str:
        """Display as disjoint cycles over generator names, 'id' when trivial."""
        seen = set()
        cycles = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                seen.add(start)
                continue
            cycle = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self.images[x]
            cycles.append("(" + " ".join(names[i] for i in cycle) + ")")
        return "".join(cycles) if cycles else "id"


def identity_automorphism(system: CoxeterSystem) -> DiagramAutomorphism:
    return DiagramAutomorphism(tuple(system.generators()))


def is_label_preserving(system: CoxeterSystem, images: tuple[int, ...]) -> bool:
    n = system.rank
    return all(
        system.order(images[s], images[t]) == system.order(s, t)
        for s in range(n)
        for t in range(s + 1, n)
    )


def enumerate_diagram_automorphisms(system: CoxeterSystem) -> list[DiagramAutomorphism]:
    """All label-preserving permutations of S, in image-sequence order.

    The identity comes first (it is lexicographically least).  The result is
    closed under composition and inverse: it is the diagram automorphism group.
    """
    if system.rank > MAX_RANK:
        raise ValueError(f"rank {system.rank} exceeds the automorphism enumeration cap of {MAX_RANK}")
    return [
        DiagramAutomorphism(images)
        for images in permutations(range(system.rank))
        if is_label_preserving(system, images)
    ]


@dataclass(frozen=True)
class FlexibilityWitness:
    """A pivot generator and a nontrivial automorphism fixing it and all its neighbors."""

    pivot: int
    phi: DiagramAutomorphism


def validate_witness(system: CoxeterSystem, witness: FlexibilityWitness) -> None:
    """Raise ValueError unless the witness satisfies the flexibility conditions."""
    phi = witness.phi
    if len(phi.images) != system.rank:
        raise ValueError("witness permutation has the wrong rank")
    if not is_label_preserving(system, phi.images):
        raise ValueError("witness permutation does not preserve pair orders")
    if phi.is_identity():
        raise ValueError("witness permutation is trivial")
    if phi(witness.pivot) != witness.pivot:
        raise ValueError("witness permutation moves the pivot")
    for t in system.neighbors(witness.pivot):
        if phi(t) != t:
            raise ValueError(f"witness permutation moves {system.name_of(t)}, a neighbor of the pivot")


def is_flexible(system: CoxeterSystem) -> FlexibilityWitness | None:
    """Search for a flexibility witness; None when the diagram is not flexible.

    Brute force over pivots and label-preserving permutations; deterministic
    choice: smallest pivot index, then lexicographically smallest images.
    """
    automorphisms = enumerate_diagram_automorphisms(system)
    for pivot in system.generators():
        required = [pivot] + system.neighbors(pivot)
        for phi in automorphisms:
            if phi.is_identity():
                continue
            if all(phi(x) == x for x in required):
                return FlexibilityWitness(pivot, phi)
    return None
