"""The per-system invariant suite behind the verify command.

Each check returns pass, fail, vacuous (nothing in range to test), or
indeterminate (an enumeration guard tripped; no claim either way).  The
closing verdict is deliberately labeled -EVIDENCE: a finite ball cannot
prove anything about the infinite graph, it can only agree or disagree
with what the structure theory predicts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .automorphisms import (
    BallAutomorphism,
    coupling_violations,
    decompose,
    diagram_aut,
    identity_stabilizer_census,
    left_mult,
    local_permutation,
    local_permutation_field,
    psi_family_distinctness,
    psi_n,
    psi_phi,
    psi_phi_word,
    verify_ball_automorphism,
)
from .ball import CayleyBall, build_ball, distance
from .cycles import (
    enumerate_embedded_cycles,
    is_alternating,
    is_essential,
    map_cycle,
    relator_cycles,
    verify_essential_characterization,
)
from .system import (
    CoxeterSystem,
    DiagramAutomorphism,
    enumerate_diagram_automorphisms,
    is_flexible,
)
from .words import LimitExceeded, apply_m_operation, m_class, reduce_word, _m_moves

DEFAULT_COMMUTATION_WORDS = 10**4


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # pass | fail | vacuous | indeterminate
    detail: str

    def to_json_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class SystemReport:
    radius: int
    probe_radius: int
    flexible: bool
    verdict: str
    checks: tuple[CheckResult, ...]

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if c.status == "fail")

    @property
    def indeterminate(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if c.status == "indeterminate")

    @property
    def ok(self) -> bool:
        return not self.failures and not self.indeterminate

    def to_json_dict(self) -> dict:
        return {
            "radius": self.radius,
            "probe_radius": self.probe_radius,
            "flexible": self.flexible,
            "verdict": self.verdict,
            "checks": [c.to_json_dict() for c in self.checks],
        }


def commutation_violations(
    system: CoxeterSystem,
    phi: DiagramAutomorphism,
    num_words: int = DEFAULT_COMMUTATION_WORDS,
    seed: int = 0,
    max_len: int = 12,
) -> list[str]:
    """Random-word test: single rewriting moves commute with letterwise phi.

    For every tt-deletion and every m-operation applicable to a random word,
    applying the move then phi must equal applying phi then the corresponding
    move (same position, pair mapped through phi).  Exact word equality, not
    equality modulo reduction.
    """
    rng = random.Random(seed)
    violations: list[str] = []
    for _ in range(num_words):
        word = tuple(rng.randrange(system.rank) for _ in range(rng.randint(0, max_len)))
        phi_word = phi.apply_word(word)
        for i in range(len(word) - 1):
            if word[i] == word[i + 1]:
                via_op = phi.apply_word(word[:i] + word[i + 2 :])
                via_phi = phi_word[:i] + phi_word[i + 2 :]
                if via_op != via_phi:
                    violations.append(f"deletion at {i} of {word}")
        for moved, (pos, u, v) in _m_moves(system, word):
            via_op = phi.apply_word(moved)
            try:
                via_phi = apply_m_operation(system, phi_word, pos, phi(u), phi(v))
            except ValueError:
                # the image pair has a different order, so the corresponding
                # move does not even exist; phi is not label-preserving
                violations.append(f"m-operation at {pos} pair ({u},{v}) of {word}: no image move")
                continue
            if via_op != via_phi:
                violations.append(f"m-operation at {pos} pair ({u},{v}) of {word}")
        if len(violations) > 20:
            break
    return violations


def default_probe_radius(system: CoxeterSystem, radius: int) -> int:
    """radius minus the largest finite order; one less than the radius if the
    diagram has no edges at all."""
    m = system.max_finite_order()
    probe = radius - m if m is not None else radius - 1
    return max(probe, 0)


def run_system_checks(
    system: CoxeterSystem,
    radius: int = 5,
    probe_radius: int | None = None,
    max_vertices: int = 10**6,
    max_nodes: int = 10**6,
    max_states: int = 10**6,
    commutation_words: int = DEFAULT_COMMUTATION_WORDS,
    seed: int = 0,
) -> SystemReport:
    if probe_radius is None:
        probe_radius = default_probe_radius(system, radius)
    if probe_radius > radius:
        raise ValueError("probe radius cannot exceed the radius")
    witness = is_flexible(system)
    checks: list[CheckResult] = []

    try:
        ball = build_ball(system, radius, max_vertices=max_vertices, max_states=max_states)
    except LimitExceeded as exc:
        return SystemReport(
            radius,
            probe_radius,
            witness is not None,
            "INDETERMINATE",
            (CheckResult("build-ball", "indeterminate", str(exc)),),
        )

    def add(name: str, body) -> None:
        try:
            status, detail = body()
        except LimitExceeded as exc:
            status, detail = "indeterminate", str(exc)
        checks.append(CheckResult(name, status, detail))

    # -- ball geometry --------------------------------------------------

    def bipartite() -> tuple[str, str]:
        if not ball.edges:
            return "vacuous", "no edges at this radius"
        bad = [
            (u, v)
            for u, v, _ in ball.edges
            if abs(ball.word_length(u) - ball.word_length(v)) != 1
        ]
        if bad:
            return "fail", f"{len(bad)} edges join equal word lengths, e.g. {bad[0]}"
        return "pass", f"{len(ball.edges)} edges, all joining consecutive lengths"

    add("bipartite-edges", bipartite)

    def interior_degree() -> tuple[str, str]:
        vertices = [v for v in range(ball.size) if ball.word_length(v) <= radius - 1]
        if not vertices:
            return "vacuous", "no interior vertices at this radius"
        bad = [v for v in vertices if ball.degree(v) != system.rank]
        if bad:
            return "fail", f"vertex {bad[0]} has degree {ball.degree(bad[0])}, expected {system.rank}"
        return "pass", f"{len(vertices)} interior vertices all have degree {system.rank}"

    add("interior-degree", interior_degree)

    def distance_equals_length() -> tuple[str, str]:
        bad = [v for v in range(ball.size) if distance(ball, 0, v) != ball.word_length(v)]
        if bad:
            return "fail", f"vertex {bad[0]}: distance {distance(ball, 0, bad[0])} != length {ball.word_length(bad[0])}"
        return "pass", f"distance from identity equals word length at all {ball.size} vertices"

    add("distance-equals-length", distance_equals_length)

    # -- cycles ----------------------------------------------------------

    max_m = system.max_finite_order()
    cycle_cap = (2 * max_m if max_m is not None else 6) + 1
    all_cycles = enumerate_embedded_cycles(ball, cycle_cap)

    def no_odd_cycles() -> tuple[str, str]:
        if not all_cycles:
            return "vacuous", f"no embedded cycles of length <= {cycle_cap}"
        odd = [c for c in all_cycles if len(c) % 2 != 0]
        if odd:
            return "fail", f"odd cycle of length {len(odd[0])} at vertices {odd[0].vertices}"
        return "pass", f"{len(all_cycles)} cycles of length <= {cycle_cap}, all even"

    add("no-odd-cycles", no_odd_cycles)

    def essential_census() -> tuple[str, str]:
        report = verify_essential_characterization(ball)
        if not report.ok:
            extra = report.essential_not_relator or report.relator_not_essential
            return "fail", (
                f"{len(report.essential_not_relator)} essential non-relator, "
                f"{len(report.relator_not_essential)} relator non-essential; e.g. {extra[0].vertices}"
            )
        if report.certified_essential == 0:
            return "vacuous", "no certified cycles at this radius"
        return "pass", (
            f"{report.certified_essential} certified essential = "
            f"{report.certified_relator} certified relator cycles"
        )

    add("essential-census", essential_census)

    certified_essential = []
    for c in all_cycles:
        if len(c) % 2 == 0:
            r = is_essential(ball, c)
            if r.essential and r.certified:
                certified_essential.append(c)

    def essential_alternation() -> tuple[str, str]:
        if not certified_essential:
            return "vacuous", "no certified essential cycles"
        bad = [c for c in certified_essential if not is_alternating(c)]
        if bad:
            return "fail", f"non-alternating essential cycle at {bad[0].vertices} labels {bad[0].labels}"
        return "pass", f"all {len(certified_essential)} certified essential cycles alternate in two labels"

    add("essential-alternation", essential_alternation)

    # -- standard automorphisms and their fields -------------------------

    def left_mult_fields() -> tuple[str, str]:
        sample = [w for w in ball.words if len(w) <= min(2, radius - 1)]
        if radius < 1:
            return "vacuous", "radius too small for left multiplications"
        checked = 0
        for w in sample:
            aut = left_mult(ball, w)
            report = verify_ball_automorphism(ball, aut)
            if not report.ok:
                return "fail", f"left_mult({w}) not verified: {report.violations[0]}"
            field = local_permutation_field(ball, aut)
            if field.perms and not (field.is_constant and field.constant == tuple(system.generators())):
                return "fail", f"left_mult({w}) field is not the constant identity"
            checked += 1
        return "pass", f"{checked} left multiplications verified with constant identity fields"

    add("left-mult-identity-field", left_mult_fields)

    def diagram_fields() -> tuple[str, str]:
        for d in enumerate_diagram_automorphisms(system):
            aut = diagram_aut(ball, d)
            report = verify_ball_automorphism(ball, aut)
            if not report.ok:
                return "fail", f"diagram_aut({d.images}) not verified: {report.violations[0]}"
            field = local_permutation_field(ball, aut)
            if field.perms and not (field.is_constant and field.constant == d.images):
                return "fail", f"diagram_aut({d.images}) field is not constantly d"
        if not ball.edges:
            return "vacuous", "no edges; fields are empty"
        return "pass", f"{len(enumerate_diagram_automorphisms(system))} diagram automorphisms verified, fields constant"

    add("diagram-aut-field", diagram_fields)

    # -- identity-stabilizer census ---------------------------------------

    census = None

    def census_runs() -> tuple[str, str]:
        nonlocal census
        census = identity_stabilizer_census(ball, probe_radius, max_nodes=max_nodes)
        for entry in census.entries:
            report = verify_ball_automorphism(ball, entry.automorphism)
            if not report.ok:
                return "fail", f"census entry {entry.images} not verified: {report.violations[0]}"
        return "pass", (
            f"{census.count} entries ({census.diagram_count} diagram, {census.exotic_count} exotic) "
            f"in {census.search_nodes} search nodes"
        )

    add("census-verified", census_runs)

    def census_coupling() -> tuple[str, str]:
        if census is None:
            return "indeterminate", "census unavailable"
        checked = 0
        for entry in census.entries:
            bad = coupling_violations(ball, entry.automorphism)
            if bad:
                v, u, s, x = bad[0]
                return "fail", (
                    f"entry {entry.images}: coupling fails across edge ({v},{u}) "
                    f"label {system.name_of(s)} at generator {system.name_of(x)}"
                )
            checked += 1
        if checked == 0 or probe_radius < 1:
            return "vacuous", "no couplable pairs at this probe radius"
        return "pass", f"adjacent-vertex coupling holds for all {checked} census entries"

    add("census-coupling", census_coupling)

    def census_diagram_consistency() -> tuple[str, str]:
        if census is None:
            return "indeterminate", "census unavailable"
        if witness is not None:
            return "vacuous", "flexible diagram; exotic entries are expected"
        exotic = [e for e in census.entries if e.verdict != "diagram"]
        if exotic:
            return "fail", f"non-diagram census entry {exotic[0].images} on a non-flexible diagram"
        for entry in census.entries:
            field = local_permutation_field(ball, entry.automorphism)
            if field.perms and not field.is_constant:
                return "fail", f"entry {entry.images} has a non-constant field on a non-flexible diagram"
        return "pass", f"all {census.count} entries are diagram-automorphism restrictions with constant fields"

    add("census-diagram-consistency", census_diagram_consistency)

    def essential_image() -> tuple[str, str]:
        if census is None:
            return "indeterminate", "census unavailable"
        auts: list[BallAutomorphism] = [e.automorphism for e in census.entries]
        if witness is not None and radius >= 2:
            auts.append(psi_phi(ball, witness))
        checked = 0
        for aut in auts:
            for cycle in certified_essential:
                image = map_cycle(ball, aut.vmap, cycle)
                if image is None:
                    continue
                report = is_essential(ball, image)
                if not report.certified:
                    continue
                if not report.essential:
                    return "fail", f"image {image.vertices} of essential cycle {cycle.vertices} is not essential"
                checked += 1
        if checked == 0:
            return "vacuous", "no certified images to check"
        return "pass", f"{checked} certified essential-cycle images are essential"

    add("essential-cycle-image", essential_image)

    # -- exotic automorphisms (flexible diagrams only) ---------------------

    def psi_checks() -> tuple[str, str]:
        if witness is None:
            return "vacuous", "diagram is not flexible"
        if radius < 2:
            return "vacuous", "radius too small for the exotic map"
        aut = psi_phi(ball, witness)
        report = verify_ball_automorphism(ball, aut)
        if not report.ok:
            return "fail", f"psi not verified: {report.violations[0]}"
        if not report.total:
            return "fail", "psi vertex map is not total"
        if aut.vmap[0] != 0:
            return "fail", "psi moves the identity vertex"
        for v in range(ball.size):
            if ball.word_length(aut.vmap[v]) != ball.word_length(v):
                return "fail", f"psi changes word length at vertex {v}"
        try:
            factored = decompose(ball, aut)
        except ValueError as exc:
            return "fail", f"decompose raised on psi: {exc}"
        if factored is not None:
            return "fail", f"psi unexpectedly decomposes as ({factored.word}, {factored.diagram.images})"
        return "pass", "psi verified total, length-preserving, identity-fixing, and non-factorable"

    add("psi-verified", psi_checks)

    def psi_well_defined() -> tuple[str, str]:
        if witness is None:
            return "vacuous", "diagram is not flexible"
        for v in range(ball.size):
            targets = {
                reduce_word(system, psi_phi_word(system, witness, w), max_states=max_states)
                for w in m_class(system, ball.words[v], max_states=max_states)
            }
            if len(targets) != 1:
                return "fail", f"psi images differ across the m-class of vertex {v}: {sorted(targets)}"
        return "pass", f"psi constant on the m-class at all {ball.size} vertices"

    add("psi-m-class-well-defined", psi_well_defined)

    def psi_field() -> tuple[str, str]:
        if witness is None:
            return "vacuous", "diagram is not flexible"
        if radius < 2:
            return "vacuous", "radius too small to see the field"
        aut = psi_phi(ball, witness)
        field = local_permutation_field(ball, aut)
        if field.is_constant:
            return "fail", "psi field is constant; expected an exotic, non-label-permuting map"
        pivot_vertex = ball.index[(witness.pivot,)]
        pi_e = local_permutation(ball, aut, 0)
        pi_s = local_permutation(ball, aut, pivot_vertex)
        moved = [t for t in system.generators() if witness.phi(t) != t]
        for t in moved:
            if pi_e.get(t) != witness.phi(t):
                return "fail", f"at the identity, label {system.name_of(t)} does not map through phi"
            if pi_s.get(t) != t:
                return "fail", f"at the pivot vertex, label {system.name_of(t)} is not fixed"
        return "pass", (
            f"field non-constant: identity star applies phi, pivot star is fixed "
            f"({len(field.perms)} stars inspected)"
        )

    add("psi-field-witness", psi_field)

    def psi_n_checks() -> tuple[str, str]:
        if witness is None:
            return "vacuous", "diagram is not flexible"
        if radius < 2:
            return "vacuous", "radius too small"
        for n in range(1, min(radius, 5) + 1):
            aut = psi_n(ball, witness, n)
            report = verify_ball_automorphism(ball, aut)
            if not report.ok:
                return "fail", f"psi_{n} not verified: {report.violations[0]}"
            if aut.vmap[0] != 0:
                return "fail", f"psi_{n} moves the identity vertex"
            for v in range(ball.size):
                if ball.word_length(aut.vmap[v]) != ball.word_length(v):
                    return "fail", f"psi_{n} changes word length at vertex {v}"
        return "pass", f"psi_1 .. psi_{min(radius, 5)} verified, identity-fixing, length-preserving"

    add("psi-n-verified", psi_n_checks)

    def psi_family() -> tuple[str, str]:
        if witness is None:
            return "vacuous", "diagram is not flexible"
        n_max = radius // 2
        if n_max < 2:
            return "vacuous", f"radius {radius} too small to separate two family members"
        report = psi_family_distinctness(ball, witness, n_max)
        if not report.ok:
            return "fail", report.detail
        return "pass", report.detail

    add("psi-family-distinct", psi_family)

    def commutation() -> tuple[str, str]:
        if witness is not None:
            phis = [witness.phi]
        else:
            phis = [d for d in enumerate_diagram_automorphisms(system) if not d.is_identity()]
        if not phis:
            return "vacuous", "no nontrivial diagram automorphism to test against"
        for phi in phis:
            bad = commutation_violations(system, phi, num_words=commutation_words, seed=seed)
            if bad:
                return "fail", f"phi {phi.images}: {bad[0]}"
        return "pass", f"{commutation_words} random words against each of {len(phis)} map(s), zero violations"

    add("rewriting-phi-commutation", commutation)

    # -- verdict -----------------------------------------------------------

    n_diagram = len(enumerate_diagram_automorphisms(system))
    if census is None:
        verdict = "INDETERMINATE"
    elif witness is not None and census.count > n_diagram:
        verdict = "NONDISCRETE-EVIDENCE"
    elif witness is None and census.count == n_diagram and census.exotic_count == 0:
        verdict = "DISCRETE-EVIDENCE"
    else:
        verdict = "INCONCLUSIVE"

    return SystemReport(radius, probe_radius, witness is not None, verdict, tuple(checks))
