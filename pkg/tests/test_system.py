import math

import pytest

from coxaut.system import (
    CoxeterSystem,
    DiagramAutomorphism,
    FlexibilityWitness,
    ParseError,
    enumerate_diagram_automorphisms,
    identity_automorphism,
    is_flexible,
    is_label_preserving,
    parse_system,
    validate_witness,
)

from conftest import make_system


class TestParsing:
    def test_minimal(self):
        system = parse_system("gens a\n")
        assert system.names == ("a",)
        assert system.rank == 1

    def test_pairs_and_defaults(self):
        system = parse_system("gens s t u\npair t u 2\n")
        assert system.order(1, 2) == 2
        assert system.order(2, 1) == 2
        assert system.order(0, 1) == math.inf
        assert system.order(0, 0) == 1
        assert system.finite_pairs() == [(1, 2, 2)]

    def test_comments_and_blank_lines(self):
        system = parse_system("# a comment\n\ngens a b  # trailing\npair a b 3\n")
        assert system.order(0, 1) == 3

    def test_inf_token_means_omission(self):
        system = parse_system("gens a b\npair a b inf\n")
        assert system.order(0, 1) == math.inf

    @pytest.mark.parametrize(
        "text",
        [
            "pair a b 3\n",  # no gens line
            "gens a a\n",  # duplicate names
            "gens a b\ngens c d\n",  # two gens lines
            "gens a b\npair a a 2\n",  # self pair
            "gens a b\npair a b 1\n",  # order < 2
            "gens a b\npair a b x\n",  # bad token
            "gens a b\npair a c 2\n",  # unknown name
            "gens a b\npair a b 2\npair b a 3\n",  # duplicate pair
            "gens a b\nfrobnicate a b\n",  # unknown directive
            "gens a b\npair a b\n",  # wrong arity
            "",  # empty file
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_system(text)

    def test_json_echo_sorted(self):
        system = parse_system("gens a b c\npair b c 3\npair a b 3\n")
        assert system.to_json_dict() == {
            "generators": ["a", "b", "c"],
            "orders": [[0, 1, 3], [1, 2, 3]],
        }

    def test_name_lookup(self):
        system = parse_system("gens x y\npair x y 5\n")
        assert system.index_of("y") == 1
        with pytest.raises(ParseError):
            system.index_of("z")


class TestDiagramAutomorphisms:
    def test_branched_has_swap(self, branched):
        auts = enumerate_diagram_automorphisms(branched)
        assert [d.images for d in auts] == [(0, 1, 2), (0, 2, 1)]
        assert auts[0].is_identity()

    def test_single_generator(self):
        auts = enumerate_diagram_automorphisms(make_system("a"))
        assert [d.images for d in auts] == [(0,)]

    def test_a3_reversal(self, a3):
        auts = enumerate_diagram_automorphisms(a3)
        assert [d.images for d in auts] == [(0, 1, 2), (2, 1, 0)]

    def test_forms_a_group(self, atilde2):
        auts = enumerate_diagram_automorphisms(atilde2)
        assert len(auts) == 6  # all orders equal: full symmetric group
        images = {d.images for d in auts}
        for d in auts:
            assert d.inverse().images in images
            for e in auts:
                assert d.compose(e).images in images

    def test_compose_order(self):
        d = DiagramAutomorphism((1, 2, 0))
        e = DiagramAutomorphism((0, 2, 1))
        assert d.compose(e)(1) == d(e(1))

    def test_cycle_notation(self, branched):
        auts = enumerate_diagram_automorphisms(branched)
        assert auts[0].cycle_notation(branched.names) == "id"
        assert auts[1].cycle_notation(branched.names) == "(t u)"

    def test_rank_cap(self):
        system = CoxeterSystem([f"g{i}" for i in range(13)], {})
        with pytest.raises(ValueError):
            enumerate_diagram_automorphisms(system)


class TestFlexibility:
    def test_branched_witness(self, branched):
        witness = is_flexible(branched)
        assert witness is not None
        assert witness.pivot == 0
        assert witness.phi.images == (0, 2, 1)
        validate_witness(branched, witness)

    @pytest.mark.parametrize("fixture", ["a2", "a3", "b2", "atilde2", "cube", "free2"])
    def test_not_flexible(self, fixture, request):
        assert is_flexible(request.getfixturevalue(fixture)) is None

    def test_fourth_generator_neighbor(self):
        # pivot s has a finite-order neighbor v that phi must fix; t,u swap freely
        system = make_system("s t u v", (0, 3, 3))
        witness = is_flexible(system)
        assert witness is not None
        assert witness.pivot == 0
        assert witness.phi(3) == 3

    def test_witness_validation_rejects_bad_witnesses(self, branched, a3):
        swap = DiagramAutomorphism((0, 2, 1))
        with pytest.raises(ValueError):
            validate_witness(branched, FlexibilityWitness(1, swap))  # moves the pivot
        with pytest.raises(ValueError):
            validate_witness(branched, FlexibilityWitness(0, identity_automorphism(branched)))
        with pytest.raises(ValueError):
            # (a c) preserves labels in A3 but moves a, a neighbor of b
            validate_witness(a3, FlexibilityWitness(1, DiagramAutomorphism((2, 1, 0))))
        with pytest.raises(ValueError):
            # not label-preserving for the branched system? (s t) swaps orders inf/2
            validate_witness(branched, FlexibilityWitness(2, DiagramAutomorphism((1, 0, 2))))

    def test_label_preservation_predicate(self, a3):
        assert is_label_preserving(a3, (2, 1, 0))
        assert not is_label_preserving(a3, (1, 0, 2))
