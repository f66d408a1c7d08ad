from itertools import product

import pytest

from coxaut.ball import build_ball, count_paths, distance
from coxaut.words import LimitExceeded, parse_word, reduce_word

from conftest import make_system


def vid(ball, text):
    return ball.index[parse_word(ball.system, text)]


class TestBuild:
    def test_a2_hexagon(self, a2):
        ball = build_ball(a2, 3)
        assert ball.size == 6
        assert len(ball.edges) == 6
        assert ball.complete

    def test_radius_zero(self, a3):
        ball = build_ball(a3, 0)
        assert ball.size == 1
        assert not ball.edges
        assert ball.words[0] == ()

    def test_branched_radius_two(self, branched):
        ball = build_ball(branched, 2)
        words = {ball.system.names[x] for w in ball.words for x in w}
        assert ball.size == 9  # e, s, t, u, st, su, ts, us, tu (=ut)
        assert words == {"s", "t", "u"}
        assert vid(ball, "t u") == vid(ball, "t u")
        assert (2, 1) not in ball.index  # only the canonical spelling is a key

    def test_deterministic_prefix(self, a3):
        small, large = build_ball(a3, 2), build_ball(a3, 4)
        assert large.words[: small.size] == small.words

    def test_bfs_order_is_by_length_then_lex(self, branched):
        ball = build_ball(branched, 2)
        lengths = [len(w) for w in ball.words]
        assert lengths == sorted(lengths)
        assert ball.words[1:4] == [(0,), (1,), (2,)]

    @pytest.mark.parametrize("r,expected", [(0, 1), (1, 4), (2, 9), (3, 15), (4, 20), (6, 24)])
    def test_a3_layer_counts(self, a3, r, expected):
        assert build_ball(a3, r).size == expected

    def test_complete_flags(self, a3, atilde2):
        assert not build_ball(a3, 5).complete
        assert build_ball(a3, 6).complete
        assert not build_ball(atilde2, 6).complete

    def test_vertex_count_matches_exhaustive_reduce(self, a2, cube, branched):
        for system, radius in [(a2, 4), (cube, 4), (branched, 4)]:
            elements = set()
            for length in range(radius + 1):
                for word in product(system.generators(), repeat=length):
                    canonical = reduce_word(system, word)
                    if len(canonical) <= radius:
                        elements.add(canonical)
            assert build_ball(system, radius).size == len(elements)

    def test_bipartite_and_interior_degree(self, atilde2):
        ball = build_ball(atilde2, 4)
        for u, v, _ in ball.edges:
            assert abs(ball.word_length(u) - ball.word_length(v)) == 1
        for v in range(ball.size):
            if ball.word_length(v) <= 3:
                assert ball.degree(v) == 3

    def test_vertex_guard(self, atilde2):
        with pytest.raises(LimitExceeded):
            build_ball(atilde2, 5, max_vertices=10)

    def test_negative_radius(self, a2):
        with pytest.raises(ValueError):
            build_ball(a2, -1)

    def test_edge_labels_consistent(self, a3):
        ball = build_ball(a3, 3)
        for u, v, s in ball.edges:
            assert ball.adj[u][s] == v
            assert ball.adj[v][s] == u
            assert ball.edge_label(u, v) == s


class TestQueries:
    def test_distance(self, a2, branched):
        hexagon = build_ball(a2, 3)
        assert distance(hexagon, 0, 0) == 0
        assert distance(hexagon, 0, vid(hexagon, "a b a")) == 3
        ball = build_ball(branched, 2)
        assert distance(ball, 0, vid(ball, "t u")) == 2

    def test_distance_equals_word_length(self, atilde2):
        ball = build_ball(atilde2, 4)
        for v in range(ball.size):
            assert distance(ball, 0, v) == ball.word_length(v)

    def test_count_paths_degenerate(self, a2):
        ball = build_ball(a2, 2)
        assert count_paths(ball, 0, 0, 0) == 1
        assert count_paths(ball, 0, 1, 0) == 0

    def test_count_paths_hexagon_antipodes(self, a2):
        ball = build_ball(a2, 3)
        assert count_paths(ball, 0, vid(ball, "a b a"), 3) == 2

    def test_count_paths_cube_diagonal(self, cube):
        ball = build_ball(cube, 3)
        assert count_paths(ball, 0, vid(ball, "a b c"), 3) == 6

    def test_count_paths_excludes_repeats(self, a2):
        ball = build_ball(a2, 3)
        # walks of length 2 from e back to e exist, simple paths do not
        assert count_paths(ball, 0, 0, 2) == 0


class TestExports:
    def test_json_shape(self, a2):
        payload = build_ball(a2, 2).to_json_dict()
        assert payload["radius"] == 2
        assert payload["vertices"][0] == {"id": 0, "word": "e"}
        assert all(len(edge) == 3 for edge in payload["edges"])
        assert payload["edges"] == sorted(payload["edges"])

    def test_dot_output(self, a2):
        dot = build_ball(a2, 1).to_dot()
        assert dot.startswith("graph")
        assert 'label="a"' in dot
        assert "v0 -- v1" in dot
