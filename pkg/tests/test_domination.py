"""Domination relation, covers, rainbow triangles, colour profiles."""

import random
from itertools import combinations

import pytest

from monodom.core import COLOURS, Colour, ColouredTournament, parse
from monodom.domination import (
    at_most_two_everywhere,
    dominated_by_all,
    dominates,
    dominating_vertices,
    domination_relation,
    find_rainbow_triangle,
    min_cover,
    vertex_colour_profile,
)

T3 = parse("3\n.r.\n..b\ng..\n")


def random_instance(rng, n, colours=3):
    codes = [rng.randrange(2 * colours) for _ in range(n * (n - 1) // 2)]
    return ColouredTournament.from_codes(n, codes, colours)


def bfs_reaches(t, colour, src):
    # independent oracle: breadth-first search along arcs of one colour
    seen = set()
    frontier = [src]
    while frontier:
        nxt = []
        for x in frontier:
            for y in t.out_neighbours(x):
                if t.arc_colour(x, y) is colour and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen  # may contain src itself via a colour cycle


def test_single_arc_dominates():
    t = ColouredTournament.from_arcs(2, {(0, 1): Colour.RED})
    assert dominates(t, 0, 1) == {Colour.RED}
    assert dominates(t, 1, 0) == frozenset()
    assert dominating_vertices(t) == [0]
    assert dominated_by_all(t) == [1]


def test_domination_is_path_based_not_arc_based():
    # 0 -r-> 1 -r-> 2 but 2 -b-> 0: 0 dominates 2 through 1 in red
    t = ColouredTournament.from_arcs(
        3, {(0, 1): Colour.RED, (1, 2): Colour.RED, (2, 0): Colour.BLUE}
    )
    assert dominates(t, 0, 2) == {Colour.RED}
    assert dominates(t, 2, 1) == frozenset()  # 2 -b-> 0 -r-> 1 changes colour
    assert dominating_vertices(t) == [0]


def test_mixed_colour_path_does_not_dominate():
    t = ColouredTournament.from_arcs(
        3, {(0, 1): Colour.RED, (1, 2): Colour.BLUE, (0, 2): Colour.GREEN}
    )
    assert dominates(t, 0, 2) == {Colour.GREEN}
    assert dominating_vertices(t) == [0]


def test_t3_has_no_dominating_vertex():
    assert dominating_vertices(T3) == []
    assert dominated_by_all(T3) == []
    for x, y in [(0, 1), (1, 2), (2, 0)]:
        assert len(dominates(T3, x, y)) == 1
        assert dominates(T3, y, x) == frozenset()


def test_dominates_rejects_equal_vertices():
    with pytest.raises(ValueError):
        dominates(T3, 1, 1)


def test_relation_matches_bfs_oracle_seeded():
    rng = random.Random(202406)
    for _ in range(120):
        n = rng.randrange(2, 8)
        t = random_instance(rng, n, colours=rng.choice((2, 3)))
        rel = domination_relation(t)
        for c in COLOURS:
            for x in range(n):
                reached = bfs_reaches(t, c, x)
                for y in range(n):
                    assert rel.reaches(c, x, y) == (y in reached)


def test_reversal_duality_seeded():
    # x dominates y in t iff y dominates x in the reversed tournament
    rng = random.Random(31337)
    for _ in range(60):
        n = rng.randrange(2, 7)
        t = random_instance(rng, n)
        r = t.reverse()
        for x in range(n):
            for y in range(n):
                if x != y:
                    assert dominates(t, x, y) == dominates(r, y, x)


def test_min_cover_t3():
    cover = min_cover(T3)
    assert cover is not None
    assert cover.order == 2
    assert cover.members == (0, 1)


def test_min_cover_single_when_dominating_vertex():
    t = ColouredTournament.from_arcs(
        3, {(0, 1): Colour.RED, (1, 2): Colour.RED, (2, 0): Colour.BLUE}
    )
    assert min_cover(t).members == (0,)


def test_min_cover_none_within_kmax():
    assert min_cover(T3, k_max=1) is None


def test_min_cover_matches_subset_oracle_seeded():
    rng = random.Random(555)
    for _ in range(40):
        n = rng.randrange(2, 6)
        t = random_instance(rng, n)
        rel = domination_relation(t)

        def covered_by(subset):
            hit = set(subset)
            for x in subset:
                hit.update(y for y in range(n) if rel.any_rows[x] >> y & 1)
            return len(hit) == n

        best = None
        for k in range(1, n + 1):
            hits = [s for s in combinations(range(n), k) if covered_by(s)]
            if hits:
                best = (k, min(hits))
                break
        got = min_cover(t, k_max=n)
        assert got is not None and (got.order, got.members) == best


def test_find_rainbow_triangle_cyclic():
    tri = find_rainbow_triangle(T3)
    assert tri is not None and tri.cyclic
    assert tri.vertices == (0, 1, 2)
    assert tri.arcs == (
        (0, 1, Colour.RED), (1, 2, Colour.BLUE), (2, 0, Colour.GREEN)
    )


def test_find_rainbow_triangle_transitive():
    # 0 beats both, 1 beats 2: rainbow but not cyclic
    t = ColouredTournament.from_arcs(
        3, {(0, 1): Colour.RED, (0, 2): Colour.GREEN, (1, 2): Colour.BLUE}
    )
    assert find_rainbow_triangle(t, require_cyclic=True) is None
    tri = find_rainbow_triangle(t, require_cyclic=False)
    assert tri is not None and not tri.cyclic


def test_find_rainbow_triangle_none_with_two_colours():
    rng = random.Random(2)
    for _ in range(30):
        t = random_instance(rng, 4, colours=2)
        assert find_rainbow_triangle(t, require_cyclic=False) is None


def test_rainbow_triangle_witness_arcs_valid_seeded():
    rng = random.Random(808)
    found = 0
    for _ in range(200):
        t = random_instance(rng, rng.randrange(3, 7))
        tri = find_rainbow_triangle(t)
        if tri is None:
            continue
        found += 1
        a, b, c = tri.vertices
        assert tri.cyclic
        colours = set()
        for x, y, colour in tri.arcs:
            assert t.beats(x, y) and t.arc_colour(x, y) is colour
            colours.add(colour)
        assert colours == set(COLOURS)
        assert t.beats(a, b) and t.beats(b, c) and t.beats(c, a)
    assert found > 50  # cyclic rainbow triangles are common at these orders


def test_vertex_colour_profile():
    assert vertex_colour_profile(T3, 0) == {Colour.RED, Colour.GREEN}
    t = ColouredTournament.from_arcs(
        3, {(0, 1): Colour.RED, (1, 2): Colour.RED, (2, 0): Colour.RED}
    )
    assert vertex_colour_profile(t, 1) == {Colour.RED}
    assert at_most_two_everywhere(t)
    assert at_most_two_everywhere(T3)


def test_at_most_two_everywhere_false():
    # a vertex needs three incident arcs to see three colours
    t = ColouredTournament.from_arcs(
        4,
        {(0, 1): Colour.RED, (0, 2): Colour.BLUE, (0, 3): Colour.GREEN,
         (1, 2): Colour.RED, (1, 3): Colour.RED, (2, 3): Colour.RED},
    )
    assert vertex_colour_profile(t, 0) == set(COLOURS)
    assert not at_most_two_everywhere(t)


def test_two_coloured_always_has_dominating_vertex_seeded():
    rng = random.Random(1912)
    for _ in range(150):
        t = random_instance(rng, rng.randrange(1, 7), colours=2)
        assert dominating_vertices(t)
