import pytest

from minorforge import (
    Graph,
    GraphError,
    Rng,
    generate_random_regular,
    is_matching,
    matching_size,
    max_matching,
    solve_card,
    verify_assignment,
)

from oracles import brute_card_solvable, brute_max_matching_size


def cycle(k):
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def random_graph(n, p, rng):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def test_max_matching_examples():
    m = max_matching(cycle(4))
    assert len(m) == 2 and is_matching(cycle(4), m)
    assert set(m) in ({(0, 1), (2, 3)}, {(1, 2), (0, 3)})
    assert matching_size(cycle(3)) == 1
    pm = max_matching(petersen())
    assert len(pm) == 5 and is_matching(petersen(), pm)
    assert max_matching(Graph(3, [])) == ()


def test_max_matching_equals_brute_force():
    rng = Rng(19)
    for trial in range(120):
        n = rng.integers(1, 13)
        p = 0.1 + 0.8 * rng.random()
        g = random_graph(n, p, rng)
        m = max_matching(g)
        assert is_matching(g, m)
        assert len(m) == brute_max_matching_size(g.edges, g.n)


def test_is_matching_rejects_bad_sets():
    g = cycle(4)
    assert is_matching(g, []) is True
    assert is_matching(g, [(0, 1), (1, 2)]) is False  # shared vertex
    assert is_matching(g, [(0, 2)]) is False  # not an edge


def test_solve_card_perfect_matching_demand():
    g = cycle(4)
    x = solve_card(g, [1, 1, 1, 1])
    assert x is not None and verify_assignment(g, [1, 1, 1, 1], x)
    assert sum(x.values()) == 2
    # edges sort to ((0,1),(0,3),(1,2),(2,3)); opposite pairs are ids
    # {0,3} and {1,2}
    chosen = {eid for eid, v in x.items() if v}
    assert chosen in ({0, 3}, {1, 2})


def test_solve_card_triangle_example():
    g = cycle(3)  # edges (0,1), (0,2), (1,2)
    x = solve_card(g, (1, 1, 2))
    assert x == {0: 0, 1: 1, 2: 1}
    assert verify_assignment(g, (1, 1, 2), x)


def test_solve_card_obstructions():
    g = cycle(3)
    assert solve_card(g, (1, 1, 1)) is None  # odd total demand
    assert solve_card(g, (0, 0, 4)) is None  # demand above degree
    assert solve_card(Graph(2, []), (0, 0)) == {}
    assert solve_card(Graph(2, []), (1, 1)) is None
    with pytest.raises(GraphError):
        solve_card(g, (1, 1))
    with pytest.raises(GraphError):
        solve_card(g, (1, 1, -2))


def test_solve_card_matches_brute_force():
    rng = Rng(37)
    done = 0
    while done < 150:
        n = rng.integers(2, 8)
        p = 0.2 + 0.6 * rng.random()
        g = random_graph(n, p, rng)
        if g.m > 15:
            continue
        b = [rng.integers(0, g.degree(v) + 2) for v in range(n)]
        x = solve_card(g, b)
        solvable = brute_card_solvable(g.edges, n, b)
        if x is None:
            assert not solvable
        else:
            assert solvable and verify_assignment(g, b, x)
        done += 1


def test_solve_card_finds_pm_on_regular_graphs():
    rng = Rng(41)
    done = 0
    while done < 30:
        n = 2 * rng.integers(2, 9)  # even, 4..16
        d = rng.integers(3, min(n, 6))
        if (n * d) % 2:
            continue
        g = generate_random_regular(n, d, rng.split(done))
        ones = [1] * n
        x = solve_card(g, ones)
        if brute_max_matching_size(g.edges, n) == n // 2:
            assert x is not None and verify_assignment(g, ones, x)
        else:
            assert x is None
        done += 1


def test_verify_assignment_examples():
    g = cycle(4)
    ones = [1, 1, 1, 1]
    assert verify_assignment(g, ones, {0: 1, 3: 1}) is True  # opposite edges
    assert verify_assignment(g, ones, {0: 1, 2: 1}) is False  # adjacent edges
    assert verify_assignment(g, ones, [0, 1, 1, 0]) is True  # sequence form
    assert verify_assignment(g, ones, [2, 0, 0, 0]) is False  # not a bit
    with pytest.raises(GraphError):
        verify_assignment(g, ones, [1, 0, 1])
    with pytest.raises(GraphError):
        verify_assignment(g, [1, 1], {0: 1})
