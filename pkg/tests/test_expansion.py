import math

import pytest

from minorforge import (
    Graph,
    GraphError,
    Rng,
    c_alpha,
    diameter,
    diameter_upper_bound,
    expansion_report,
    find_sparse_cut,
    fix_expansion,
    generate_random_regular,
    separator_lower_bound,
    spectral_expansion_lower,
    vertex_expansion_exact,
)

from oracles import bfs_set_distance, brute_vertex_expansion


def k4():
    return Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def cycle(k):
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def two_triangles_bridge():
    # triangles 0-1-2 and 3-4-5 joined by the edge 2-3
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


def test_exact_expansion_examples():
    rep = vertex_expansion_exact(cycle(3))
    assert rep.alpha_exact == 2.0
    assert len(rep.witness_cut) == 1
    assert vertex_expansion_exact(Graph(3, [(0, 1), (1, 2)])).alpha_exact == 1.0
    assert vertex_expansion_exact(cycle(4)).alpha_exact == 1.0


def test_exact_expansion_witness_achieves_alpha():
    rng = Rng(3)
    for trial in range(40):
        n = rng.integers(2, 13)
        p = 0.2 + 0.6 * rng.random()
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        g = Graph(n, edges)
        rep = vertex_expansion_exact(g)
        w = rep.witness_cut
        assert 1 <= len(w) <= n // 2
        neigh = {x for v in w for x in g.neighbors(v)} - w
        assert len(neigh) / len(w) == pytest.approx(rep.alpha_exact)
        assert rep.alpha_exact == pytest.approx(brute_vertex_expansion(edges, n))


def test_exact_expansion_respects_limit():
    g = generate_random_regular(26, 3, Rng(0))
    with pytest.raises(GraphError):
        vertex_expansion_exact(g)
    rep = vertex_expansion_exact(g, exact_limit=26)
    assert rep.alpha_exact is not None


def test_exact_limit_env_override(monkeypatch):
    from minorforge.expansion import exact_limit_default

    monkeypatch.delenv("MINORFORGE_EXACT_LIMIT", raising=False)
    assert exact_limit_default() == 24
    monkeypatch.setenv("MINORFORGE_EXACT_LIMIT", "10")
    assert exact_limit_default() == 10
    g = generate_random_regular(12, 3, Rng(1))
    with pytest.raises(GraphError):
        vertex_expansion_exact(g)
    monkeypatch.setenv("MINORFORGE_EXACT_LIMIT", "nope")
    with pytest.raises(GraphError):
        exact_limit_default()
    monkeypatch.setenv("MINORFORGE_EXACT_LIMIT", "40")
    with pytest.raises(GraphError):
        exact_limit_default()


def test_spectral_lower_examples():
    assert spectral_expansion_lower(k4()) == pytest.approx(2 / 3)
    assert spectral_expansion_lower(cycle(4)) == pytest.approx(1 / 2)
    disconnected = Graph(6, [(0, 1), (1, 2), (3, 4)])
    assert spectral_expansion_lower(disconnected) == 0.0
    assert spectral_expansion_lower(Graph(1, [])) == 0.0


def test_spectral_never_exceeds_exact():
    rng = Rng(11)
    for trial in range(80):
        n = rng.integers(2, 16)
        p = 0.15 + 0.7 * rng.random()
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        g = Graph(n, edges)
        rep = vertex_expansion_exact(g)
        assert rep.alpha_spectral_lower <= rep.alpha_exact + 1e-9


def test_expansion_report_fills_exact_only_when_small():
    g = generate_random_regular(30, 3, Rng(5))
    rep = expansion_report(g)
    assert rep.alpha_exact is None and rep.witness_cut is None
    assert rep.alpha_spectral_lower >= 0
    rep = expansion_report(g, exact_limit=8)
    assert rep.alpha_exact is None
    small = expansion_report(cycle(5))
    assert small.alpha_exact == pytest.approx(1.0)


def test_find_sparse_cut_examples():
    g = two_triangles_bridge()
    res = find_sparse_cut(g, range(6), 1.0)
    assert res.certified and res.cut is not None
    boundary = {x for v in res.cut for x in g.neighbors(v)} - res.cut
    assert len(boundary) < 1.0 * len(res.cut)
    # at beta=1/2 the smallest violating set is a full triangle side
    res = find_sparse_cut(g, range(6), 0.5)
    assert res.cut in (frozenset({0, 1, 2}), frozenset({3, 4, 5}))
    assert res.ratio == pytest.approx(1 / 3)

    res = find_sparse_cut(k4(), range(4), 1.0)
    assert res.cut is None and res.certified

    res = find_sparse_cut(k4(), {2}, 5.0)
    assert res.cut is None and res.certified

    res = find_sparse_cut(k4(), set(), 1.0)
    assert res.cut is None and res.certified

    with pytest.raises(GraphError):
        find_sparse_cut(k4(), {0, 11}, 1.0)
    with pytest.raises(GraphError):
        find_sparse_cut(k4(), {0}, -1.0)


def test_find_sparse_cut_heuristic_flags_itself():
    # ring of two cliques, working set bigger than the enumeration cap
    g = generate_random_regular(30, 4, Rng(6))
    res = find_sparse_cut(g, range(30), 0.01, exact_limit=8)
    # a 4-regular random graph has no 0.01-sparse cut; heuristic cannot certify
    assert res.cut is None and res.certified is False


def test_fix_expansion_examples():
    g = two_triangles_bridge()
    res = fix_expansion(g, range(6), set(), 0.5)
    assert {res.c, res.a} == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}
    assert len(res.moves) == 1 and res.certified

    res = fix_expansion(k4(), range(4), set(), 0.5)
    assert res.c == frozenset(range(4)) and res.a == frozenset()

    res = fix_expansion(k4(), set(), {0, 1}, 0.5)
    assert res.c == frozenset() and res.a == frozenset({0, 1})

    with pytest.raises(GraphError):
        fix_expansion(k4(), {0, 1}, {1, 2}, 0.5)


def test_fix_expansion_partition_idempotence_and_guarantee():
    rng = Rng(17)
    for trial in range(50):
        n = rng.integers(4, 15)
        p = 0.15 + 0.5 * rng.random()
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        g = Graph(n, edges)
        c0 = set(rng.sample(range(n), rng.integers(1, n + 1)))
        beta = 0.25 + rng.random()
        res = fix_expansion(g, c0, set(), beta)
        assert res.c | res.a == frozenset(c0) and not res.c & res.a
        again = fix_expansion(g, res.c, res.a, beta)
        assert again.c == res.c and again.a == res.a and again.moves == ()
        # each recorded move violated the expansion bound at move time
        cur = set(c0)
        for u in res.moves:
            boundary = {x for v in u for x in g.neighbors(v) if x in cur} - u
            assert len(boundary) < beta * len(u)
            cur -= u
        if res.c and res.certified:
            sub_edges = [
                (a, b) for a, b in g.edges if a in res.c and b in res.c
            ]
            relabel = {v: i for i, v in enumerate(sorted(res.c))}
            sub = Graph(
                len(res.c), [(relabel[a], relabel[b]) for a, b in sub_edges]
            )
            if sub.n > 1:
                assert vertex_expansion_exact(sub).alpha_exact >= beta


def test_separator_bound_examples():
    assert separator_lower_bound(1 / 3, 300) == pytest.approx(25.0)
    assert separator_lower_bound(0.0, 500) == 0.0
    assert separator_lower_bound(1.0, 12) == pytest.approx(2.0)
    with pytest.raises(GraphError):
        separator_lower_bound(-0.5, 10)


def test_diameter_bound_examples():
    assert diameter_upper_bound(1.0, 16) == 7
    assert diameter_upper_bound(1.0, 2) == 1
    assert c_alpha(1.0) == pytest.approx(5.0)
    with pytest.raises(GraphError):
        diameter_upper_bound(0.0, 16)
    with pytest.raises(GraphError):
        c_alpha(-1.0)


def test_diameter_bound_holds_on_random_regular():
    rng = Rng(23)
    done = 0
    while done < 15:
        n = rng.integers(6, 21)
        d = rng.integers(3, 5)
        if (n * d) % 2:
            continue
        g = generate_random_regular(n, d, rng.split(done))
        alpha = vertex_expansion_exact(g).alpha_exact
        if alpha <= 0:
            continue
        assert diameter(g) <= diameter_upper_bound(alpha, n)
        done += 1


def test_short_detour_around_removed_set():
    # removing S barely stretches the T-U distance in an expander:
    # dist_{G - S}(T, U) <= c_{alpha/2} * log2 n for |T|, |U| >= 2|S|/alpha
    rng = Rng(29)
    done = 0
    attempts = 0
    while done < 100 and attempts < 1000:
        attempts += 1
        n = rng.integers(10, 21)
        d = rng.integers(3, 6)
        if (n * d) % 2:
            continue
        g = generate_random_regular(n, d, rng.split(attempts))
        alpha = vertex_expansion_exact(g).alpha_exact
        if alpha <= 0:
            continue
        need = max(2, math.ceil(2 / alpha))
        if 1 + 2 * need > n:
            continue
        order = rng.sample(range(n), 1 + 2 * need)
        s = set(order[:1])
        t = set(order[1 : 1 + need])
        u = set(order[1 + need :])
        dist = bfs_set_distance(g.edges, n, t, u, removed=s)
        assert dist <= c_alpha(alpha / 2) * math.log2(n)
        done += 1
    assert done == 100
