import math

import pytest

from minorforge import (
    Graph,
    GraphError,
    Rng,
    generate_random_regular,
    hoffman_bound,
    interlacing_check,
    interlacing_rows,
    mixing_discrepancy,
    non_bipartite_size_bound,
    pm_spectral_certificate,
    spectrum,
)

from oracles import brute_independence_number, brute_max_matching_size


def k4():
    return Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def cycle(k):
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def random_graph(n, p, rng):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def test_spectrum_examples():
    vals = spectrum(k4(), "adjacency").values
    assert vals == pytest.approx((-1, -1, -1, 3))
    vals = spectrum(cycle(4), "laplacian").values
    assert vals == pytest.approx((0, 2, 2, 4))
    assert spectrum(Graph(1, []), "laplacian").values == pytest.approx((0,))
    with pytest.raises(GraphError):
        spectrum(Graph(0, []))
    with pytest.raises(GraphError):
        spectrum(k4(), "modularity")


def test_spectrum_accessors():
    s = spectrum(cycle(4), "laplacian")
    assert s.smallest() == pytest.approx(0)
    assert s.second_smallest() == pytest.approx(2)
    assert s.largest() == pytest.approx(4)


def test_trace_identities():
    rng = Rng(8)
    for trial in range(40):
        n = rng.integers(2, 40)
        g = random_graph(n, 0.1 + 0.6 * rng.random(), rng)
        adj = spectrum(g, "adjacency").values
        lap = spectrum(g, "laplacian").values
        assert abs(sum(adj)) <= 1e-8 * n
        assert abs(sum(lap) - 2 * g.m) <= 1e-8 * max(n, 2 * g.m)
        assert all(x >= -1e-8 for x in lap)


def test_hoffman_examples():
    assert hoffman_bound(k4()) == pytest.approx(1.0)
    assert hoffman_bound(cycle(5)) == pytest.approx(2.2360679, abs=1e-6)
    assert hoffman_bound(cycle(4)) == pytest.approx(2.0)
    assert hoffman_bound(Graph(3, [])) == 3.0
    with pytest.raises(GraphError):
        hoffman_bound(Graph(3, [(0, 1)]))


def test_hoffman_dominates_independence_number():
    rng = Rng(21)
    done = 0
    while done < 30:
        n = 2 * rng.integers(2, 8)  # even, 4..14
        d = rng.integers(2, min(n - 1, 6))
        if (n * d) % 2:
            continue
        g = generate_random_regular(n, d, rng.split(done))
        bound = hoffman_bound(g)
        assert brute_independence_number(g.edges, g.n) <= bound + 1e-9
        done += 1


def test_non_bipartite_size_bound_examples():
    assert non_bipartite_size_bound(cycle(4)) == pytest.approx(4.0)
    assert non_bipartite_size_bound(k4()) == pytest.approx(2.0)
    assert non_bipartite_size_bound(cycle(5)) == pytest.approx(4.472135, abs=1e-5)


def test_mixing_examples():
    rep = mixing_discrepancy(k4(), {0, 1}, {2, 3})
    assert (rep.lhs, rep.rhs) == pytest.approx((1.0, 2.0))
    assert rep.edge_count == 4 and rep.holds
    rep = mixing_discrepancy(k4(), set(), set())
    assert (rep.lhs, rep.rhs) == (0.0, 0.0) and rep.holds
    rep = mixing_discrepancy(cycle(4), {0}, {2})
    assert (rep.lhs, rep.rhs) == pytest.approx((0.5, 2.0))
    with pytest.raises(GraphError):
        mixing_discrepancy(k4(), {0, 9}, {1})
    with pytest.raises(GraphError):
        mixing_discrepancy(Graph(3, [(0, 1)]), {0}, {1})  # not regular


def test_mixing_counts_ordered_pairs_and_holds():
    rng = Rng(31)
    for trial in range(50):
        n = rng.integers(6, 20)
        d = rng.integers(2, 5)
        if (n * d) % 2:
            n += 1
        g = generate_random_regular(n, d, rng.split(trial))
        s = set(rng.sample(range(n), rng.integers(1, n)))
        t = set(rng.sample(range(n), rng.integers(1, n)))
        rep = mixing_discrepancy(g, s, t)
        count = sum(1 for u in s for v in t if g.has_edge(u, v))
        assert rep.edge_count == count
        assert rep.expected == pytest.approx(g.degree(0) * len(s) * len(t) / n)
        assert rep.lhs == pytest.approx(abs(count - rep.expected))
        assert rep.holds  # expander mixing never fails on regular graphs


def test_pm_certificate_examples():
    assert pm_spectral_certificate(cycle(4)) is True
    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert pm_spectral_certificate(p4) is False  # conservative: P4 has a PM
    assert brute_max_matching_size(p4.edges, 4) == 2
    assert pm_spectral_certificate(cycle(3)) is False  # odd order
    assert pm_spectral_certificate(Graph(4, [])) is False  # no edges, no PM
    with pytest.raises(GraphError):
        pm_spectral_certificate(Graph(0, []))


def test_pm_certificate_never_false_positive():
    rng = Rng(47)
    hits = 0
    for trial in range(120):
        n = 2 * rng.integers(2, 8)
        g = random_graph(n, 0.2 + 0.6 * rng.random(), rng)
        if pm_spectral_certificate(g):
            hits += 1
            assert brute_max_matching_size(g.edges, g.n) == g.n // 2
    assert hits > 0  # the loop must actually exercise the positive branch


def test_interlacing_examples():
    assert interlacing_check(k4(), {0, 1, 2}) is True
    g = generate_random_regular(10, 3, Rng(4))
    assert interlacing_check(g, range(10)) is True
    assert interlacing_check(cycle(6), {0, 2, 4}) is True
    with pytest.raises(GraphError):
        interlacing_check(k4(), set())


def test_interlacing_rows_structure_and_universality():
    rows = interlacing_rows(k4(), {0, 1, 2})
    assert [k for k, *_ in rows] == [1, 2, 3]
    for _, lower, val, upper in rows:
        assert lower - 1e-8 <= val <= upper + 1e-8
    rng = Rng(52)
    for trial in range(60):
        n = rng.integers(3, 16)
        g = random_graph(n, 0.2 + 0.6 * rng.random(), rng)
        u = rng.sample(range(n), rng.integers(1, n))
        assert interlacing_check(g, u) is True
