import pytest

from src.errors import DisconnectedGraphError, OutOfRangeError
from src.graphs.graph_core import all_pairs_distances, build_graph, is_connected
from src.metric.resolving import build_pair_table, representation, verify_resolving


def test_crown4_lemma_set_resolves(distances):
    dm = distances("crown:n=4")
    report = verify_resolving(dm, [0, 1, 2])
    assert report.resolving
    assert report.witness is None
    assert report.to_dict() == {"resolving": True, "landmarks": [0, 1, 2]}


def test_crown4_all_vertices_resolve(distances):
    assert verify_resolving(distances("crown:n=4"), range(8)).resolving


def test_crown4_two_landmarks_fail(distances):
    """x3 and x4 both sit at distance 2 from x1 and x2."""
    dm = distances("crown:n=4")
    report = verify_resolving(dm, [0, 1])
    assert not report.resolving
    assert report.witness == (2, 3)
    u, v = report.witness
    assert representation(dm, u, [0, 1]) == representation(dm, v, [0, 1]) == (2, 2)


def test_representation_zero_only_on_landmarks(distances):
    dm = distances("hamcomp:m=5")
    landmarks = [5, 6, 3, 4]
    for v in range(10):
        rep = representation(dm, v, landmarks)
        assert len(rep) == 4
        assert (0 in rep) == (v in landmarks)


def test_empty_and_trivial_sets():
    dm = all_pairs_distances(build_graph(3, [(0, 1), (1, 2)]))
    assert verify_resolving(dm, []).witness == (0, 1)
    assert verify_resolving(dm, [0]).resolving
    single = all_pairs_distances(build_graph(1, []))
    assert verify_resolving(single, []).resolving


def test_duplicates_and_range():
    dm = all_pairs_distances(build_graph(3, [(0, 1), (1, 2)]))
    assert verify_resolving(dm, [0, 0]).landmarks == (0,)
    with pytest.raises(OutOfRangeError):
        verify_resolving(dm, [3])
    with pytest.raises(OutOfRangeError):
        representation(dm, 5, [0])


def test_disconnected_rejected():
    dm = all_pairs_distances(build_graph(4, [(0, 1), (2, 3)]))
    with pytest.raises(DisconnectedGraphError):
        verify_resolving(dm, [0, 2])


def test_pair_table(distances):
    dm = distances("crown:n=4")
    table = build_pair_table(dm)
    assert len(table.rows) == 8 * 7 // 2
    for (u, v), row in zip(table.pairs, table.rows):
        assert row >> u & 1 and row >> v & 1
    assert table.is_hit_by([0, 1, 2])
    assert not table.is_hit_by([0, 1])
    # x3, x4 are told apart only by themselves and by y3, y4
    assert table.resolvers(3, 2) == [2, 3, 6, 7]


def _random_connected(rng, max_vertices):
    while True:
        n = int(rng.integers(1, max_vertices + 1))
        p = rng.uniform(0.2, 0.8)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = build_graph(n, edges)
        if is_connected(g):
            return g


def test_resolving_iff_every_pair_row_is_hit(rng):
    """A landmark set resolves exactly when it meets every pair's resolver row."""
    for _ in range(300):
        g = _random_connected(rng, 9)
        dm = all_pairs_distances(g)
        table = build_pair_table(dm)
        n = g.num_vertices
        landmarks = [int(w) for w in range(n) if rng.random() < 0.4]
        assert verify_resolving(dm, landmarks).resolving == table.is_hit_by(landmarks), (
            f"{list(g.edges())} with {landmarks}")


def test_supersets_of_resolving_sets_resolve(rng):
    checked = 0
    for _ in range(300):
        g = _random_connected(rng, 9)
        dm = all_pairs_distances(g)
        n = g.num_vertices
        landmarks = [int(w) for w in range(n) if rng.random() < 0.5]
        if not verify_resolving(dm, landmarks).resolving:
            continue
        extra = [int(w) for w in range(n) if rng.random() < 0.5]
        bigger = sorted(set(landmarks) | set(extra))
        assert verify_resolving(dm, bigger).resolving, f"{list(g.edges())} with {bigger}"
        checked += 1
    assert checked > 0
