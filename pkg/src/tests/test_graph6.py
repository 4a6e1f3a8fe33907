import networkx as nx
import pytest

from src.errors import Graph6Error, GraphError, MalformedHeaderError, TruncatedPayloadError
from src.graphs.families import gen_crown, gen_hamcomp
from src.graphs.graph6 import decode_graph6, encode_graph6
from src.graphs.graph_core import build_graph
from src.graphs.graph_io import load_graph, save_graph


def _to_nx(g):
    ref = nx.Graph()
    ref.add_nodes_from(range(g.num_vertices))
    ref.add_edges_from(g.edges())
    return ref


def test_known_strings():
    k22 = build_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert encode_graph6(k22) == b"C]"
    assert encode_graph6(build_graph(1, [])) == b"@"
    assert encode_graph6(k22, header=True) == b">>graph6<<C]"


def test_matches_networkx():
    for g in (gen_crown(4)[0], gen_hamcomp(7)[0], gen_crown(40)[0]):
        expected = nx.to_graph6_bytes(_to_nx(g), header=False).strip()
        assert encode_graph6(g) == expected


def test_decode_inverse_of_encode():
    g, _ = gen_hamcomp(35)          # 70 vertices: 4-byte size prefix
    back = decode_graph6(encode_graph6(g) + b"\n")
    assert back.num_vertices == 70
    assert set(back.edges()) == set(g.edges())
    assert decode_graph6(">>graph6<<C]").num_edges == 4


def test_decode_errors():
    with pytest.raises(TruncatedPayloadError):
        decode_graph6(b"C")
    with pytest.raises(TruncatedPayloadError):
        decode_graph6(b"C]]")
    with pytest.raises(MalformedHeaderError):
        decode_graph6(b"C\x01")
    with pytest.raises(MalformedHeaderError):
        decode_graph6(b"")
    with pytest.raises(Graph6Error):
        decode_graph6(b"~??")


def test_graph_files_round_trip(tmp_path):
    g, _ = gen_crown(5)
    for name in ("c5.g6", "c5.json"):
        path = tmp_path / name
        save_graph(g, path)
        back = load_graph(path)
        assert set(back.edges()) == set(g.edges())
    # only the JSON form keeps the bipartition
    assert load_graph(tmp_path / "c5.json").part_of == g.part_of
    with pytest.raises(GraphError):
        load_graph(tmp_path / "c5.txt")
