import os
import json

from src.errors import GraphError
from src.graphs.graph_core import Graph, Side, build_graph
from src.graphs.graph6 import decode_graph6, encode_graph6


def graph_to_dict(g: Graph) -> dict:
    """JSON edge-list form: {"n": int, "parts": [[ids], [ids]]?, "edges": [[u, v], ...]}."""
    out = {"n": g.num_vertices}
    if g.part_of is not None:
        out["parts"] = [
            [v for v, s in enumerate(g.part_of) if s == Side.X],
            [v for v, s in enumerate(g.part_of) if s == Side.Y],
        ]
    out["edges"] = [[u, v] for u, v in g.edges()]
    return out


def graph_from_dict(doc: dict) -> Graph:
    try:
        n = int(doc["n"])
        edges = doc.get("edges", [])
    except (KeyError, TypeError, ValueError) as e:
        raise GraphError(f"bad JSON graph: {e}")
    return build_graph(n, edges, doc.get("parts"))


def load_graph(path) -> Graph:
    """Read a graph from a .g6/.graph6 or .json file."""
    _, ext = os.path.splitext(str(path))
    if ext.lower() in (".g6", ".graph6"):
        with open(path, "rb") as f:
            return decode_graph6(f.read())
    if ext.lower() == ".json":
        with open(path, "r") as f:
            return graph_from_dict(json.load(f))
    raise GraphError(f"unknown graph file extension {ext!r} (use .g6 or .json)")


def dump_graph(g: Graph, fmt: str) -> bytes:
    if fmt == "graph6":
        return encode_graph6(g) + b"\n"
    if fmt == "json":
        return (json.dumps(graph_to_dict(g)) + "\n").encode("utf-8")
    raise GraphError(f"unknown graph format {fmt!r}")


def save_graph(g: Graph, path, fmt: str = None) -> None:
    if fmt is None:
        fmt = "json" if str(path).lower().endswith(".json") else "graph6"
    with open(path, "wb") as f:
        f.write(dump_graph(g, fmt))
