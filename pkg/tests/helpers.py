"""Shared oracles and builders for the test suite."""

from __future__ import annotations

import numpy as np

from graphlift import Edge, Graph, PythagoreanModule


def one_dim_components(graph: Graph) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Brute-force the vertices supporting a valid one-dimensional module.

    With a single nonzero fiber at v, every edge operator with an endpoint
    away from v is zero-shaped, so the only live constraint is at v itself:
    the squared moduli of the loop scalars at v must sum to 1. That has a
    solution exactly when v carries a loop; a loopless v works only when it
    receives nothing (the constraint is then never imposed).
    """
    looped, free = [], []
    for v in graph.vertices:
        loops = [e for e in graph.out_edges(v) if e.range == v]
        if loops:
            looped.append(v)
        elif not graph.in_edges(v):
            free.append(v)
    return tuple(looped), tuple(free)


def orbit_span_dim(module: PythagoreanModule, vec: np.ndarray) -> int:
    """Dimension of the orbit of vec under the generated unital algebra."""
    from graphlift.modules import _global_generators, _span_append

    basis: list[np.ndarray] = []
    seed = np.asarray(vec, dtype=np.complex128).reshape(-1)
    if _span_append(basis, seed) is None:
        return 0
    gens = _global_generators(module)
    frontier = [seed / np.linalg.norm(seed)]
    while frontier:
        fresh = []
        for w in frontier:
            for g in gens:
                added = _span_append(basis, g @ w)
                if added is not None:
                    fresh.append(added)
        frontier = fresh
    return len(basis)


def perturb_edge(module: PythagoreanModule, edge_id: str,
                 eps: float) -> PythagoreanModule:
    """Copy the module with one operator shifted by eps in every entry."""
    ops = dict(module.ops)
    ops[edge_id] = ops[edge_id] + eps
    return PythagoreanModule(module.graph, module.dims, ops)


def module_allclose(m1: PythagoreanModule, m2: PythagoreanModule,
                    tol: float = 0.0) -> bool:
    if m1.graph != m2.graph or m1.dims != m2.dims:
        return False
    return all(
        np.allclose(m1.ops[e.id], m2.ops[e.id], rtol=0.0, atol=tol)
        for e in m1.graph.edges
    )


def relabel_graph(graph: Graph, mapping: dict[str, str]) -> Graph:
    """Rename vertices in place (edge ids kept), preserving listed order."""
    return Graph(
        tuple(mapping[v] for v in graph.vertices),
        tuple(Edge(e.id, mapping[e.source], mapping[e.range]) for e in graph.edges),
    )


def random_feasible_dims(graph: Graph, rng, hi: int = 3) -> dict[str, int]:
    """Draw per-vertex dims in 0..hi so that every receiving vertex can carry
    an isometry (incoming fibers at least as large as its own)."""
    while True:
        dims = {v: int(rng.integers(0, hi + 1)) for v in graph.vertices}
        if sum(dims.values()) == 0:
            continue
        feasible = all(
            sum(dims[e.source] for e in graph.in_edges(w)) >= dims[w]
            for w in graph.vertices
            if graph.in_edges(w)
        )
        if feasible:
            return dims
