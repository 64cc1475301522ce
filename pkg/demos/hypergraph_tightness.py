"""
Planar hypergraphs with 6n - 9 hyperedges
=========================================

"""

import random

from widthkit.containment import is_planar
from widthkit.hypergraph import (
    hyperedge_bound_check, incidence_graph, stacked_triangulation, triangulation_hypergraph,
)

rng = random.Random(1)
for n in range(4, 11):
    g, faces = stacked_triangulation(n, rng)
    h = triangulation_hypergraph(g, faces)
    rep = hyperedge_bound_check(h, "genus", 0)
    print(f"n={n:2d} hyperedges {h.m:3d} bound {rep.bound} planar incidence {is_planar(incidence_graph(h))}")
