"""
Tree-width and rank-width of small graphs
=========================================

"""

from widthkit.graph import complete_graph, cycle_graph, complete_bipartite, path_graph
from widthkit.solvers import exact_rankwidth, exact_treewidth

# a clique is as wide as possible for tree-width but trivial for rank-width
for name, g in [("K6", complete_graph(6)), ("C7", cycle_graph(7)),
                ("K3,3", complete_bipartite(3, 3)), ("P8", path_graph(8))]:
    tw, td = exact_treewidth(g)
    rw, rd = exact_rankwidth(g)
    print(f"{name:5s} treewidth {tw}  rankwidth {rw}  bags {len(td.bags)}")

# every witness is a plain object that serializes to JSON
tw, td = exact_treewidth(cycle_graph(5))
print(td.to_json())
