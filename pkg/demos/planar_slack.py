"""
How loose is the planar width bound on tiny graphs?
===================================================

"""

from collections import Counter

from widthkit.corpus import GraphClass, enumerate_graphs
from widthkit.harness import verify_corpus

# every planar graph on at most 7 vertices, up to isomorphism
planar = GraphClass("planar")
graphs = [g for g in enumerate_graphs(7, planar.contains) if g.m]
print(len(graphs), "planar graphs with an edge")

report = verify_corpus([(str(i), g) for i, g in enumerate(graphs)], "planar")
print("violations:", len(report.violations))
print("largest lhs/rhs ratio:", report.max_ratio)

# tree-width against rank-width across the corpus
pairs = Counter((row.checks[0].lhs, (row.checks[0].rhs + 1) // 72) for row in report.rows)
for (tw, rw), count in sorted(pairs.items()):
    print(f"twd={tw} rwd={rw}: {count} graphs")
