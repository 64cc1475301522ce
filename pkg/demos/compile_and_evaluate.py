"""
From a rank-decomposition to a clique-width expression
======================================================

"""

from widthkit.decompositions import beta
from widthkit.graph import cycle_graph
from widthkit.kexpr import compile_rankdec, eval_kexpr, kexpr_width, serialize_kexpr
from widthkit.solvers import exact_rankwidth

g = cycle_graph(6)
rw, dec = exact_rankwidth(g)
c = beta(g, dec)
print("rank-width", rw, "distinct-row count C", c)

# the compiler promises at most 2C + 1 labels
expr, order = compile_rankdec(g, dec, check=True)
print("labels used", kexpr_width(expr), "budget", 2 * c + 1)
print(serialize_kexpr(expr))

# evaluating gives back the graph, with vertex i of the result being order[i]
back = eval_kexpr(expr).graph
print("round trip", back == g.relabel(order))
