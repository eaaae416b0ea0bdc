# coding: utf-8

# # Nielsen graphs of small groups

from palaut import nielsen as nl

z5 = nl.cyclic_group(5)
klein = nl.direct_product(nl.cyclic_group(2), nl.cyclic_group(2))

for name, g in (("Z/5", z5), ("Klein four", klein), ("Z/6", nl.cyclic_group(6))):
    for k in (1, 2, 3):
        print(f"{name:10s} k={k}: {nl.graph_stats(nl.nielsen_graph(g, k))}")

# Moves from one tuple, labelled.

print(nl.labeled_moves(z5, (1, 2)))

# DOT output for graphviz.

print(nl.to_dot(nl.nielsen_graph(klein, 2)))
