"""
Joint connectivity of switching schedules
=========================================

Verdicts are exact for periodic and sparse-recurrent schedules. A finite
trace says nothing about the infinite future, so its verdicts stay
"unknown" and the within-horizon evidence goes into the notes.
"""

# %%
from modcon import FiniteTrace, Periodic, SignedDigraph, classify_connectivity, parse_edgelist

ring_half = parse_edgelist("4\n1 2 +\n2 3 -\n")
ring_rest = parse_edgelist("4\n3 4 +\n4 1 -\n")

for s in (Periodic((ring_half, ring_rest)), Periodic((ring_half, ring_rest), hold=3), FiniteTrace([ring_half, ring_rest] * 5)):
    r = classify_connectivity(s)
    print(type(s).__name__, getattr(s, "hold", ""), "ujsc:", r.ujsc.to_dict(), "ujqsc:", r.ujqsc.to_dict())
    for window, label in r.notes:
        print("   ", window, "->", label)

# %%
# A pattern whose union never becomes strongly connected is decided false.
chain = SignedDigraph(4, [(1, 2, "+"), (2, 3, "+"), (3, 4, "+")])
print(classify_connectivity(Periodic((chain,))).ujsc)
