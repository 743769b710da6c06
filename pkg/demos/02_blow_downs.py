"""
Blowing down weighted dual graphs
=================================

"""

from cuspcalc import (ContractionStuck, chain_graph, chain_shrinks_to_zero, contract_to_point,
                      shrink_chain, simulate_contraction)

# [3,1,2]: the (-1)-curve sits in the middle, so blowing it down touches both neighbours
g = chain_graph([3, 1, 2])
trace = contract_to_point(g)
for step in trace.steps:
    print(f"blow down vertex {step.vertex} ({step.kind}), neighbours {step.neighbors}")
print("blow-ups, first to last:", trace.blow_up_kinds)

# [A,1,B] shrinks to a single 0-curve exactly when A is the adjoint of B
print("[3,1,2,2] -> [0]?", chain_shrinks_to_zero([3], [2, 2]))
print("[3,1,3]   -> [0]?", chain_shrinks_to_zero([3], [3]))

# onto a (-2)-curve: [4,1,2] needs one sprouting blow-up
print("sprouting count for [4,1,2] -> [2]:", shrink_chain([4], [2], 2))

# a graph without a usable (-1)-vertex gets stuck
try:
    contract_to_point(chain_graph([2, 2, 1, 3, 2]))
except ContractionStuck as exc:
    print("stuck:", exc.graph.as_chain())

# stopping early leaves whatever is left of the chain
print(simulate_contraction(chain_graph([2, 1, 3, 2]), stop_at=1).result.as_chain())
