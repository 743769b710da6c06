"""
The four families of bicuspidal data
====================================

"""

from cuspcalc import (FamilyParams, assemble_global_graph, exceptional_trees, family_data,
                      genus_check, strict_transform_selfint)

for family, b in [(1, 2), (2, 2), (3, 3), (4, 3)]:
    nd = family_data(FamilyParams(family, 1, b))
    print(f"family {family}, a=1, b={b}: {nd}  genus ok: {genus_check(nd)}"
          f"  (C')^2 = {strict_transform_selfint(nd)}")

# total transform of the degree 5 curve: both cusp trees joined through C'
g = assemble_global_graph(family_data(FamilyParams(1, 1, 2)))
print(len(g), "vertices;", [len(t) for t in exceptional_trees(g)], "in the exceptional trees")
