"""
Cusps: three encodings and the resolution graph
===============================================

"""

from cuspcalc import (CharacteristicSequence, char_from_mult, contract_to_point, mult_from_char,
                      parse_mult, puiseux_from_char, resolution_graph)

c = CharacteristicSequence((4, 6, 7))
print("characteristic :", c)
print("multiplicities :", mult_from_char(c), "full", mult_from_char(c).full)
print("Puiseux pairs  :", puiseux_from_char(c))

# written forms drop trailing 1's; (2_3) is shorthand for (2,2,2)
print("(2_3) comes from", char_from_mult(parse_mult("(2_3)")))

res = resolution_graph(c)
for i, (A, B, o) in enumerate(zip(res.A, res.B, res.o), start=1):
    print(f"A{i} = {A}   B{i} = {B}   o{i} = {o}")
print(res.vertex_count, "blow-ups; the last one is", res.assembled.vertex(res.d0).label)

# the exceptional tree contracts back to a point in as many steps
print(len(contract_to_point(res.assembled)), "blow-downs")
print(res.assembled.to_dot("cusp"), end="")
