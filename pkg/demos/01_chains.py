"""
Linear chains, discriminants and adjoints
=========================================

"""

from fractions import Fraction

from cuspcalc import adjoint, chain_from_inductance, discriminant, inductance, star, tw

# a chain lists negated self-intersections: [3,2] is a (-3)-curve meeting a (-2)-curve
A = [3, 2]
print("d([3,2])       =", discriminant(A))
print("e([3,2])       =", inductance(A))

# the inductance determines the chain, via the Hirzebruch-Jung expansion
print("e^-1(2/5)      =", chain_from_inductance(Fraction(2, 5)))

# the adjoint is an involution and keeps the discriminant
print("[3]*           =", adjoint([3]))
print("[2,3]*         =", adjoint([2, 3]))
print("[5,2,4]**      =", adjoint(adjoint([5, 2, 4])))

# star glues the last entry of one chain to the first of the next
print("[2,3] * [4,5]  =", star([2, 3], [4, 5]))
print("tw(3) * [3]    =", star(tw(3), [3]))
