# # Obstructions to lifting
#
# Given a small extension 0 -> J -> B -> A -> 0 and a witness over A, the
# obstruction to lifting it to B is a class in H^2 of the cone tensored with J.

import random

from dglapair import catalog as cat
from dglapair.artin import make_artin, make_small_extension
from dglapair.cone import ObstructionClass, lift_mc, mc_pair_verify, obstruction_class

se = make_small_extension(make_artin(["eps"], 3), ["eps^2"])
print("total ring:", se.total.name, " quotient:", se.quotient.name)

# ## An obstructed first-order witness

E = cat.load("obstructed-pair")
P = E.diagram
w = E.obstructed_witness.change_ring(se.quotient)
ob = obstruction_class(P, se, w)
print("class coordinates:", ob.coordinates)
print("cocycle:", ob.cocycles)

# The class does not depend on the chosen lift:
for seed in range(3):
    other = obstruction_class(P, se, w, lift_choice=random.Random(seed))
    print("  lift", seed, "->", other.coordinates)

# ## An unobstructed one lifts
#
# The same recipe for abelian-line gives a zero class, and lift_mc returns a
# witness over the bigger ring.

Q = cat.load("abelian-line").diagram
w1 = cat.random_mc(Q, se.quotient, seed=0)
res = lift_mc(Q, se, w1)
print("lifted:", not isinstance(res, ObstructionClass), "MC over B:", mc_pair_verify(Q, res))
