# # Transferred L-infinity brackets on the cone
#
# Pushing the path DGLA through the contraction puts an L-infinity structure
# on the cone. The brackets come from a sum over binary trees, and also from a
# closed formula whose coefficients are Bernoulli numbers.

import random

from dglapair import catalog as cat
from dglapair.linf import (bernoulli, phi_sequence, transferred_bracket_closed, transferred_bracket_tree,
                           transferred_structure, validate_linf)

# ## The coefficients
#
# phi_1 = t and phi_{j+1} = integral of phi_j minus its mean times t. The means
# I_j are -B_j / j!.

for j in range(1, 7):
    phi, I = phi_sequence(j)
    print(f"j={j}  I_j={str(I):>8s}  B_j={str(bernoulli(j)):>6s}  phi_j={phi}")

# ## Tree sum against the closed formula
#
# Higher brackets only see inputs m_1, ..., m_j from the M slot next to one
# input from L or N, so the samples are built in that shape. Arity 4 always
# vanishes because I_3 = 0.

from dglapair.cone import ConeTriple

P = cat.load("gl2-wedge").diagram
rng = random.Random(3)


def m_only():
    x = cat.random_cone_element(rng, P, 1)
    return ConeTriple(x.l.scaled(0), x.n.scaled(0), x.m)


for arity in (2, 3, 4, 5):
    inputs = [m_only() for _ in range(arity - 1)] + [cat.random_cone_element(rng, P, 1)]
    tree = transferred_bracket_tree(P, inputs)
    closed = transferred_bracket_closed(P, inputs)
    print(f"arity {arity}: agree={tree == closed}  value={closed}")

# ## The L-infinity relations
#
# validate_linf checks every component of Q o Q on basis multisets.

rep = validate_linf(transferred_structure(P, 3), 3)
print("relations checked:", rep.weights, "ok:", rep.ok)
