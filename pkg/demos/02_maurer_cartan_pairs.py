# # Maurer-Cartan pairs and their equivalences
#
# Over an Artinian ring A a witness is a triple (x, y, p) with x, y solving the
# Maurer-Cartan equation in L and N and p in M^0 (x) m_A gluing them.

import random

from dglapair import catalog as cat
from dglapair.artin import make_artin
from dglapair.cone import failed_equations, mc_pair_verify, pair_action, pair_equiv_verify
from dglapair.elements import Element

A = make_artin(["e"], 4)          # Q[e]/(e^4)
P = cat.load("gl2-wedge").diagram

# ## A random witness
#
# random_mc lifts a random first-order cocycle order by order, then moves it
# by a random gauge.

w = cat.random_mc(P, A, seed=1)
print("x =", w.x.format())
print("y =", w.y.format())
print("p =", w.p.format())
print("MC:", mc_pair_verify(P, w))

# ## Acting by an equivalence
#
# (a, b, c) in L^0, N^0 and M^-1 move a witness to an equivalent one.

ew = cat.random_equiv(random.Random(2), P, A)
w2 = pair_action(P, w, ew)
print("moved witness is MC:", mc_pair_verify(P, w2))
print("equivalence verifies:", pair_equiv_verify(P, w, w2, ew))

# ## Breaking the gluing equation
#
# Perturbing only y by a multiple of e^3 still leaves y MC (e^3 squares to zero
# here) but the gluing equation fails, and the report names it.

bump = Element.from_coeffs(P.N, A, {("E11.eta2", "e^3"): 1})
bad = type(w)(w.x, w.y + bump, w.p)
print("failed:", failed_equations(P, bad))
