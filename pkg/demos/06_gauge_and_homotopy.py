# # Gauge equivalence versus homotopy
#
# An equivalence (a, b, c) between two witnesses yields a Maurer-Cartan element
# of the transferred structure over Q[s, ds] joining them, and any such path
# gives back an equivalence.

import random

from dglapair import catalog as cat
from dglapair.artin import make_artin
from dglapair.cone import pair_action, pair_equiv_verify
from dglapair.homotopy import gauge_to_homotopy, homotopy_to_gauge, homotopy_verify

A = make_artin(["s1", "s2"], 3)
P = cat.load("product-pair").diagram

w0 = cat.random_mc(P, A, seed=5)
ew = cat.random_equiv(random.Random(6), P, A)
w1 = pair_action(P, w0, ew)

path = gauge_to_homotopy(P, w0, w1, ew)
print("path:", path.format())
print("failed checks:", homotopy_verify(P, path, w0, w1) or "none")

back = homotopy_to_gauge(P, path)
print("recovered equivalence verifies:", pair_equiv_verify(P, w0, w1, back))
print("same as the original:", (back.a, back.b, back.c) == (ew.a, ew.b, ew.c))
