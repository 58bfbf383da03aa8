# # Polynomial paths and the contraction onto the cone
#
# Elements of M[t, dt] interpolate between g(n) at t = 0 and h(l) at t = 1.
# The maps iota, pi and K form a contraction of these paths onto the cone.

import random

from dglapair import catalog as cat
from dglapair.paths import contraction_check, homotopy_K, iota, pi, random_path_triple

P = cat.load("heisenberg-theta").diagram
rng = random.Random(0)

# ## iota and pi

c = cat.random_cone_element(rng, P, 1)
pt = iota(P, c)
print("cone element:", c)
print("iota(c).m =", pt.m.format())
print("pi(iota(c)) == c:", pi(P, pt) == c)

# ## The homotopy K
#
# K integrates the dt part from 0 to t and corrects by the value at 1; on
# t dt m it gives (t/2 - t^2/2) m.

from dglapair.elements import Element
from dglapair.paths import PathTriple

x = Element.from_coeffs(P.M, c.ring, {(P.M.names[0], "1"): 1})
k = homotopy_K(P, PathTriple(c.l.scaled(0), c.n.scaled(0), x.form_multiply({(1, 1): 1})))
print("K(t dt x) =", k.m.format())

# ## All identities at once
#
# contraction_check verifies pi iota = id, iota pi - id = dK + Kd, the side
# conditions K^2 = K iota = pi K = 0 and that every map is a chain map.

samples = [random_path_triple(rng, P, rng.choice([0, 1, 2]), tmax=5) for _ in range(20)]
cones = [cat.random_cone_element(rng, P, rng.choice([0, 1, 2])) for _ in range(20)]
rep = contraction_check(P, samples, cones)
print("checked", rep.checked, "identities, ok:", rep.ok)
