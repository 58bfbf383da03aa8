# # The cone of a pair of DGLA morphisms
#
# A pair h: L -> M, g: N -> M is encoded as a PairDiagram. Its cone carries the
# differential D(l, n, m) = (dl, dn, -dm + h(l) - g(n)), and the deformation
# problem of the pair is read off from its cohomology.

from dglapair import catalog as cat
from dglapair.cone import cone_les_check, tangent_space

# ## The shipped examples

for name in cat.catalog_list():
    print(f"{name:18s} {cat.load(name).description}")

# ## gl2 tensored with an exterior algebra
#
# L and N are sub-DGLAs of M; the cone has a basis prefixed by the slot it
# comes from.

P = cat.load("gl2-wedge").diagram
C = P.cone
print(len(C.space.names), "cone basis vectors in degrees", sorted(set(C.degrees())))
print("D^2 = 0:", C.complex.check_square_zero().ok)

# Cohomology dimensions in every degree where the cone lives:
for i in range(min(C.degrees()) - 1, max(C.degrees()) + 2):
    print(f"  H^{i} = {C.cohomology(i)[0]}")

# The long exact sequence H(C) -> H(L+N) -> H(M) -> H(C)[1] is exact at every node:
les = cone_les_check(P)
print("exact at all", len(les.nodes), "nodes:", les.ok)

# ## First-order deformations
#
# The tangent space of the pair is H^1 of the cone.

for name in ("abelian-line", "heisenberg-theta", "obstructed-pair"):
    dim, reps = tangent_space(cat.load(name).diagram)
    print(f"{name}: tangent dimension {dim}")
