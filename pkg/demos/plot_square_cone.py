"""
The square cone in three dimensions
===================================

K4 is generated by (1,1,1), (1,-1,1), (-1,1,1) and (-1,-1,1).  It orders
Q^3 without making it a lattice, yet it sits inside Q^4 as an order dense
subspace, so disjointness and bands still make sense.
"""
from ordlab.cover import make_cover
from ordlab.io import encode
from ordlab.space import K4, Subspace, has_rdp, is_lattice, supremum
from ordlab.structure import band_projection, is_band, is_disjoint

# two neighbouring extreme rays have no supremum
lat = is_lattice(K4)
print("lattice:", lat.status.value, "witness", encode(lat.witness))
print("sup of the pair:", supremum(K4, lat.witness).status.value)

# Riesz decomposition fails too; the witness comes with a Farkas certificate
rdp = has_rdp(K4)
z, x1, x2 = rdp.witness
print("RDP:", rdp.status.value, "z =", encode(z), "<=", encode(x1), "+", encode(x2))

# the four facet functionals embed K4 into the orthant of Q^4
cover = make_cover(K4).witness
print("cover rows:", encode(cover.embedding), "order dense:", cover.order_dense_verified)

# disjointness read off directly and through the cover
d = is_disjoint(K4, (1, 1, 1), (-1, -1, 1), cover)
print("(1,1,1) and (-1,-1,1) disjoint:", d.direct_result, d.cover_result)

# a one-dimensional band whose complement is also one-dimensional
B = Subspace.spanned_by(K4, [(1, 1, 1)])
band = is_band(B, cover)
print("band:", band.status.value, "complement basis", encode(band.witness.basis))
bp = band_projection(K4, B, cover)
print("band projection:", bp.status.value, "-", bp.reason)
