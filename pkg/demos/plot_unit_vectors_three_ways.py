"""
Unit vectors seen three ways
============================

The sequence e_n of unit vectors lives in c0.  Whether it converges to 0
in order depends on where the order is read.  Inside l-infinity it does.
Inside c0 it does not, and neither does its image under the operator
e_n -> n (1,...,1,0,...).
"""
from fractions import Fraction

from ordlab.io import encode
from ordlab.gallery import LINFREP, UnitVectors, elin_triptych, gallery_verify_certificate

tri = elin_triptych()
for key, verdict in tri.items():
    print(f"{key:9s} {verdict.outcome}")

# the positive verdict carries the decreasing indicators 1_{n >= m}
cert = tri["inclusion"].certificates[0]
print("witness:", type(cert.witness.family).__name__, "threshold p =", encode(cert.threshold.p))
print("re-verified:", gallery_verify_certificate(LINFREP, UnitVectors(Fraction(1)), tri["inclusion"].limit,
                                                 cert).accepted)

# each refutation names an index past any proposed dominator
for key in ("c0", "elin"):
    refuter = tri[key].refutation.detail["refuter"]
    z = UnitVectors(Fraction(5)).at(4)
    n = refuter.refute(z, 10)
    print(f"{key}: candidate {encode(z)} fails at n = {n}:", refuter.check(z, n))
