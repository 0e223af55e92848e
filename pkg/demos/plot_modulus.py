"""
Modulus of an operator
======================

On orthants the modulus is the entrywise absolute value.  Over K4 the
supremum formula stops being additive, and the library raises instead of
returning a matrix.
"""
from ordlab.io import encode
from ordlab.operators import LinOp, ModulusAdditivityError, lattice_ops_Lb, modulus, op_neg
from ordlab.space import K4, ORTH

T = LinOp(ORTH(2), ORTH(2), ((1, -2), (0, 3)), "T")
print("|T| =", encode(modulus(T).rep))
print("T v -T =", encode(lattice_ops_Lb(T, op_neg(T))["sup"].rep))

f = LinOp(K4, ORTH(1), ((1, 1, 0),), "f")
try:
    modulus(f)
except ModulusAdditivityError as exc:
    print("K4: |f|(x + y) =", encode(exc.left), "but |f|x + |f|y =", encode(exc.right))
