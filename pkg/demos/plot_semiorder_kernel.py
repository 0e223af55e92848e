"""
Convergence through a map with a kernel
=======================================

A semi-order space orders V through a linear map T into an ordered space
W.  Whatever T kills is invisible: a family may blow up along the kernel
and still converge, and its limit is only determined up to the kernel.
"""
from ordlab.convergence import make_family
from ordlab.io import encode
from ordlab.semiorder import HalfspaceSet, SemiOrderSpace, semi_leq, wt_closed, wt_converges
from ordlab.space import ORTH

# project Q^3 onto its first two coordinates
P = SemiOrderSpace(3, ORTH(2), ((1, 0, 0), (0, 1, 0)), "proj")
print("(0,0,5) <= (0,0,-5):", semi_leq(P, (0, 0, 5), (0, 0, -5)))

# 1/n on the first axis plus linear growth on the third
x = make_family(3, (0, 0, 0), [((1, 0, 0), 1, -1), ((0, 0, 1), 1, 1)])
v = wt_converges(P, x)
print("converges:", v.outcome, "image limit", encode(v.limit))

# the half-space x3 >= 0 is not closed: a limit escapes along the kernel
A = HalfspaceSet(3, (((0, 0, 1), 0),))
inside = make_family(3, (0, 0, 1), [((1, 0, 0), 1, -1)])
res = wt_closed(P, A, [inside])
print("closed:", res.status.value, "escaping limit", encode(res.witness["limit"]))
