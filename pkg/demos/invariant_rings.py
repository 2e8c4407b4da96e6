# Graded dimensions of parabolic invariant rings, by kernels and by Molien.
from kmc import FieldSpec, InvariantLattice, poincare
from kmc.weyl import enumerate_group, molien_series

A = "2,-1,-3;-3,2,-1;-2,-4,2"
N = 24

for f in (FieldSpec(), FieldSpec(2), FieldSpec(3)):
    lat = InvariantLattice(A, f, N)
    print(f"over {f}")
    for J in [(1,), (3,), (1, 2), (1, 2, 3)]:
        print(f"  P{''.join(map(str, J)):<4}", lat.P(J).dims)

# the G2 pair {1,2}: generators in degrees 2, 4, 12
lat = InvariantLattice(A, FieldSpec(), N)
print("1/((1-t^2)(1-t^4)(1-t^12))", list(poincare(2, 4, 12, N=N))[::2])
print("Molien for W_12          ", list(molien_series(enumerate_group(lat.action, (1, 2)), N=N))[::2])
