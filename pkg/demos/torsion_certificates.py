# p-torsion witnesses: degrees where mod-p Weyl invariants outnumber rational ones.
from kmc import FieldSpec, InvariantLattice, torsion_certificate
from kmc.torsion import dickson_degrees

A = "2,-1,-3;-3,2,-1;-2,-4,2"
rational = InvariantLattice(A, FieldSpec(), 60)

for p in (2, 3, 5):
    c = torsion_certificate(A, p, 60, rational=rational)
    print(f"p={p} Dickson degrees {dickson_degrees(p)}: {c.status}; {c.explanation()}")
    if c.warning:
        print("   ", c.warning)

# too short a truncation only says "not yet"
print(torsion_certificate(A, 3, 20).explanation())
