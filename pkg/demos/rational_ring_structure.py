# Rational cohomology and its ring description for a nonsymmetrizable and a symmetrizable matrix.
from kmc import FieldSpec, InvariantLattice, assemble_by_formula
from kmc.assembly import compare_with_paper_example, rational_example_oracle, ring_structure_report

A = "2,-1,-3;-3,2,-1;-2,-4,2"
N = 40
lat = InvariantLattice(A, FieldSpec(), N)
rep = assemble_by_formula(A, N=N, lattice=lat)
print("H(t) =", rep.closed_form)
print("matches 1 + t(1/(1-t^2)^3 - ... + 1):", rep.total == rational_example_oracle(N))
for d in compare_with_paper_example(rep, lat):
    print(" ", d["kind"], "-", d["note"])

ring = ring_structure_report(A, N=N, lattice=lat, report=rep)
print(ring["branch"], ring["polynomial_part"], ring["odd_generator_counts"])

sym = "2,-4,-2;-4,2,-2;-1,-1,2"
ring = ring_structure_report(sym, N=24)
print(ring["branch"], ring["polynomial_part"], ring["odd_generator_counts"], ring["even_part_consistent"])
