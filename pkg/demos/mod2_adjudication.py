# Where the mod-2 series of the worked example parts ways with the printed closed form.
from kmc import FieldSpec, InvariantLattice, assemble_by_formula, assemble_by_mv
from kmc.assembly import PAPER_MOD2, compare_with_paper_example, g2_ideal_series, g2_ideal_series_as_displayed
from kmc.series import expand

A = "2,-1,-3;-3,2,-1;-2,-4,2"
f = FieldSpec(2)
N = 20

lat = InvariantLattice(A, f, N)
rep = assemble_by_formula(A, f=f, N=N, lattice=lat)
mv = assemble_by_mv(A, f=f, N=N, lattice=lat)
print("computed      ", list(rep.total))
print("Mayer-Vietoris", list(mv.total))
print("printed form  ", list(expand(PAPER_MOD2, N)))

# degree 8 ingredients behind the t^9 coefficient
print("dim P^8 =", lat.P().dim(8), " P12^8 =", lat.P((1, 2)).dim(8), " P3^8 =", lat.P((3,)).dim(8),
      " P123^8 =", lat.P((1, 2, 3)).dim(8))

print("ideal series, Kunneth  ", list(g2_ideal_series(N)))
print("ideal series, displayed", list(g2_ideal_series_as_displayed(N)))
for d in compare_with_paper_example(rep, lat)[:3]:
    print(d)
