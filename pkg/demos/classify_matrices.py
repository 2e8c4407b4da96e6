# Type, symmetrizability and class for a handful of rank-3 Cartan matrices.
from kmc import parabolic_profile, parse_matrix
from kmc.cartan import subset_label
from kmc.fixtures import CORPUS

for fx in CORPUS:
    m = parse_matrix(fx.text)
    prof = parabolic_profile(m)
    pieces = ", ".join("{" + ",".join(subset_label(J)) + "}" for J in prof.pasting_order())
    print(f"{fx.name:<12} {m.to_text():<26} {m.matrix_type.value:<10} "
          f"sym={str(m.symmetrizable):<5} class {prof.class_label.value:<3} ({prof.refined_label:<4}) pieces {pieces}")

# relabelling the indices never changes the class
m = parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2")
for perm in [(1, 2, 3), (3, 1, 2), (2, 3, 1)]:
    p = parabolic_profile(m.permuted(perm))
    print(perm, p.class_label.value, p.refined_label, "canonical order", p.permutation)
