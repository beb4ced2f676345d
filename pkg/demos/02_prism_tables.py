"""
Betti tables for small covers over polygon prisms
==================================================

P5 x I^(n-2) and P6 x I^(n-2) carry explicit characteristic functions.
The rational Betti numbers come from reduced homology of induced
subcomplexes of the dual complex; the mod-2 ones are the h-vector.
"""

from smallcover import chi_p5, chi_p6, closed_betti, dj_mod2_betti, induced_homology, suciu_trevisan_betti

for name, ctor in (("p5", chi_p5), ("p6", chi_p6)):
    print(f"{name}:  n | b_0 .. b_n              | mod 2")
    for n in range(2, 7):
        chi = ctor(n)
        b = suciu_trevisan_betti(chi).values
        assert b == closed_betti(name, n).values
        print(f"     {n} | {' '.join(map(str, b)):<22} | {' '.join(map(str, dj_mod2_betti(chi.polytope).values))}")

# Each row subset T contributes the homology of one induced subcomplex,
# always a sphere or a point for these families.
chi = chi_p6(4)
for T in ({1}, {3, 4}, {1, 3, 4}, {1, 2, 3, 4}):
    print(sorted(T), induced_homology(chi, T).values)
