"""
Genetic codes of planar polygon spaces
=======================================

A generic length vector determines its polygon space up to diffeomorphism
through its genetic code.  Three codes give small covers over a cube or a
polygon prism, and for those we can read off Betti numbers.
"""

from itertools import combinations_with_replacement

from smallcover import Family, LengthVector, genetic_code, is_generic, recognize_family

print(genetic_code(LengthVector([1, 2, 2, 2, 4])))   # the Klein bottle
print(genetic_code(LengthVector([1, 1, 1, 1, 1])))   # equilateral pentagon
print(genetic_code(LengthVector([1, 1, 1, 1, 10])))  # no polygons at all

# Scan small integer hexagons and tally the families found.
seen = {}
for raw in combinations_with_replacement(range(1, 7), 6):
    alpha = LengthVector(raw)
    if not is_generic(alpha):
        continue
    code = genetic_code(alpha)
    fam = recognize_family(code)
    if fam is not Family.OTHER:
        seen.setdefault((fam.value, str(code)), raw)
for (fam, code), raw in sorted(seen.items()):
    print(f"{fam:9} {code:16} e.g. lengths {raw}")
