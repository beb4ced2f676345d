"""
Higher Klein bottles as real Bott manifolds
============================================

K_n is the quotient of the n-torus by the involution that conjugates the
first n-1 coordinates and rotates the last one by a half turn.  Here we look
at it through its Bott matrix.
"""

from fractions import Fraction

from smallcover import (
    GroupElement,
    TorusPoint,
    char_fn_from_bott,
    chi_kn,
    closed_betti,
    group_action,
    involution,
    ishida_betti,
    kn_bott_matrix,
    orientable,
    ring_presentation,
    suciu_trevisan_betti,
)

A = kn_bott_matrix(4)
print(A.to_text())

# The involutions act on exact rational angles.
p = TorusPoint([0, Fraction(1, 4), Fraction(1, 3), Fraction(2, 5)])
print("a_1 p    =", [str(x) for x in involution(A, 1, p).coords])
print("a_1 a_2 p =", [str(x) for x in group_action(A, GroupElement.from_list([1, 1, 0, 0]), p).coords])

# Betti numbers three ways: zero-sum column sets, the subset sweep over the
# cube's characteristic function, and the binomial closed form.
for n in range(1, 7):
    B = kn_bott_matrix(n)
    print(n, ishida_betti(B).values, suciu_trevisan_betti(chi_kn(n)).values, closed_betti("kn", n).values,
          "orientable" if orientable(B) else "non-orientable")

# The cube characteristic function induced by the Bott matrix is the one used above.
print(char_fn_from_bott(A) == chi_kn(4))

print(ring_presentation(A).to_text())
