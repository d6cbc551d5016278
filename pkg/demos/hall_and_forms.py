"""Hall bases, graded dimensions and invariant forms of small free nilpotent algebras."""

from quadlie.freenilp import FreeNilpotent, witt_dimension
from quadlie.invforms import bk_components, invariant_form_space, sym0_membership
from quadlie.paperbook import FamilySpec, family_form, sym

alg = FreeNilpotent(2, 4)
print(f"n_(2,4) has dimension {alg.dim}")
for i, w in enumerate(alg.basis):
    print(f"  e{i + 1:<2} grade {alg.grade[i]}  {w}")

print("\ngraded dimensions (Witt):")
for d in (2, 3):
    print(f"  d={d}:", [witt_dimension(d, k) for k in range(1, 6)])

# brackets reduce back onto the Hall basis
x1, x2 = alg.gen(1), alg.gen(2)
print("\n[x1, [x2, x1]] =", alg.bracket(x1, alg.word("[x2,x1]")))

print("\ndimension of the invariant-form space:")
for d, t in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3)]:
    print(f"  n_({d},{t}): {len(invariant_form_space(FreeNilpotent(d, t)))}")

# a form on n_(2,3) and its pieces by total grade
B = family_form(FamilySpec("B23", A1=sym(1, 2, 3), gamma=5))
print("\nform on n_(2,3):")
print(B.matrix.pretty())
for k, c in enumerate(bk_components(B), 1):
    print(f"B_{k}:")
    print(c.matrix.pretty())

for spec in (FamilySpec("B23", gamma=5), FamilySpec("B23", A1=sym(1, 0, 1))):
    m = sym0_membership(family_form(spec))
    print(f"\n{spec.family} gamma={spec.gamma}: admissible={bool(m)} ({m.reason})")
