"""Automorphisms of n_(3,3) and their action on invariant forms."""

import random

from quadlie.autgroup import act_on_form, hn_factorize, in_H, in_N, orbit_invariants, random_automorphism
from quadlie.paperbook import FamilySpec, family_form, sym

r = random.Random("demo")
B = family_form(FamilySpec("B33", A2=sym(1, 0, 0, 1, 0, 0)))
alg = B.algebra
print("invariants of B:", orbit_invariants(B))

phi = random_automorphism(alg, r)
f = hn_factorize(phi)
print("\ngenerator images of phi:")
for i, v in enumerate(phi.generator_images, 1):
    print(f"  x{i} ->", v)
print("graded part on degree 1:")
print(f.h.grade_block(1, 1).pretty())
print("h graded:", in_H(f.h), " n unitriangular:", in_N(f.n), " h n == phi:", f.compose().matrix == phi.matrix)

# the action moves the form but not its invariants
for _ in range(3):
    Bp = act_on_form(B, random_automorphism(alg, r))
    print("\nmoved form differs:", Bp.matrix != B.matrix, " invariants:", orbit_invariants(Bp))
