"""From an admissible form to a quadratic Lie algebra."""

from quadlie.invforms import kernel
from quadlie.paperbook import FamilySpec, family_form, sym
from quadlie.quadratize import (
    indecomposability,
    orthogonality_check,
    quotient_quadratic,
    split_1dim,
    type_and_nilindex,
    verify_quadratic,
)

B = family_form(FamilySpec("B25", A2=sym(1, 0, 1)))
print("radical of the form on n_(2,5):")
for v in kernel(B):
    print("  ", v)

Q = quotient_quadratic(B)
print(f"\nquotient: dim {Q.dim}, (type, nilindex) = {type_and_nilindex(Q)}")
for i, j, k, c in Q.table.triples():
    print(f"  [{Q.labels[i]}, {Q.labels[j]}] = {c} {Q.labels[k]}")
print("checks:", {name: c["pass"] for name, c in verify_quadratic(Q).checks.items()})
print("orthogonal central series:", orthogonality_check(Q))
print("indecomposability:", indecomposability(Q))

# with rank A2 = 1 on n_(3,3) the form is admissible once A1 fills the gap,
# and the quotient carries an orthogonal abelian factor
B = family_form(FamilySpec("B33", A1=sym(0, 0, 0, 0, 0, 1), A2=sym(1, 0, 0, 0, 0, 0)))
Q = quotient_quadratic(B)
s = split_1dim(Q)
print(f"\nrank-1 case: dim {Q.dim}, {type_and_nilindex(Q)}; splits off", [str(c) for c in s.ideal])
print("complement:", s.complement.dim, type_and_nilindex(s.complement))
