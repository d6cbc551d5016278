"""The classified algebras, field-dependent classes and a replay."""

from quadlie.exactlin import FieldMode
from quadlie.paperbook import CATALOG_LABELS, classified_algebra, gamma_class, matrix_class, replay_theorem, sym
from quadlie.quadratize import verify_quadratic

for lab in CATALOG_LABELS:
    e = classified_algebra(lab)
    ok = verify_quadratic(e.algebra).ok
    print(f"{lab:<12} {e.name:<26} dim {e.algebra.dim:>2}  type {e.type}  nilindex {e.nilindex}  field {e.field}  {ok}")

A2 = sym(1, 0, 0, -1, 0, 0)
for mode in FieldMode:
    print(f"\nover {mode.value}: gamma=-2 ->", gamma_class(-2, mode))
    print(f"          A2 ->", matrix_class(A2, mode))

rep = replay_theorem("all", seed=1, samples=3)
print(f"\nreplay: {sum(c.passed for c in rep.checks)}/{len(rep.checks)} checks pass")
for c in rep.checks[:8]:
    print("  ", "PASS" if c.passed else "FAIL", c.name)
