"""The curvature pairing as an exact obstruction.

Over a rank-4 leaf with an abelian line fiber, the 4-form built from
the curvature, <R wedge R>, must be the leafwise differential of the
3-form H.  With R = dx1^dx2 + dx3^dx4 (tensored with the unit fiber
vector) the pairing is 2 dx1^dx2^dx3^dx4, and H = 2 x1 dx2^dx3^dx4 is
a primitive.  Deleting H leaves an exact residual of 2: the data then
fails to assemble into a Courant structure, and the bracket axioms
break in the same place.
"""

from courant import (
    FForm,
    GConnection,
    GValuedForm,
    Patch,
    Quintuple,
    abelian,
    leafwise_d,
    pontryagin_form,
)

patch = Patch(n=4, p=4)
fiber = abelian(1)
curv = GValuedForm(patch, 1, 2, {(1, 2): [patch.one()], (3, 4): [patch.one()]})
hform = FForm(patch, 3, {(2, 3, 4): patch.var(1).scale(2)})
q = Quintuple(patch, fiber, GConnection.flat(patch, 1), curv, hform)

rr = pontryagin_form(curv, fiber)
print("<R wedge R> =", rr)
print("dF H        =", leafwise_d(hform))
print("identity holds:", rr == leafwise_d(hform))
print()

print("== validation with H present ==")
for record in q.validate():
    print(" ", record.status.upper(), record.name)

print()
print("== validation with H deleted ==")
broken = Quintuple(patch, fiber, GConnection.flat(patch, 1), curv, FForm.zero(patch, 3))
for record in broken.validate():
    line = "  %s %s" % (record.status.upper(), record.name)
    if record.witness:
        line += "  residual %s at %s" % (record.witness.residual, record.witness.indices)
    print(line)

print()
report = broken.check_axioms(degree_cap=1)
print("axiom suite detects the same defect:",
      [r.name for r in report.failures()])
