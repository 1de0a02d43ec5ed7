"""Quadratic Lie algebra fibers.

The fiber bundle is trivial with a fixed quadratic Lie algebra fiber:
constant structure constants ``c[i][j][k]`` (the e_k-coefficient of
[e_i, e_j]) and a constant nondegenerate ad-invariant metric ``g``.
All position dependence of the geometry enters elsewhere, through the
connection, curvature and leafwise 3-form, so fiber validity reduces to
finitely many rational tensor identities checked here exactly.

The metric may be indefinite; no positivity is assumed anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .linalg import nullspace, rational_det
from .poly import Poly
from .report import Report, Witness

Rat = Fraction  # entries may also be plain ints


class QuadLieAlgebra:
    """Structure constants plus an ad-invariant metric on a fixed basis."""

    def __init__(self, dim: int, c: Sequence, g: Sequence):
        self.dim = dim
        self.c = [
            [[Fraction(c[i][j][k]) for k in range(dim)] for j in range(dim)]
            for i in range(dim)
        ]
        self.g = [[Fraction(g[i][j]) for j in range(dim)] for i in range(dim)]
        # B[i][j][k] = <[e_i, e_j], e_k>; ad-invariance makes it totally antisymmetric
        self.b = [
            [
                [
                    sum((self.c[i][j][l] * self.g[l][k] for l in range(dim)), Fraction(0))
                    for k in range(dim)
                ]
                for j in range(dim)
            ]
            for i in range(dim)
        ]

    # -- validation ------------------------------------------------------

    def validate(self) -> Report:
        report = Report()
        m = self.dim
        c, g, b = self.c, self.g, self.b

        skew = None
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    r = c[i][j][k] + c[j][i][k]
                    if r and skew is None:
                        skew = Witness("c[i][j][k] + c[j][i][k]", (i + 1, j + 1, k + 1), str(r))
        if skew is None:
            report.add_pass("fiber_bracket_skew")
        else:
            report.add_fail("fiber_bracket_skew", skew)

        jacobi = None
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    for s in range(m):
                        r = sum(
                            (
                                c[i][j][l] * c[l][k][s]
                                + c[j][k][l] * c[l][i][s]
                                + c[k][i][l] * c[l][j][s]
                                for l in range(m)
                            ),
                            Fraction(0),
                        )
                        if r and jacobi is None:
                            jacobi = Witness(
                                "jacobiator", (i + 1, j + 1, k + 1, s + 1), str(r)
                            )
        if jacobi is None:
            report.add_pass("fiber_jacobi")
        else:
            report.add_fail("fiber_jacobi", jacobi)

        sym = None
        for i in range(m):
            for j in range(m):
                r = g[i][j] - g[j][i]
                if r and sym is None:
                    sym = Witness("g[i][j] - g[j][i]", (i + 1, j + 1), str(r))
        if sym is None:
            report.add_pass("fiber_metric_symmetric")
        else:
            report.add_fail("fiber_metric_symmetric", sym)

        det = rational_det(self.g)
        if det:
            report.add_pass("fiber_metric_nondegenerate")
        else:
            report.add_fail(
                "fiber_metric_nondegenerate", Witness("det(g)", (), "0")
            )

        # total antisymmetry of B (skew in (i,j) is implied by the bracket
        # skew check; the new content is antisymmetry in the last two slots)
        adinv = None
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    r = b[i][j][k] + b[i][k][j]
                    if r and adinv is None:
                        adinv = Witness(
                            "B[i][j][k] + B[i][k][j]", (i + 1, j + 1, k + 1), str(r)
                        )
        if adinv is None:
            report.add_pass("fiber_ad_invariance")
        else:
            report.add_fail("fiber_ad_invariance", adinv)
        return report

    # -- operations --------------------------------------------------------

    def bracket(self, r: Sequence[Poly], s: Sequence[Poly]) -> List[Poly]:
        """[r, s] componentwise for m-vectors of polynomials."""
        m = self.dim
        if len(r) != m or len(s) != m:
            raise ValueError("fiber vector length mismatch")
        nvars = r[0].nvars if m else 0
        out = []
        for k in range(m):
            acc = Poly.zero(nvars)
            for i in range(m):
                if not r[i]:
                    continue
                for j in range(m):
                    coeff = self.c[i][j][k]
                    if coeff and s[j]:
                        acc = acc + (r[i] * s[j]).scale(coeff)
            out.append(acc)
        return out

    def pairing(self, r: Sequence[Poly], s: Sequence[Poly]) -> Poly:
        """<r, s> for m-vectors of polynomials."""
        m = self.dim
        if len(r) != m or len(s) != m:
            raise ValueError("fiber vector length mismatch")
        nvars = r[0].nvars if m else 0
        acc = Poly.zero(nvars)
        for i in range(m):
            if not r[i]:
                continue
            for j in range(m):
                if self.g[i][j] and s[j]:
                    acc = acc + (r[i] * s[j]).scale(self.g[i][j])
        return acc

    def ad_matrix(self, v: Sequence[Poly]) -> List[List[Poly]]:
        """Matrix of ad(v): column j holds [v, e_j]."""
        m = self.dim
        nvars = v[0].nvars if m else 0
        out = [[Poly.zero(nvars) for _ in range(m)] for _ in range(m)]
        for i in range(m):
            if not v[i]:
                continue
            for j in range(m):
                for k in range(m):
                    coeff = self.c[i][j][k]
                    if coeff:
                        out[k][j] = out[k][j] + v[i].scale(coeff)
        return out

    def ad_matrix_rational(self, v: Sequence) -> List[List[Fraction]]:
        m = self.dim
        out = [[Fraction(0)] * m for _ in range(m)]
        for i in range(m):
            if not v[i]:
                continue
            for j in range(m):
                for k in range(m):
                    out[k][j] += Fraction(v[i]) * self.c[i][j][k]
        return out

    def cartan_three_form(self) -> List[List[List[Fraction]]]:
        """The totally antisymmetric array -<[e_i, e_j], e_k>."""
        m = self.dim
        return [
            [[-self.b[i][j][k] for k in range(m)] for j in range(m)]
            for i in range(m)
        ]

    def center(self) -> List[List[Fraction]]:
        """Rational basis of {r : [r, s] = 0 for all s}.

        Kernel of the stacked adjoint map r -> ad(r); basis vectors are
        normalized to leading entry 1.
        """
        m = self.dim
        rows = []
        for j in range(m):
            for k in range(m):
                rows.append([self.c[i][j][k] for i in range(m)])
        if not rows:
            return []
        return nullspace(rows, m)


def su2() -> QuadLieAlgebra:
    """so(3)-type fiber: c[i][j][k] = epsilon_ijk with the identity metric."""
    eps = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
           (1, 0, 2): -1, (2, 1, 0): -1, (0, 2, 1): -1}
    c = [[[eps.get((i, j, k), 0) for k in range(3)] for j in range(3)] for i in range(3)]
    g = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    return QuadLieAlgebra(3, c, g)


def abelian(dim: int, g: Sequence = None) -> QuadLieAlgebra:
    """Abelian fiber with the identity metric unless one is supplied."""
    c = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    if g is None:
        g = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    return QuadLieAlgebra(dim, c, g)


def direct_sum(a: QuadLieAlgebra, b: QuadLieAlgebra) -> QuadLieAlgebra:
    """Orthogonal direct sum of two quadratic Lie algebras."""
    m = a.dim + b.dim
    c = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    g = [[Fraction(0)] * m for _ in range(m)]
    for i in range(a.dim):
        for j in range(a.dim):
            g[i][j] = a.g[i][j]
            for k in range(a.dim):
                c[i][j][k] = a.c[i][j][k]
    for i in range(b.dim):
        for j in range(b.dim):
            g[a.dim + i][a.dim + j] = b.g[i][j]
            for k in range(b.dim):
                c[a.dim + i][a.dim + j][a.dim + k] = b.c[i][j][k]
    return QuadLieAlgebra(m, c, g)
