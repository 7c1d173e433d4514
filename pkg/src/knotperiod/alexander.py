"""Classical Alexander polynomials of knots and of two-component links ``K u A``.

For a link the axis component ``A`` acts trivially on the coefficients
(its meridian goes to 1), giving the one-variable specialization used in
the periodicity conditions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ComputationError, InvalidInputError
from .fox import jacobian
from .knotio import PDCode, linking_number, sublink, wirtinger
from .laurent import LaurentPoly, canonicalize, equal_up_to_unit, try_divexact
from .matring import RingMatrix, apply_action, delete_column, determinant

__all__ = [
    "PsiAction",
    "psi_action",
    "alexander_matrix",
    "alexander_poly",
    "alexander_poly_columns",
    "link_poly",
    "RelReport",
    "verify_rel_identity",
]


@dataclass(frozen=True)
class PsiAction:
    """Abelianization action ``x_j -> t^exponents[j]`` on a Laurent ring."""

    exponents: tuple
    p: int = None

    def image(self, j) -> LaurentPoly:
        return LaurentPoly.monomial(1, self.exponents[j], self.p)

    def assignment(self):
        return {j: RingMatrix([[self.image(j)]], self.p) for j in range(len(self.exponents))}


def psi_action(pres, component: int = 0, p=None) -> PsiAction:
    """Send each generator to ``t`` raised to its ``component`` coordinate in H_1."""
    if not 0 <= component < pres.num_components:
        raise InvalidInputError(f"presentation has no component {component}")
    exps = tuple(v[component] for v in pres.abelian_exponent)
    if not any(exps):
        raise ComputationError("every generator acts trivially; no Alexander polynomial")
    return PsiAction(exps, p)


def alexander_matrix(pres, psi: PsiAction) -> RingMatrix:
    return apply_action(jacobian(pres), psi.assignment(), n=1, p=psi.p)


def _column_value(a_psi, psi, j):
    det = determinant(delete_column(a_psi, j))
    if not det:
        return det
    e = psi.exponents[j]
    p = psi.p
    # det(A_j) * (t - 1) / (t^e - 1)
    num = det * LaurentPoly({1: 1, 0: -1}, p)
    den = LaurentPoly({e: 1, 0: -1}, p)
    q = try_divexact(num, den)
    if q is None:
        raise ComputationError(
            f"column {j}: {den} does not divide the deleted-column minor times (t - 1); "
            "the presentation is not a valid deficiency-one presentation")
    return q


def _check_square(pres):
    if pres.deficiency != 1:
        raise InvalidInputError(
            f"need a deficiency-one presentation, got {pres.num_generators} generators "
            f"and {len(pres.relators)} relators")


def alexander_poly_columns(pres, component: int = 0, p=None):
    """Normalized deleted-column values for every deletable column, as ``{j: poly}``."""
    _check_square(pres)
    psi = psi_action(pres, component, p)
    a_psi = alexander_matrix(pres, psi)
    return {j: _column_value(a_psi, psi, j) for j in range(pres.num_generators) if psi.exponents[j]}


def alexander_poly(pres, p=None, component: int = 0) -> LaurentPoly:
    """Canonical Alexander polynomial over Z (``p=None``) or F_p.

    Deletes the column of a generator with the smallest nonzero exponent
    and normalizes by ``(t - 1)/(t^e - 1)``.  A zero result is returned as
    the zero polynomial.
    """
    _check_square(pres)
    psi = psi_action(pres, component, p)
    a_psi = alexander_matrix(pres, psi)
    j = min((j for j in range(pres.num_generators) if psi.exponents[j]),
            key=lambda j: (abs(psi.exponents[j]), j))
    value = _column_value(a_psi, psi, j)
    return canonicalize(value) if value else value


def link_poly(pres, component: int = 0, p=None) -> LaurentPoly:
    """One-variable polynomial of ``K u A`` with ``K = component`` and every other meridian sent to 1."""
    if pres.num_components < 2:
        raise InvalidInputError("link_poly needs at least two components")
    return alexander_poly(pres, p=p, component=component)


@dataclass(frozen=True)
class RelReport:
    link_poly: LaurentPoly
    knot_poly: LaurentPoly
    linking: int
    rhs: LaurentPoly
    equal_up_to_unit: bool

    def as_dict(self):
        return {
            "identity": "Delta_L = (1 - t^lambda) Delta_K",
            "lambda": self.linking,
            "lhs": str(self.link_poly),
            "rhs": str(self.rhs),
            "delta_K": str(self.knot_poly),
            "equal_up_to_unit": self.equal_up_to_unit,
        }


def verify_rel_identity(pd: PDCode, component: int = 0, p=None) -> RelReport:
    """Compare ``Delta_L`` with ``(1 - t^lambda) Delta_K`` for a two-component diagram."""
    if pd.num_components != 2:
        raise InvalidInputError("verify_rel_identity needs a two-component diagram")
    axis = 1 - component
    lam = linking_number(pd, component, axis)
    lhs = link_poly(wirtinger(pd), component, p)
    dk = alexander_poly(wirtinger(sublink(pd, [component])), p)
    factor = LaurentPoly({0: 1}, p) - LaurentPoly({abs(lam): 1}, p)
    rhs = factor * dk
    return RelReport(lhs, dk, lam, rhs, equal_up_to_unit(lhs, rhs))
