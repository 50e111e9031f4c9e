"""Bethe-equation verification for lifted solutions.

The plus-part roots w_l = -x_l(t) are the Bethe roots.  Residuals are
checked in t-cleared form, so everything stays a truncated series:

  Gaudin:  R_l = 1 + t * (sum_j n_j/(w_l - z_j) - sum_{s != l} 2/(w_l - w_s)),
           from 2*zeta + sum_j n_j/(w_l - z_j) - sum_{s != l} 2/(w_l - w_s) = 0
           with the twist dictionary 2*zeta = 1/t;
  XXZ:     C_l = Q+(q w_l) * Lambda(w_l / q) + t * Q+(w_l / q) * Lambda(w_l),
           the two-point clearing of the quotient form, twist zeta^2 = 1/t.

Zero positions use z_j = -a_j for the master shifts a_j with n_j = m_j.
Nondegeneracy (simple, Lambda-disjoint, q-distinct) is decided at the
level of truncated series: the pairwise differences must be invertible
jets, which is exactly what makes the cleared residuals well-defined.
Residuals are only emitted when the applicable flags pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .lifting import LiftedSolution
from .scalar import Scalar, ZERO, ONE
from .series import Series
from .systems import ProblemSpec

TWIST_GAUDIN = "2*zeta = 1/t"
TWIST_XXZ = "zeta^2 = 1/t"

# extra window (in t-orders) granted by treating the jet as an exact
# polynomial before dividing; reciprocal of a valuation-1 jet costs two
WORK_GUARD = 4


class UndecidableQDistinctnessError(ValueError):
    """|q| = 1 and q is not a root of unity: no finite exponent window."""


class NondegeneracyError(ValueError):
    """A residual denominator vanishes as a truncated series."""


@dataclass(frozen=True)
class BetheReport:
    roots: Tuple[Series, ...]
    twist: str
    flags: Dict[str, bool]
    q_string_form: bool
    residuals: Optional[Tuple[Series, ...]]
    residual_valuations: Optional[Tuple[Optional[Fraction], ...]]
    q_window: Optional[int] = None  # exponent window used for q-distinctness

    @property
    def gated(self) -> bool:
        return self.residuals is None

    def to_json(self):
        return {"roots": [r.to_json() for r in self.roots],
                "twist": self.twist,
                "flags": dict(self.flags),
                "q_string_form": self.q_string_form,
                "q_window": self.q_window,
                "residual_valuations":
                    [None if v is None else str(v)
                     for v in self.residual_valuations]
                    if self.residual_valuations is not None else None}


def _roots(ls: LiftedSolution) -> Tuple[Series, ...]:
    return tuple(-s for s in ls.point.x)


def _lambda_zeros(spec: ProblemSpec) -> List[Tuple[Scalar, int]]:
    return [(-a, mult) for a, mult in spec.lam.shifts]


def nondegeneracy_check(ls: LiftedSolution, spec: ProblemSpec
                        ) -> Dict[str, bool]:
    """Series-level nondegeneracy flags for the Bethe correspondence.

    simple_zeros: the roots w_l are pairwise distinct jets.
    disjoint_from_lambda: no w_l coincides with a zero of Lambda as a jet.
    q_distinct (difference only): no q^k * w_l meets another root or a
    Lambda zero, for |k| up to the decidability window.
    """
    roots = _roots(ls)
    flags = {"simple_zeros": True, "disjoint_from_lambda": True}
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if (roots[i] - roots[j]).is_zero:
                flags["simple_zeros"] = False
    zeros = _lambda_zeros(spec)
    for w in roots:
        for zv, _ in zeros:
            if (w - zv).is_zero:
                flags["disjoint_from_lambda"] = False
    if spec.is_difference:
        flags["q_distinct"] = _q_distinct(roots, zeros, spec)
    return flags


def _q_distinct(roots, zeros, spec: ProblemSpec) -> bool:
    q = spec.q
    if q.abs2() == 1:
        # validate() already rejects the Q(i) roots of unity; any other
        # unit-modulus q admits no finite exponent window
        raise UndecidableQDistinctnessError(
            "|q| = 1 with q not a root of unity: q-distinctness is not "
            "decidable by a finite exponent window")
    if not roots:
        return True
    window = spec.unity_check_bound()
    targets = list(roots) + [Series.const(zv, roots[0].top, roots[0].n_ram)
                             for zv, _ in zeros]
    # pairs with at least one genuine root; k ranges over both signs, so
    # root-vs-root pairs are covered once from each side
    for i in range(len(roots)):
        for j in range(len(targets)):
            if i == j:
                continue
            for k in range(-window, window + 1):
                if j < len(roots) and k == 0:
                    continue  # simple_zeros covers unscaled root pairs
                if (targets[i] * (q ** k) - targets[j]).is_zero:
                    return False
    return True


def q_string_decomposition(spec: ProblemSpec) -> bool:
    """Whether Lambda factors into q-strings prod_j (z - q^{-j} z_p).

    Always true: every zero is itself a q-string of length one, so this
    flag cannot exclude any master polynomial; it is reported for
    completeness only.
    """
    return True


def gaudin_residual(ls: LiftedSolution, spec: ProblemSpec) -> List[Series]:
    """t-cleared Gaudin residuals R_l, one per root, window = lift order."""
    if spec.is_difference:
        raise ValueError("Gaudin residuals apply to the differential mode")
    n_ram = ls.n_ram
    work_top = ls.order + WORK_GUARD * n_ram
    roots = [w.widen(work_top) for w in _roots(ls)]
    zeros = _lambda_zeros(spec)
    out = []
    for l, w in enumerate(roots):
        acc = Series.zero(work_top, n_ram)
        for zv, mult in zeros:
            diff = w - zv
            if diff.is_zero:
                raise NondegeneracyError(
                    f"root {l + 1} collides with the Lambda zero {zv}")
            acc = acc + diff.reciprocal() * Scalar(mult)
        for s, ws in enumerate(roots):
            if s == l:
                continue
            diff = w - ws
            if diff.is_zero:
                raise NondegeneracyError(
                    f"roots {l + 1} and {s + 1} coincide")
            acc = acc - diff.reciprocal() * Scalar(2)
        # the jet is exact as a polynomial, so the full work window is
        # meaningful: valuations beyond the lift order stay visible
        out.append(Series.one(work_top, n_ram) + acc.shift(n_ram))
    return out


def xxz_residual(ls: LiftedSolution, spec: ProblemSpec) -> List[Series]:
    """Cleared two-point XXZ residuals C_l, one per root."""
    if not spec.is_difference:
        raise ValueError("XXZ residuals apply to the difference mode")
    q = spec.q
    qinv = ONE / q
    n_ram = ls.n_ram
    work_top = ls.order + WORK_GUARD * n_ram
    xs = [s.widen(work_top) for s in ls.point.x]
    roots = [-s for s in xs]
    lam_poly = spec.lam.poly()

    def eval_poly_at(coeffs, val: Series) -> Series:
        acc = Series.const(coeffs[-1], val.top, val.n_ram)
        for c in reversed(coeffs[:-1]):
            acc = acc * val + c
        return acc

    def qplus_at(val: Series) -> Series:
        acc = Series.one(val.top, val.n_ram)
        for x in xs:
            acc = acc * (val + x)
        return acc

    out = []
    for w in roots:
        term1 = qplus_at(w * q) * eval_poly_at(lam_poly.coeffs, w * qinv)
        term2 = qplus_at(w * qinv) * eval_poly_at(lam_poly.coeffs, w)
        out.append(term1 + term2.shift(n_ram))
    return out


def bethe_report(ls: LiftedSolution, spec: ProblemSpec) -> BetheReport:
    """Flags plus gated residuals for one lifted solution."""
    roots = _roots(ls)
    flags = nondegeneracy_check(ls, spec)
    twist = TWIST_XXZ if spec.is_difference else TWIST_GAUDIN
    q_window = spec.unity_check_bound() if spec.is_difference else None
    if not all(flags.values()) or spec.m == 0:
        residuals = () if spec.m == 0 and all(flags.values()) else None
        vals = () if residuals == () else None
        return BetheReport(roots=roots, twist=twist, flags=flags,
                           q_string_form=q_string_decomposition(spec),
                           residuals=residuals, residual_valuations=vals,
                           q_window=q_window)
    res = (xxz_residual(ls, spec) if spec.is_difference
           else gaudin_residual(ls, spec))
    vals = tuple(r.valuation() for r in res)
    return BetheReport(roots=roots, twist=twist, flags=flags,
                       q_string_form=q_string_decomposition(spec),
                       residuals=tuple(res), residual_valuations=vals,
                       q_window=q_window)
