"""Order-by-order lifting of infinite-system solutions.

Generic bases (invertible t=0 Jacobian) lift by exact Newton/Hensel
iteration: each order solves J0 * c_k = -defect_k over Q(i).  Degenerate
bases go through a ramification search: substitute t = s^N, carry the
kernel directions of the singular Jacobian as symbolic parameters, and
branch on the finitely many parameter values that keep the next orders
consistent.  Every returned branch carries an exact residual-valuation
certificate, which makes correctness independent of how the series was
found.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .infinite import InfiniteSolution
from .linalg import solve_unique
from .scalar import Scalar, ZERO, ONE
from .series import Series
from .systems import (CandidatePoint, ProblemSpec, evaluate_residual,
                      jacobian_at_zero, _scalar_to_sympy, _sympy_to_scalar)


class SingularJacobianError(ValueError):
    """lift_newton was handed a degenerate base; use lift_ramified."""


class RamificationBoundExceededError(RuntimeError):
    """No branch certified at any ramification index up to the bound."""


# extra window (in s-exponents, per unit of N) used when certifying: the
# truncated point is treated as an exact polynomial so that the residual's
# true leading order is visible slightly beyond the lift order
CERTIFY_GUARD = 2


@dataclass(frozen=True)
class LiftedSolution:
    """A truncated series solution with its residual certificate."""

    point: CandidatePoint
    base: InfiniteSolution
    alpha: Optional[Series]  # difference mode: 1/(q^m - t q^n), recomputed
    residual_valuation: Fraction

    @property
    def n_ram(self) -> int:
        return self.point.n_ram

    @property
    def order(self) -> int:
        return self.point.top

    def certified(self) -> bool:
        return self.residual_valuation >= Fraction(self.order + 1, self.n_ram)

    def truncate(self, new_top: int, spec: ProblemSpec) -> "LiftedSolution":
        pt = self.point.truncate(new_top)
        alpha = _alpha_series(spec, new_top, self.n_ram)
        return LiftedSolution(point=pt, base=self.base, alpha=alpha,
                              residual_valuation=certify_residual_point(pt, spec))

    def to_json(self):
        return {"N": self.n_ram, "order": self.order,
                "x": [s.to_json() for s in self.point.x],
                "y": [s.to_json() for s in self.point.y],
                "alpha": self.alpha.to_json() if self.alpha else None,
                "residual_valuation": str(self.residual_valuation),
                "base": self.base.to_json()}


def _alpha_series(spec: ProblemSpec, top: int, n_ram: int) -> Optional[Series]:
    if not spec.is_difference:
        return None
    qm = spec.q ** spec.m
    qn = spec.q ** spec.n
    denom = Series.const(qm, top, n_ram) - Series.const(qn, top, n_ram).shift(n_ram)
    return denom.reciprocal()


def certify_residual_point(point: CandidatePoint, spec: ProblemSpec) -> Fraction:
    """Exact minimum valuation of the residual of the given truncated point.

    The point is widened (its unknown tail taken as exactly zero), so the
    value is the true valuation of the residual of the jet-as-polynomial.
    When every component vanishes through the inspected window the
    returned value is the window bound, a certified lower bound.
    """
    n_ram = point.n_ram
    eval_top = point.top + CERTIFY_GUARD * n_ram
    res = evaluate_residual(point.widen(eval_top), spec)
    best: Optional[Fraction] = None
    for comp in res:
        v = comp.valuation()
        if v is not None and (best is None or v < best):
            best = v
    if best is None:
        return Fraction(eval_top + 1, n_ram)
    return best


def certify_residual(ls: LiftedSolution, spec: ProblemSpec) -> Fraction:
    return certify_residual_point(ls.point, spec)


# ---------------------------------------------------------------------------
# generic (Newton/Hensel) path


def _cleared_jacobian(sol: InfiniteSolution, spec: ProblemSpec
                      ) -> Tuple[List[List[Scalar]], int]:
    """Jacobian of the residual actually evaluated (cleared in QQ mode)."""
    matrix, rank = jacobian_at_zero(sol, spec)
    if spec.is_difference:
        scale = spec.q ** spec.m
        matrix = [[e * scale for e in row] for row in matrix]
    return matrix, rank


def lift_newton(sol: InfiniteSolution, spec: ProblemSpec) -> LiftedSolution:
    """Unique order-K lift of a generic base (N = 1)."""
    dim = spec.m + spec.n
    matrix, rank = _cleared_jacobian(sol, spec)
    if rank < dim:
        raise SingularJacobianError(
            f"t=0 Jacobian has rank {rank} < {dim}; route this base "
            "through lift_ramified")
    K = spec.K
    coeffs = [[v] + [ZERO] * K for v in list(sol.x0) + list(sol.y0)]

    def current_point() -> CandidatePoint:
        xs = tuple(Series(1, coeffs[i]) for i in range(spec.m))
        ys = tuple(Series(1, coeffs[spec.m + j]) for j in range(spec.n))
        return CandidatePoint(xs, ys)

    for k in range(1, K + 1):
        res = evaluate_residual(current_point(), spec)
        defect = [comp.coeff(k) for comp in res]
        if all(d.is_zero for d in defect):
            continue
        corr = solve_unique(matrix, [-d for d in defect], ZERO, ONE)
        for i in range(dim):
            coeffs[i][k] = corr[i]
    point = current_point()
    return LiftedSolution(point=point, base=sol,
                          alpha=_alpha_series(spec, K, 1),
                          residual_valuation=certify_residual_point(point, spec))


# ---------------------------------------------------------------------------
# degenerate (ramified, branching) path


_MAX_BRANCHES = 256


def lift_ramified(sol: InfiniteSolution, spec: ProblemSpec,
                  n_max: Optional[int] = None) -> List[LiftedSolution]:
    """All certified branches over ramification indices 1..n_max.

    Branches found at a higher index that only use exponents divisible by
    some factor are normalized down and deduplicated, so each series
    solution appears once with its minimal ramification.
    """
    if n_max is None:
        n_max = spec.ramification_bound
    if sol.tier == "generic":
        return [lift_newton(sol, spec)]
    matrix, _ = _cleared_jacobian(sol, spec)
    found: List[LiftedSolution] = []
    seen_keys = set()
    dropped_outside_field = 0
    for n_ram in range(1, n_max + 1):
        points, dropped = _branch_search(sol, spec, matrix, n_ram)
        dropped_outside_field += dropped
        for point in points:
            point = _reduce_ramification(point)
            key = _branch_key(point)
            if key in seen_keys:
                continue
            val = certify_residual_point(point, spec)
            if val < Fraction(point.top + 1, point.n_ram):
                continue
            seen_keys.add(key)
            found.append(LiftedSolution(
                point=point, base=sol,
                alpha=_alpha_series(spec, point.top, point.n_ram),
                residual_valuation=val))
    if not found:
        extra = ""
        if dropped_outside_field:
            extra = (f" ({dropped_outside_field} branch(es) exist with "
                     "coefficients outside the Gaussian rationals and were "
                     "dropped; this base is not liftable in the exact field)")
        raise RamificationBoundExceededError(
            f"no branch certified for any ramification index <= {n_max}"
            + extra)
    found.sort(key=_sort_key_lifted)
    return found


def _sort_key_lifted(ls: LiftedSolution):
    return (ls.n_ram,
            tuple(tuple(c.sort_key() for c in s.coeffs) for s in ls.point.x),
            tuple(tuple(c.sort_key() for c in s.coeffs) for s in ls.point.y))


def _branch_key(point: CandidatePoint):
    xkey = tuple(sorted((s.offset,) + tuple(c.sort_key() for c in s.coeffs)
                        for s in point.x))
    ykey = tuple(sorted((s.offset,) + tuple(c.sort_key() for c in s.coeffs)
                        for s in point.y))
    return (point.n_ram, xkey, ykey)


def _reduce_ramification(point: CandidatePoint) -> CandidatePoint:
    from math import gcd
    n_ram = point.n_ram
    g = n_ram
    for s in point.x + point.y:
        for i, c in enumerate(s.coeffs):
            if not c.is_zero:
                g = gcd(g, s.offset + i)
    if g <= 1:
        return point
    new_n = n_ram // g
    new_top = point.top // g

    def reduce_series(s: Series) -> Series:
        coeffs = [ZERO] * (new_top + 1)
        for i, c in enumerate(s.coeffs):
            e = s.offset + i
            if not c.is_zero:
                coeffs[e // g] = c
        return Series(new_n, coeffs, 0)

    return CandidatePoint(tuple(reduce_series(s) for s in point.x),
                          tuple(reduce_series(s) for s in point.y))


def _branch_search(sol: InfiniteSolution, spec: ProblemSpec,
                   matrix: List[List[Scalar]], n_ram: int
                   ) -> Tuple[List[CandidatePoint], int]:
    """Symbolic order-by-order search in s (t = s^N) with kernel branching.

    The singular t=0 Jacobian is row-reduced once; at every s-order the
    zero rows of the reduced system give polynomial consistency
    constraints on the still-free kernel parameters, whose finitely many
    exact solutions are branched on.  Parameters that stay unconstrained
    through the final order are pinned to zero.
    """
    import sympy as sp

    dim = spec.m + spec.n
    k_s = spec.K * n_ram
    s = sp.Symbol("s")
    z = sp.Symbol("z")
    base = [_scalar_to_sympy(v) for v in list(sol.x0) + list(sol.y0)]

    # L * J0 = R (rref); zero rows of R yield consistency constraints
    j0 = sp.Matrix([[_scalar_to_sympy(e) for e in row] for row in matrix])
    aug = j0.row_join(sp.eye(dim))
    red, _ = aug.rref()
    r_mat = red[:, :dim]
    l_mat = red[:, dim:]
    pivot_cols = []
    zero_rows = []
    for i in range(dim):
        row_pivot = None
        for c in range(dim):
            if r_mat[i, c] != 0:
                row_pivot = c
                break
        if row_pivot is None:
            zero_rows.append(i)
        else:
            pivot_cols.append((i, row_pivot))
    free_cols = [c for c in range(dim)
                 if c not in {pc for _, pc in pivot_cols}]

    lam_expr = sp.prod(
        (z + _scalar_to_sympy(a)) ** mult for a, mult in spec.lam.shifts)

    def residual_rows(coeff_table):
        """Residual components as polynomials in s, truncated at s^k_s."""
        vals = []
        for i in range(dim):
            vals.append(base[i] + sp.Add(*[coeff_table[i][j] * s ** j
                                           for j in range(1, k_s + 1)]))
        xs = vals[:spec.m]
        ys = vals[spec.m:]
        t = s ** n_ram
        if spec.is_difference:
            qs = _scalar_to_sympy(spec.q)
            a_expr = sp.prod(z + xi / qs for xi in xs) * sp.prod(z + yj for yj in ys)
            b_expr = sp.prod(z + xi for xi in xs) * sp.prod(z + yj / qs for yj in ys)
            expr = qs ** spec.m * a_expr - t * qs ** spec.n * b_expr \
                - (qs ** spec.m - t * qs ** spec.n) * lam_expr
        else:
            qp = sp.prod(z + xi for xi in xs)
            qm = sp.prod(z + yj for yj in ys)
            expr = qp * qm + t * (qp * sp.diff(qm, z) - qm * sp.diff(qp, z)) \
                - lam_expr
        poly_z = sp.Poly(sp.expand(expr), z)
        return [poly_z.coeff_monomial(z ** (dim - k)) for k in range(1, dim + 1)]

    def defect_at(coeff_table, order):
        rows = residual_rows(coeff_table)
        return sp.Matrix([sp.expand(r).coeff(s, order) for r in rows])

    # a branch: (coeff_table, free_params)
    initial = ([[sp.Integer(0)] * (k_s + 1) for _ in range(dim)], [])
    branches = [initial]
    for order in range(1, k_s + 1):
        next_branches = []
        for coeff_table, params in branches:
            defect = defect_at(coeff_table, order)
            rhs = l_mat * (-defect)
            constraints = [sp.expand(rhs[i]) for i in zero_rows]
            for subs in _constraint_solutions(constraints, params):
                if subs is None:
                    continue
                table = [[sp.expand(e.subs(subs)) if subs else e
                          for e in row] for row in coeff_table]
                live = [p for p in params if p not in subs]
                rhs_sub = sp.Matrix([sp.expand(e.subs(subs)) if subs else e
                                     for e in rhs])
                new_params = [sp.Symbol(f"brk_{order}_{c}") for c in free_cols]
                corr = [sp.Integer(0)] * dim
                for idx, c in enumerate(free_cols):
                    corr[c] = new_params[idx]
                for i, pc in pivot_cols:
                    val = rhs_sub[i]
                    for idx, c in enumerate(free_cols):
                        val = val - r_mat[i, c] * new_params[idx]
                    corr[pc] = sp.expand(val)
                for i in range(dim):
                    table[i][order] = corr[i]
                next_branches.append((table, live + new_params))
        if len(next_branches) > _MAX_BRANCHES:
            raise RuntimeError("branch explosion in ramified lifting")
        branches = next_branches
        if not branches:
            break

    base_scalars = list(sol.x0) + list(sol.y0)
    points = []
    dropped = 0
    for coeff_table, params in branches:
        pin = {p: sp.Integer(0) for p in params}
        series_list = []
        ok = True
        for i in range(dim):
            vals = [base_scalars[i]]
            for j in range(1, k_s + 1):
                e = sp.expand(coeff_table[i][j].subs(pin))
                sc = _try_scalar(e)
                if sc is None:
                    ok = False
                    break
                vals.append(sc)
            if not ok:
                break
            series_list.append(Series(n_ram, vals, 0))
        if not ok:
            dropped += 1
            continue
        points.append(CandidatePoint(tuple(series_list[:spec.m]),
                                     tuple(series_list[spec.m:])))
    return points, dropped


def _try_scalar(expr) -> Optional[Scalar]:
    """Convert an exact sympy number to a Scalar; None outside Q(i)."""
    import sympy as sp
    if expr.free_symbols:
        return None
    re, im = sp.simplify(expr).as_real_imag()
    try:
        re_q = sp.Rational(sp.simplify(re))
        im_q = sp.Rational(sp.simplify(im))
    except (TypeError, ValueError):
        return None
    return Scalar(Fraction(re_q.p, re_q.q), Fraction(im_q.p, im_q.q))


def _constraint_solutions(constraints, params):
    """Enumerate exact solutions of the pending consistency constraints.

    Yields substitution dicts (possibly empty); yields None markers for
    inconsistent alternatives so callers can skip them.
    """
    import sympy as sp
    live = [sp.expand(c) for c in constraints]
    live = [c for c in live if c != 0]
    if not live:
        yield {}
        return
    involved = sorted({p for c in live for p in c.free_symbols},
                      key=lambda p: p.name)
    if not involved:
        # nonzero constant constraint: inconsistent
        yield None
        return
    try:
        sols = sp.solve(live, involved, dict=True)
    except NotImplementedError:
        yield None
        return
    if not sols:
        yield None
        return
    for sol_map in sols:
        clean = {}
        bad = False
        for key, val in sol_map.items():
            val = sp.expand(val)
            if val.free_symbols - set(involved):
                bad = True
                break
            clean[key] = val
        if bad:
            yield None
        else:
            yield clean
