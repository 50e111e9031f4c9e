"""Exact tropical verification: hypersurfaces, prevariety, exclusion.

The tropicalization of each coefficient polynomial is min over its
support of (coefficient valuation + w . exponent); a point lies on the
hypersurface when the minimum is attained at least twice.  The
prevariety of the system is enumerated as a finite union of polyhedral
cells, one per choice of minimizing pair for every polynomial; each
cell is an exact-rational linear system decided by simplex feasibility
and per-coordinate min/max.  On theorem instances the expected outcome
is that every feasible cell collapses to the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .lp import F0, F1, feasible
from .scalar import Scalar
from .systems import ProblemSpec, SpecValidationError


@dataclass(frozen=True)
class TropicalSupport:
    """Support of one polynomial: (exponent vector, valuation, coefficient)."""

    items: Tuple[Tuple[Tuple[int, ...], Fraction, Scalar], ...]

    def __post_init__(self):
        if not self.items:
            raise ValueError("empty tropical support")
        seen = set()
        for u, _, _ in self.items:
            if u in seen:
                raise ValueError(f"repeated exponent vector {u}")
            seen.add(u)

    @property
    def dim(self) -> int:
        return len(self.items[0][0])

    def values_at(self, w: "TropicalPoint") -> List[Fraction]:
        return [v + sum((Fraction(ui) * wi for ui, wi in zip(u, w.w)), F0)
                for u, v, _ in self.items]


@dataclass(frozen=True)
class TropicalPoint:
    w: Tuple[Fraction, ...]

    @staticmethod
    def of(*coords) -> "TropicalPoint":
        return TropicalPoint(tuple(Fraction(c) for c in coords))


@dataclass(frozen=True)
class TropicalCell:
    """One choice of minimizing pair per polynomial, as a linear system.

    Constraint semantics: for every polynomial k with chosen items (a, b),
    val_a(w) = val_b(w) <= val_c(w) for all support items c.
    """

    pairs: Tuple[Tuple[int, int], ...]  # item indices per polynomial
    a_eq: Tuple[Tuple[Fraction, ...], ...]
    b_eq: Tuple[Fraction, ...]
    a_ub: Tuple[Tuple[Fraction, ...], ...]
    b_ub: Tuple[Fraction, ...]


@dataclass(frozen=True)
class PrevarietyResult:
    cells: Tuple[TropicalCell, ...]
    is_origin_only: bool
    points_bounded: bool
    witness: Optional[TropicalPoint]  # a nonzero prevariety point, when found

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    def to_json(self):
        return {"cell_count": self.cell_count,
                "is_origin_only": self.is_origin_only,
                "points_bounded": self.points_bounded,
                "witness": [str(c) for c in self.witness.w]
                if self.witness else None}


def hypersurface_contains(s: TropicalSupport, w: TropicalPoint) -> bool:
    """True iff the tropical minimum is attained by at least two items."""
    vals = s.values_at(w)
    lo = min(vals)
    return sum(1 for v in vals if v == lo) >= 2


def exclusion_witness(spec: ProblemSpec, w: TropicalPoint) -> Optional[int]:
    """Smallest k (1-based) whose hypersurface excludes w; None if none does."""
    from .systems import symbolic_support
    for k, s in enumerate(symbolic_support(spec), start=1):
        if not hypersurface_contains(s, w):
            return k
    return None


def check_theorem_hypothesis(spec: ProblemSpec) -> None:
    """All master coefficients d_k must be nonzero (theorem-verification mode)."""
    for k in range(1, spec.lam.degree + 1):
        if spec.lam.d(k).is_zero:
            raise SpecValidationError(
                f"zero_coefficient d_{k}",
                f"master coefficient d_{k} vanishes; theorem hypotheses "
                "require all d_k nonzero")


class _AffineState:
    """Solution set of the accumulated equalities, parametrized exactly.

    w = w0 + sum_j p_j * basis[j]; pending inequalities live in the free
    parameters p.  Adding an equality either detects inconsistency,
    eliminates one parameter (substituting into everything), or is
    redundant.  Inequalities that reduce to constants are checked on the
    spot, so LP is only ever needed for genuinely underdetermined cells.
    """

    __slots__ = ("w0", "basis", "ineqs")

    def __init__(self, w0, basis, ineqs):
        self.w0 = w0          # list of dim Fractions
        self.basis = basis    # list of columns, each a list of dim Fractions
        self.ineqs = ineqs    # list of (g: tuple of r Fractions, h: Fraction)

    @staticmethod
    def full(dim: int) -> "_AffineState":
        basis = [[F1 if i == j else F0 for i in range(dim)] for j in range(dim)]
        return _AffineState([F0] * dim, basis, [])

    def copy(self) -> "_AffineState":
        return _AffineState(list(self.w0), [list(c) for c in self.basis],
                            list(self.ineqs))

    def _to_params(self, row, rhs):
        """Rewrite row.w (<=|=) rhs in the free parameters."""
        g = tuple(sum((row[i] * col[i] for i in range(len(row))), F0)
                  for col in self.basis)
        h = rhs - sum((row[i] * self.w0[i] for i in range(len(row))), F0)
        return g, h

    def add_equality(self, row, rhs) -> bool:
        """False on inconsistency (with the equalities or a constant ineq)."""
        g, h = self._to_params(row, rhs)
        piv = next((j for j, v in enumerate(g) if v != 0), None)
        if piv is None:
            return h == 0
        coef = g[piv]
        pivcol = self.basis[piv]
        shift = h / coef
        dim = len(self.w0)
        self.w0 = [self.w0[i] + shift * pivcol[i] for i in range(dim)]
        new_basis = []
        keep = [j for j in range(len(self.basis)) if j != piv]
        for j in keep:
            f = g[j] / coef
            col = self.basis[j]
            new_basis.append([col[i] - f * pivcol[i] for i in range(dim)])
        self.basis = new_basis
        new_ineqs = []
        for gi, hi in self.ineqs:
            f = gi[piv] / coef
            g2 = tuple(gi[j] - f * g[j] for j in keep)
            h2 = hi - f * h
            if any(v != 0 for v in g2):
                new_ineqs.append((g2, h2))
            elif h2 < 0:
                return False
        self.ineqs = new_ineqs
        return True

    def add_inequality(self, row, rhs) -> bool:
        """False when the inequality is constant-infeasible."""
        g, h = self._to_params(row, rhs)
        if all(v == 0 for v in g):
            return h >= 0
        if (g, h) not in self.ineqs:
            self.ineqs.append((g, h))
        return True

    @property
    def rank_free(self) -> int:
        return len(self.basis)

    def lp_feasible(self) -> Optional[Tuple[Fraction, ...]]:
        """A feasible parameter point, or None (trivial when no inequalities)."""
        if not self.ineqs:
            return tuple([F0] * self.rank_free)
        a_ub = [list(g) for g, _ in self.ineqs]
        b_ub = [h for _, h in self.ineqs]
        return feasible(a_ub, b_ub, dim=self.rank_free)

    def point_at(self, p) -> Tuple[Fraction, ...]:
        dim = len(self.w0)
        return tuple(self.w0[i] +
                     sum((p[j] * self.basis[j][i] for j in range(len(p))), F0)
                     for i in range(dim))


def _pair_constraints(s: TropicalSupport, a: int, b: int):
    ua, va, _ = s.items[a]
    ub, vb, _ = s.items[b]
    eq = (tuple(Fraction(i - j) for i, j in zip(ua, ub)), vb - va)
    ubs = []
    for c, (uc, vc, _) in enumerate(s.items):
        if c in (a, b):
            continue
        ubs.append((tuple(Fraction(i - j) for i, j in zip(ua, uc)), vc - va))
    return eq, ubs


def prevariety(spec: ProblemSpec, theorem_mode: bool = True) -> PrevarietyResult:
    """Enumerate the prevariety cells and decide whether their union is {0}."""
    from .systems import symbolic_support
    if theorem_mode:
        check_theorem_hypothesis(spec)
    supports = symbolic_support(spec)
    dim = spec.m + spec.n
    # smallest supports first for maximal pruning; remember original order
    order = sorted(range(len(supports)), key=lambda k: len(supports[k].items))

    cells: List[TropicalCell] = []
    origin_only = True
    bounded = True
    witness: Optional[TropicalPoint] = None

    def record_cell(pairs, eqs, ubs):
        cell_pairs = [None] * len(order)
        for lvl, k in enumerate(order):
            cell_pairs[k] = pairs[lvl]
        cells.append(TropicalCell(
            pairs=tuple(cell_pairs),
            a_eq=tuple(r for r, _ in eqs), b_eq=tuple(h for _, h in eqs),
            a_ub=tuple(r for r, _ in ubs), b_ub=tuple(h for _, h in ubs)))

    def leaf(state: _AffineState, pairs, eqs, ubs):
        nonlocal origin_only, bounded, witness
        record_cell(pairs, eqs, ubs)
        r = state.rank_free
        if r == 0:
            w = tuple(state.w0)
            if any(v != 0 for v in w):
                origin_only = False
                if witness is None:
                    witness = TropicalPoint(w)
            return
        a_ub = [list(g) for g, _ in state.ineqs]
        b_ub = [h for _, h in state.ineqs]
        target = [F0] * dim
        for i in range(dim):
            obj = [state.basis[j][i] for j in range(r)]
            if all(v == 0 for v in obj):
                if state.w0[i] != 0:
                    origin_only = False
                    target[i] = state.w0[i]
                continue
            # min/max of w_i = w0_i + obj . p over the cell
            res_min = lp_solve_obj(obj, a_ub, b_ub)
            res_max = lp_solve_obj([-v for v in obj], a_ub, b_ub)
            lo = state.w0[i] + res_min if res_min is not None else None
            hi = state.w0[i] - res_max if res_max is not None else None
            if lo is None or hi is None:
                bounded = False
                origin_only = False
                target[i] = F1 if hi is None else -F1
            elif lo < 0:
                origin_only = False
                target[i] = lo
            elif hi > 0:
                origin_only = False
                target[i] = hi
        if witness is None and any(v != 0 for v in target):
            extra_a = list(a_ub)
            extra_b = list(b_ub)
            for i, v in enumerate(target):
                obj = [state.basis[j][i] for j in range(r)]
                if v > 0:
                    bound = v if v != F1 else F1
                    extra_a.append([-o for o in obj])
                    extra_b.append(state.w0[i] - bound)
                elif v < 0:
                    extra_a.append(list(obj))
                    extra_b.append(v - state.w0[i])
            pt = feasible(extra_a, extra_b, dim=r)
            if pt is not None:
                w = state.point_at(pt)
                if any(c != 0 for c in w):
                    witness = TropicalPoint(w)

    def dfs(level, state: _AffineState, pairs, eqs, ubs):
        if level == len(order):
            leaf(state, pairs, eqs, ubs)
            return
        s = supports[order[level]]
        nitems = len(s.items)
        for a in range(nitems):
            for b in range(a + 1, nitems):
                eq, pair_ubs = _pair_constraints(s, a, b)
                st = state.copy()
                if not st.add_equality(eq[0], eq[1]):
                    continue
                ok = True
                for row, h in pair_ubs:
                    if not st.add_inequality(row, h):
                        ok = False
                        break
                if not ok:
                    continue
                if st.rank_free > 0 and st.ineqs and st.lp_feasible() is None:
                    continue
                dfs(level + 1, st, pairs + [(a, b)],
                    eqs + [eq], ubs + pair_ubs)

    dfs(0, _AffineState.full(dim), [], [], [])
    if not cells:
        origin_only = False  # empty prevariety: the theorems expect {0}
    return PrevarietyResult(cells=tuple(cells), is_origin_only=origin_only,
                            points_bounded=bounded, witness=witness)


def lp_solve_obj(obj, a_ub, b_ub) -> Optional[Fraction]:
    """Minimum of obj . p subject to a_ub p <= b_ub; None when unbounded."""
    from .lp import lp_solve, OPTIMAL
    res = lp_solve(obj, a_ub, b_ub)
    return res.objective if res.status == OPTIMAL else None
