"""Problem data and the finite/infinite coefficient systems.

The rank-one differential system compares z-coefficients of

    q+(z) q-(z) + t W(q+, q-)(z) - Lambda(z),

and the difference system the cleared form

    q^m A(z) - t q^n B(z) - (q^m - t q^n) Lambda(z),
    A(z) = prod(z + x_i/q) prod(z + y_j),
    B(z) = prod(z + x_i) prod(z + y_j/q).

The clearing factor q^m - t q^n is a unit at t = 0, so vanishing orders
are unchanged.  Residuals are always assembled from polynomial products
with series coefficients, never from pre-expanded multivariate formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .linalg import matrix_rank
from .poly import Poly, poly_from_shifts
from .scalar import Scalar, ZERO, ONE
from .series import Series


class SizeCapExceededError(ValueError):
    """Symbolic expansion requested above the configured variable cap."""


class SpecValidationError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# problem data


@dataclass(frozen=True)
class MasterData:
    """The monic master polynomial, stored as shift/multiplicity pairs.

    Lambda(z) = prod_k (z + a_k)^{m_k}; d_k is the coefficient of
    z^{deg - k}, recomputed from the shifts (no redundant storage).
    """

    shifts: Tuple[Tuple[Scalar, int], ...]

    def __post_init__(self):
        seen = set()
        for a, mult in self.shifts:
            if mult < 1:
                raise SpecValidationError("bad_multiplicity",
                                          "multiplicities must be positive")
            if a in seen:
                raise SpecValidationError("repeated_shift",
                                          f"shift {a} listed twice")
            seen.add(a)
        canon = tuple(sorted(self.shifts, key=lambda p: p[0].sort_key()))
        object.__setattr__(self, "shifts", canon)

    @property
    def degree(self) -> int:
        return sum(mult for _, mult in self.shifts)

    def root_shift_multiset(self) -> List[Scalar]:
        """All shifts with multiplicity, sorted."""
        out: List[Scalar] = []
        for a, mult in self.shifts:
            out.extend([a] * mult)
        return out

    def poly(self) -> Poly:
        return poly_from_shifts(self.root_shift_multiset())

    def d(self, k: int) -> Scalar:
        """Coefficient of z^{deg-k} in Lambda; d(0) = 1."""
        return self.poly().coeff(self.degree - k)

    def nonzero_at_origin(self) -> bool:
        return all(not a.is_zero for a, _ in self.shifts)

    def to_json(self):
        return {"shifts": [[a.to_json(), mult] for a, mult in self.shifts]}

    @staticmethod
    def from_json(obj) -> "MasterData":
        return MasterData(tuple((Scalar.from_json(a), int(mult))
                                for a, mult in obj["shifts"]))


MODES = ("qq", "QQ")


@dataclass(frozen=True)
class ProblemSpec:
    """One solve instance: mode, master data, degrees, dilation, truncation."""

    mode: str
    lam: MasterData
    m: int
    n: int
    q: Optional[Scalar] = None
    K: int = 3
    n_max: Optional[int] = None
    size_cap: int = 6

    @property
    def is_difference(self) -> bool:
        return self.mode == "QQ"

    @property
    def ramification_bound(self) -> int:
        return self.n_max if self.n_max is not None else self.m + self.n

    def unity_check_bound(self) -> int:
        return 2 * (self.m + self.n) + 4

    def validate(self, require_nonzero_at_origin: bool = False) -> None:
        """Raises SpecValidationError with a machine-readable code."""
        if self.mode not in MODES:
            raise SpecValidationError("bad_mode", f"mode must be one of {MODES}")
        if self.m < 0 or self.n < 0:
            raise SpecValidationError("bad_degrees", "m and n must be nonnegative")
        if self.m + self.n != self.lam.degree:
            raise SpecValidationError(
                "degree_mismatch",
                f"m + n = {self.m + self.n} != deg Lambda = {self.lam.degree}")
        if self.K < 0:
            raise SpecValidationError("bad_truncation", "K must be nonnegative")
        if self.is_difference:
            if self.q is None or self.q.is_zero:
                raise SpecValidationError("bad_q", "difference mode needs q != 0")
            if self.q.abs2() == 1:
                # unit modulus: roots of unity in Q(i) are +-1, +-i; anything
                # else is checked up to the bound as a proxy
                for k in range(1, self.unity_check_bound() + 1):
                    if self.q ** k == ONE:
                        raise SpecValidationError(
                            "q_root_of_unity",
                            f"q is a {k}-th root of unity")
        elif self.q is not None:
            raise SpecValidationError("unexpected_q", "q is only valid in QQ mode")
        if require_nonzero_at_origin and not self.lam.nonzero_at_origin():
            raise SpecValidationError("lambda_root_at_origin",
                                      "Lambda(0) = 0: lifting theorems need "
                                      "a nonzero shift-free origin")

    def alpha_pole(self) -> Optional[Scalar]:
        """Pole location t = q^{m-n} of the normalization 1/(q^m - t q^n)."""
        if not self.is_difference:
            return None
        return self.q ** (self.m - self.n)

    def to_json(self):
        obj = {"mode": self.mode, "lambda": self.lam.to_json(),
               "m": self.m, "n": self.n, "K": self.K}
        if self.q is not None:
            obj["q"] = self.q.to_json()
        if self.n_max is not None:
            obj["N_max"] = self.n_max
        if self.size_cap != 6:
            obj["tropical"] = {"size_cap": self.size_cap}
        return obj

    @staticmethod
    def from_json(obj) -> "ProblemSpec":
        """Parse and structurally validate a spec object; unknown keys rejected."""
        if not isinstance(obj, dict):
            raise SpecValidationError("bad_spec", "spec must be a JSON object")
        allowed = {"mode", "lambda", "m", "n", "q", "K", "N_max", "tropical"}
        unknown = set(obj) - allowed
        if unknown:
            raise SpecValidationError(
                "unknown_key", f"unknown spec keys: {sorted(unknown)}")
        for key in ("mode", "lambda", "m", "n"):
            if key not in obj:
                raise SpecValidationError("missing_key", f"missing key {key!r}")
        lam_obj = obj["lambda"]
        if not isinstance(lam_obj, dict) or set(lam_obj) != {"shifts"}:
            raise SpecValidationError(
                "bad_lambda", "lambda must be an object with a 'shifts' list")
        lam = MasterData.from_json(lam_obj)
        size_cap = 6
        if "tropical" in obj:
            trop = obj["tropical"]
            if not isinstance(trop, dict) or set(trop) - {"size_cap"}:
                raise SpecValidationError(
                    "bad_tropical", "tropical accepts only 'size_cap'")
            if "size_cap" in trop:
                size_cap = int(trop["size_cap"])
        spec = ProblemSpec(
            mode=str(obj["mode"]),
            lam=lam,
            m=int(obj["m"]),
            n=int(obj["n"]),
            q=Scalar.from_json(obj["q"]) if "q" in obj else None,
            K=int(obj.get("K", 3)),
            n_max=int(obj["N_max"]) if "N_max" in obj else None,
            size_cap=size_cap)
        spec.validate()
        return spec


@dataclass(frozen=True)
class CandidatePoint:
    """Series values for the unknowns (x_1..x_m, y_1..y_n)."""

    x: Tuple[Series, ...]
    y: Tuple[Series, ...]

    def __post_init__(self):
        entries = self.x + self.y
        if not entries:
            raise ValueError("empty candidate point")
        n_ram = entries[0].n_ram
        top = entries[0].top
        for s in entries:
            if s.n_ram != n_ram or s.top != top:
                raise ValueError("candidate entries must share (N, window)")

    @property
    def n_ram(self) -> int:
        return (self.x + self.y)[0].n_ram

    @property
    def top(self) -> int:
        return (self.x + self.y)[0].top

    @staticmethod
    def from_scalars(x0: Sequence[Scalar], y0: Sequence[Scalar],
                     top: int, n_ram: int = 1) -> "CandidatePoint":
        return CandidatePoint(
            tuple(Series.const(v, top, n_ram) for v in x0),
            tuple(Series.const(v, top, n_ram) for v in y0))

    def widen(self, new_top: int) -> "CandidatePoint":
        return CandidatePoint(tuple(s.widen(new_top) for s in self.x),
                              tuple(s.widen(new_top) for s in self.y))

    def truncate(self, new_top: int) -> "CandidatePoint":
        return CandidatePoint(tuple(s.truncate(new_top) for s in self.x),
                              tuple(s.truncate(new_top) for s in self.y))


# ---------------------------------------------------------------------------
# polynomials in z with Series coefficients (plain lists, lowest degree first)


def _sp_mul(a: List[Series], b: List[Series]) -> List[Series]:
    if not a or not b:
        return []
    out = [None] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            p = ai * bj
            out[i + j] = p if out[i + j] is None else out[i + j] + p
    return out


def _sp_from_shifts(shifts: Sequence[Series], top: int, n_ram: int) -> List[Series]:
    p = [Series.one(top, n_ram)]
    for s in shifts:
        p = _sp_mul(p, [s, Series.one(top, n_ram)])
    return p


def _sp_derivative(p: List[Series]) -> List[Series]:
    return [p[k] * k for k in range(1, len(p))]


def plus_poly(point: CandidatePoint) -> List[Series]:
    """q+(z) = prod(z + x_i) with series coefficients, lowest degree first."""
    return _sp_from_shifts(point.x, point.top, point.n_ram)


def minus_poly(point: CandidatePoint) -> List[Series]:
    return _sp_from_shifts(point.y, point.top, point.n_ram)


# ---------------------------------------------------------------------------
# residuals


def evaluate_qq_residual(p: CandidatePoint, spec: ProblemSpec) -> List[Series]:
    """Components f_1..f_{m+n}: z-coefficients of q+q- + t W(q+,q-) - Lambda."""
    if spec.is_difference:
        raise ValueError("qq residual requested for a QQ-mode spec")
    return _qq_residual(p, spec.lam)


def _qq_residual(p: CandidatePoint, lam: MasterData) -> List[Series]:
    n_ram, top = p.n_ram, p.top
    qp = _sp_from_shifts(p.x, top, n_ram)
    qm = _sp_from_shifts(p.y, top, n_ram)
    prod = _sp_mul(qp, qm)
    wr = _sp_sub(_sp_mul(qp, _sp_derivative(qm)), _sp_mul(qm, _sp_derivative(qp)))
    deg = lam.degree
    lam_poly = lam.poly()
    out = []
    for k in range(1, deg + 1):
        e = deg - k
        comp = prod[e]
        if e < len(wr):
            comp = comp + wr[e].shift(n_ram)  # multiply by t = s^N exactly
        comp = comp - lam_poly.coeff(e)
        out.append(comp)
    return out


def _sp_sub(a: List[Series], b: List[Series]) -> List[Series]:
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        if k < len(a) and k < len(b):
            out.append(a[k] - b[k])
        elif k < len(a):
            out.append(a[k])
        else:
            out.append(-b[k])
    return out


def evaluate_QQ_residual(p: CandidatePoint, spec: ProblemSpec) -> List[Series]:
    """Cleared components g~_1..g~_{m+n}; vanishing matches the uncleared form."""
    if not spec.is_difference:
        raise ValueError("QQ residual requested for a qq-mode spec")
    if spec.q is None or spec.q.is_zero:
        raise ValueError("QQ residual needs q != 0")
    q = spec.q
    n_ram, top = p.n_ram, p.top
    qinv = ONE / q
    xs_over_q = tuple(s * qinv for s in p.x)
    ys_over_q = tuple(s * qinv for s in p.y)
    a_poly = _sp_mul(_sp_from_shifts(xs_over_q, top, n_ram),
                     _sp_from_shifts(p.y, top, n_ram))
    b_poly = _sp_mul(_sp_from_shifts(p.x, top, n_ram),
                     _sp_from_shifts(ys_over_q, top, n_ram))
    qm_pow = q ** spec.m
    qn_pow = q ** spec.n
    deg = spec.lam.degree
    lam_poly = spec.lam.poly()
    out = []
    for k in range(1, deg + 1):
        e = deg - k
        d_k = lam_poly.coeff(e)
        comp = (a_poly[e] * qm_pow) - (b_poly[e] * qn_pow).shift(n_ram)
        comp = comp - d_k * qm_pow
        comp = comp + Series.const(d_k * qn_pow, top, n_ram).shift(n_ram)
        out.append(comp)
    return out


def evaluate_residual(p: CandidatePoint, spec: ProblemSpec) -> List[Series]:
    if spec.is_difference:
        return evaluate_QQ_residual(p, spec)
    return evaluate_qq_residual(p, spec)


# ---------------------------------------------------------------------------
# the t = 0 Jacobian


def _check_base_solution(x0: Sequence[Scalar], y0: Sequence[Scalar],
                         spec: ProblemSpec) -> List[Scalar]:
    """Verify the infinite-system identity; returns the Jacobian shift list."""
    lam_poly = spec.lam.poly()
    if spec.is_difference:
        u = [v / spec.q for v in x0] + list(y0)
    else:
        u = list(x0) + list(y0)
    if poly_from_shifts(u) != lam_poly:
        raise ValueError("point is not a solution of the infinite system")
    return u


def jacobian_at_zero(sol, spec: ProblemSpec) -> Tuple[List[List[Scalar]], int]:
    """Exact t=0 derivative matrix of the coefficient system, with its rank.

    Differential mode: column j holds the z-coefficients of
    Lambda(z)/(z + b_j) for the concatenated shifts b.  Difference mode:
    the gradient of e_k(x/q, y) - d_k, which is the same matrix in the
    variables u = (x/q, y) with the x-columns scaled by 1/q.
    """
    x0, y0 = list(sol.x0), list(sol.y0)
    u = _check_base_solution(x0, y0, spec)
    lam_poly = spec.lam.poly()
    deg = spec.lam.degree
    cols = []
    for j, b in enumerate(u):
        quot = lam_poly.divexact(Poly((b, ONE)))
        col = [quot.coeff(deg - k) for k in range(1, deg + 1)]
        if spec.is_difference and j < spec.m:
            col = [c / spec.q for c in col]
        cols.append(col)
    matrix = [[cols[j][i] for j in range(deg)] for i in range(deg)]
    return matrix, matrix_rank(matrix, ZERO)


def jacobian_shift_list(sol, spec: ProblemSpec) -> List[Scalar]:
    """The multiset whose distinctness controls the t=0 Jacobian rank."""
    return _check_base_solution(list(sol.x0), list(sol.y0), spec)


# ---------------------------------------------------------------------------
# symbolic supports for the tropical engine


def _scalar_to_sympy(c: Scalar):
    import sympy as sp
    v = sp.Rational(c.re.numerator, c.re.denominator)
    if c.im != 0:
        v = v + sp.I * sp.Rational(c.im.numerator, c.im.denominator)
    return v


def _sympy_to_scalar(v) -> Scalar:
    import sympy as sp
    v = sp.expand(v)
    re, im = v.as_real_imag()
    re, im = sp.Rational(re), sp.Rational(im)
    return Scalar(Fraction(re.p, re.q), Fraction(im.p, im.q))


def symbolic_support(spec: ProblemSpec):
    """Full multivariate supports of the residual components.

    Returns one TropicalSupport per component k = 1..m+n: the exponent
    vectors in (x_1..x_m, y_1..y_n) with the t-valuation and exact value
    of each monomial's coefficient.  Genuine symbolic expansion with
    indeterminate shifts; cancelling monomials drop out automatically.
    """
    import sympy as sp
    from .tropical import TropicalSupport

    m, n = spec.m, spec.n
    dim = m + n
    if dim > spec.size_cap:
        raise SizeCapExceededError(
            f"m + n = {dim} exceeds the symbolic size cap {spec.size_cap}")
    z, t = sp.symbols("z t")
    xs = sp.symbols(f"x1:{m + 1}") if m else ()
    ys = sp.symbols(f"y1:{n + 1}") if n else ()
    lam_expr = sp.prod(
        (z + _scalar_to_sympy(a)) ** mult for a, mult in spec.lam.shifts)
    if spec.is_difference:
        qs = _scalar_to_sympy(spec.q)
        a_expr = sp.prod(z + xi / qs for xi in xs) * sp.prod(z + yj for yj in ys)
        b_expr = sp.prod(z + xi for xi in xs) * sp.prod(z + yj / qs for yj in ys)
        expr = qs ** m * a_expr - t * qs ** n * b_expr \
            - (qs ** m - t * qs ** n) * lam_expr
    else:
        qp = sp.prod(z + xi for xi in xs)
        qm = sp.prod(z + yj for yj in ys)
        expr = qp * qm + t * (qp * sp.diff(qm, z) - qm * sp.diff(qp, z)) - lam_expr
    poly_z = sp.Poly(sp.expand(expr), z)
    gens = tuple(xs) + tuple(ys) + (t,)
    supports = []
    for k in range(1, dim + 1):
        comp = poly_z.coeff_monomial(z ** (dim - k))
        terms = {}
        if comp != 0:
            pk = sp.Poly(sp.expand(comp), *gens)
            for mono, coeff in pk.terms():
                u = mono[:dim]
                tdeg = mono[dim]
                terms.setdefault(u, {})[tdeg] = coeff
        items = []
        for u, by_t in sorted(terms.items()):
            vals = sorted(d for d, c in by_t.items() if c != 0)
            if not vals:
                continue
            v = vals[0]
            items.append((tuple(u), Fraction(v), _sympy_to_scalar(by_t[v])))
        supports.append(TropicalSupport(tuple(items)))
    return supports
