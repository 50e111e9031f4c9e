from fractions import Fraction

import pytest

from qqsystems.scalar import Scalar, ZERO, ONE
from qqsystems.series import Series
from qqsystems.systems import MasterData, ProblemSpec
from qqsystems.infinite import enumerate_infinite_solutions
from qqsystems.lifting import lift_newton, lift_ramified, LiftedSolution
from qqsystems.bethe import (bethe_report, nondegeneracy_check,
                             gaudin_residual, xxz_residual,
                             UndecidableQDistinctnessError,
                             TWIST_GAUDIN, TWIST_XXZ)


def master(*shifts):
    return MasterData(tuple((Scalar(a), m) for a, m in shifts))


def qq_spec(shifts, m, n, K=4):
    return ProblemSpec(mode="qq", lam=master(*shifts), m=m, n=n, K=K)


def QQ_spec(shifts, m, n, q, K=3):
    return ProblemSpec(mode="QQ", lam=master(*shifts), m=m, n=n,
                       q=Scalar(q), K=K)


def closed_form_lift():
    spec = qq_spec([(1, 1), (2, 1)], 1, 1, K=4)
    return lift_newton(enumerate_infinite_solutions(spec)[0], spec), spec


class TestNondegeneracy:
    def test_generic_lift_passes(self):
        ls, spec = closed_form_lift()
        flags = nondegeneracy_check(ls, spec)
        assert flags == {"simple_zeros": True, "disjoint_from_lambda": True}

    def test_double_branch_zero_correction_fails_disjointness(self):
        # the constant branch (1, 1) of (z+1)^2 sits on a Lambda zero
        spec = qq_spec([(1, 2)], 1, 1, K=3)
        branches = lift_ramified(enumerate_infinite_solutions(spec)[0], spec)
        const = [b for b in branches if b.point.x[0].coeff(1) == ZERO][0]
        flags = nondegeneracy_check(const, spec)
        assert not flags["disjoint_from_lambda"]
        rep = bethe_report(const, spec)
        assert rep.residuals is None  # gated

    def test_moving_branch_passes(self):
        spec = qq_spec([(1, 2)], 1, 1, K=3)
        branches = lift_ramified(enumerate_infinite_solutions(spec)[0], spec)
        moving = [b for b in branches if b.point.x[0].coeff(1) != ZERO][0]
        flags = nondegeneracy_check(moving, spec)
        assert all(flags.values())

    def test_q_distinct_collision(self):
        # q = 2, root at -1 (x = 1), Lambda zero at -2: 2*(-1) = -2
        spec = QQ_spec([(2, 1), (8, 1)], 1, 1, 2, K=2)
        # construct a constant jet x = 1 directly (roots at -1)
        x = Series.from_t_coeffs([Scalar(1), ZERO, ZERO])
        y = Series.from_t_coeffs([Scalar(4), ZERO, ZERO])
        from qqsystems.systems import CandidatePoint
        from qqsystems.infinite import InfiniteSolution
        point = CandidatePoint((x,), (y,))
        base = InfiniteSolution(x0=(Scalar(1),), y0=(Scalar(4),),
                                l=2, tier="generic")
        ls = LiftedSolution(point=point, base=base, alpha=None,
                            residual_valuation=Fraction(0))
        flags = nondegeneracy_check(ls, spec)
        assert not flags["q_distinct"]

    def test_q_unit_modulus_undecidable(self):
        # q = (3+4i)/5 has |q| = 1 but is not a root of unity
        q = Scalar(Fraction(3, 5), Fraction(4, 5))
        spec = ProblemSpec(mode="QQ", lam=master((1, 1), (2, 1)),
                           m=1, n=1, q=q, K=2)
        ls = lift_newton(enumerate_infinite_solutions(spec)[0], spec)
        with pytest.raises(UndecidableQDistinctnessError):
            nondegeneracy_check(ls, spec)


class TestGaudin:
    def test_closed_form_vanishes_through_k(self):
        ls, spec = closed_form_lift()
        res = gaudin_residual(ls, spec)
        assert len(res) == 1
        val = res[0].valuation()
        assert val is None or val > Fraction(4)

    def test_truncated_lift_partial_vanishing(self):
        ls, spec = closed_form_lift()
        res = gaudin_residual(ls.truncate(1, spec), spec)[0]
        val = res.valuation()
        assert val is not None
        assert Fraction(1) <= val < Fraction(3)

    def test_exact_branch_residual_identically_zero(self):
        # (1+2t, 1-2t) solves the (z+1)^2 system exactly; its Gaudin
        # residual telescopes to zero at every computed order
        spec = qq_spec([(1, 2)], 1, 1, K=3)
        branches = lift_ramified(enumerate_infinite_solutions(spec)[0], spec)
        moving = [b for b in branches if b.point.x[0].coeff(1) != ZERO][0]
        res = gaudin_residual(moving, spec)[0]
        assert res.valuation() is None

    def test_mode_guard(self):
        spec = QQ_spec([(1, 1), (2, 1)], 1, 1, 3)
        ls = lift_newton(enumerate_infinite_solutions(spec)[0], spec)
        with pytest.raises(ValueError):
            gaudin_residual(ls, spec)

    def test_relabel_invariance(self):
        # two-root instance: residual multiset does not depend on ordering
        spec = qq_spec([(1, 1), (2, 1), (3, 1)], 2, 1, K=3)
        base = enumerate_infinite_solutions(spec)[0]
        ls = lift_newton(base, spec)
        vals = sorted(str(r.valuation()) for r in gaudin_residual(ls, spec))
        swapped = LiftedSolution(
            point=type(ls.point)((ls.point.x[1], ls.point.x[0]), ls.point.y),
            base=base, alpha=None,
            residual_valuation=ls.residual_valuation)
        vals2 = sorted(str(r.valuation())
                       for r in gaudin_residual(swapped, spec))
        assert vals == vals2


class TestXXZ:
    def test_constant_term_vanishes(self):
        # base x = q a: Lambda(w/q) = Lambda(-a) = 0 kills the t=0 term
        spec = QQ_spec([(1, 1), (2, 1)], 1, 1, 3)
        ls = lift_newton(enumerate_infinite_solutions(spec)[0], spec)
        res = xxz_residual(ls, spec)[0]
        assert res.coeff(0) == ZERO

    def test_order_k_lift_valuation(self):
        spec = QQ_spec([(1, 1), (2, 1)], 1, 1, 3, K=3)
        for base in enumerate_infinite_solutions(spec):
            ls = lift_newton(base, spec)
            res = xxz_residual(ls, spec)[0]
            val = res.valuation()
            assert val is None or val >= Fraction(spec.K)

    def test_two_point_form_matches_literal_quotient(self):
        # identity of rational functions in (w, t): dividing the cleared
        # two-point form C(w) = Q+(qw) Lambda(w/q) + t Q+(w/q) Lambda(w)
        # by t * Q+(w/q) * Lambda(w/q) yields the literal product form
        #   zeta^2 q^m prod_s (qw - w_s)/(w - q w_s)
        #     + q^{m+n} prod_p (w - q^{1-r_p} z_p)/(w - q z_p)
        # for Lambda given as q-strings (here two strings of length 1)
        import sympy as sp
        t, w = sp.symbols("t w")
        q = sp.Integer(3)
        spec = QQ_spec([(1, 1), (2, 1)], 1, 1, 3, K=3)
        ls = lift_newton(enumerate_infinite_solutions(spec)[0], spec)
        xjet = ls.point.x[0]
        x_expr = sum(sp.Rational(str(xjet.coeff(k).re)) * t ** k
                     for k in range(xjet.top + 1))
        w1 = -x_expr

        def lam_at(z):
            return (z + 1) * (z + 2)

        def qplus_at(z):
            return z + x_expr  # = z - w1

        zeta2 = 1 / t
        strings = [(-1, 1), (-2, 1)]  # (z_p, r_p): length-1 q-strings
        lit = zeta2 * q ** 1 * (q * w - w1) / (w - q * w1) \
            + q ** 2 * sp.prod((w - q ** (1 - r) * zp) / (w - q * zp)
                               for zp, r in strings)
        clearing = t * qplus_at(w / q) * lam_at(w / q)
        two_point = qplus_at(q * w) * lam_at(w / q) \
            + t * qplus_at(w / q) * lam_at(w)
        diff = sp.simplify(lit * clearing - two_point)
        assert diff == 0

    def test_mode_guard(self):
        ls, spec = closed_form_lift()
        with pytest.raises(ValueError):
            xxz_residual(ls, spec)


class TestReport:
    def test_gaudin_report(self):
        ls, spec = closed_form_lift()
        rep = bethe_report(ls, spec)
        assert rep.twist == TWIST_GAUDIN
        assert not rep.gated
        assert rep.q_window is None
        obj = rep.to_json()
        assert obj["flags"]["simple_zeros"] is True

    def test_xxz_report(self):
        spec = QQ_spec([(1, 1), (2, 1)], 1, 1, 3)
        ls = lift_newton(enumerate_infinite_solutions(spec)[0], spec)
        rep = bethe_report(ls, spec)
        assert rep.twist == TWIST_XXZ
        assert rep.flags["q_distinct"]
        assert rep.q_string_form
        assert rep.q_window == 2 * (spec.m + spec.n) + 4
        assert rep.residual_valuations == (Fraction(4),)
