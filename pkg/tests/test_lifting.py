from fractions import Fraction

import pytest

from qqsystems.scalar import Scalar, ZERO, ONE
from qqsystems.series import Series
from qqsystems.systems import MasterData, ProblemSpec, CandidatePoint
from qqsystems.infinite import enumerate_infinite_solutions
from qqsystems.lifting import (lift_newton, lift_ramified, certify_residual,
                               certify_residual_point, SingularJacobianError,
                               LiftedSolution)


def master(*shifts):
    return MasterData(tuple((Scalar(a), m) for a, m in shifts))


def qq_spec(shifts, m, n, K=3, n_max=None):
    return ProblemSpec(mode="qq", lam=master(*shifts), m=m, n=n, K=K,
                       n_max=n_max)


def QQ_spec(shifts, m, n, q, K=3):
    return ProblemSpec(mode="QQ", lam=master(*shifts), m=m, n=n,
                       q=Scalar(q), K=K)


def t_coeffs(series):
    return [str(series.coeff(k)) for k in range(series.top + 1)]


class TestNewton:
    def test_closed_form_quadratic(self):
        # oracle: x^2 - (3+2t)x + 3t + 2 = 0 branch through x(0) = 1
        spec = qq_spec([(1, 1), (2, 1)], 1, 1, K=4)
        base = enumerate_infinite_solutions(spec)[0]
        ls = lift_newton(base, spec)
        assert t_coeffs(ls.point.x[0]) == ["1", "1", "-1", "0", "1"]
        assert t_coeffs(ls.point.y[0]) == ["2", "-1", "1", "0", "-1"]
        assert ls.certified()

    def test_sibling_base_other_root(self):
        # the other split lifts to the second root of the same quadratic;
        # the two x-roots sum to 3 + 2t
        spec = qq_spec([(1, 1), (2, 1)], 1, 1, K=4)
        base = enumerate_infinite_solutions(spec)[1]
        ls = lift_newton(base, spec)
        assert t_coeffs(ls.point.x[0]) == ["2", "1", "1", "0", "-1"]
        assert t_coeffs(ls.point.y[0]) == ["1", "-1", "-1", "0", "1"]

    def test_singular_jacobian_rejected(self):
        spec = qq_spec([(1, 2)], 1, 1)
        base = enumerate_infinite_solutions(spec)[0]
        with pytest.raises(SingularJacobianError):
            lift_newton(base, spec)

    def test_difference_generic(self):
        spec = QQ_spec([(1, 1), (2, 1)], 1, 1, 3, K=4)
        base = enumerate_infinite_solutions(spec)[0]
        ls = lift_newton(base, spec)
        assert t_coeffs(ls.point.x[0]) == \
            ["3", "-2", "22/3", "-322/9", "5462/27"]
        assert ls.certified()
        # alpha = 1/(q^m - t q^n) = 1/(3 - 3t) = (1/3)(1 + t + t^2 + ...)
        assert t_coeffs(ls.alpha) == ["1/3"] * 5

    def test_all_generic_bases_certify(self):
        spec = qq_spec([(1, 1), (2, 1), (3, 1)], 2, 1, K=3)
        for base in enumerate_infinite_solutions(spec):
            ls = lift_newton(base, spec)
            assert ls.residual_valuation >= Fraction(spec.K + 1)


class TestCertificate:
    def test_exact_polynomial_solution_certifies_everywhere(self):
        # (1, 1) solves the (z+1)^2 system identically
        spec = qq_spec([(1, 2)], 1, 1, K=4)
        p = CandidatePoint.from_scalars([Scalar(1)], [Scalar(1)], top=4)
        val = certify_residual_point(p, spec)
        assert val > Fraction(spec.K + 1)

    def test_truncation_lowers_but_preserves_certificate(self):
        spec = qq_spec([(1, 1), (2, 1)], 1, 1, K=4)
        ls = lift_newton(enumerate_infinite_solutions(spec)[0], spec)
        ls1 = ls.truncate(1, spec)
        assert ls1.order == 1
        # truncated jet x = 1 + t: residual picks up at order 2
        assert ls1.residual_valuation == Fraction(2)
        assert ls1.certified()

    def test_base_only_jet(self):
        # order-0 jet of a generic base: residual valuation exactly 1
        spec = qq_spec([(1, 1), (2, 1)], 1, 1, K=4)
        ls = lift_newton(enumerate_infinite_solutions(spec)[0], spec)
        ls0 = ls.truncate(0, spec)
        assert ls0.residual_valuation == Fraction(1)


class TestRamified:
    def test_double_root_branches(self):
        # oracle (hand elimination): x + y = 2, xy + t(x - y) = 1 has the
        # exact polynomial solutions (1, 1) and (1 + 2t, 1 - 2t)
        spec = qq_spec([(1, 2)], 1, 1, K=4)
        base = enumerate_infinite_solutions(spec)[0]
        branches = lift_ramified(base, spec)
        assert len(branches) == 2
        keys = sorted(tuple(t_coeffs(b.point.x[0])) for b in branches)
        assert keys[0] == ("1", "0", "0", "0", "0")
        assert keys[1] == ("1", "2", "0", "0", "0")
        for b in branches:
            assert b.n_ram == 1
            # exact solutions: residual zero through the whole window
            assert b.residual_valuation > Fraction(spec.K + 1)

    def test_triple_instance_branches(self):
        # Lambda = (z+1)^2 (z+2), base x = (1,1), y = (2): complex pair
        spec = qq_spec([(1, 2), (2, 1)], 2, 1, K=3)
        base = [s for s in enumerate_infinite_solutions(spec)
                if [str(v) for v in s.x0] == ["1", "1"]][0]
        branches = lift_ramified(base, spec)
        assert len(branches) >= 1
        for b in branches:
            assert b.certified()
        # leading corrections are the conjugate pair 1 +- i
        leads = sorted(str(b.point.x[0].coeff(1)) for b in branches)
        assert any("i" in lead for lead in leads)

    def test_generic_base_delegates_to_newton(self):
        spec = qq_spec([(1, 1), (2, 1)], 1, 1, K=4)
        base = enumerate_infinite_solutions(spec)[0]
        branches = lift_ramified(base, spec)
        assert len(branches) == 1
        assert t_coeffs(branches[0].point.x[0]) == ["1", "1", "-1", "0", "1"]

    def test_difference_degenerate_outside_field(self):
        # q-collision base x0 = 3, y0 = 1 over (z+1)^2, q = 3: solving
        # x^2 (1-3t) - (6-6t) x + 9 - 3t = 0 needs sqrt(48t), so both
        # branches have sqrt(3)-coefficients outside Q(i) and the search
        # must fail loudly rather than return a wrong series
        from qqsystems.lifting import RamificationBoundExceededError
        spec = QQ_spec([(1, 2)], 1, 1, 3, K=2)
        base = enumerate_infinite_solutions(spec)[0]
        with pytest.raises(RamificationBoundExceededError) as e:
            lift_ramified(base, spec)
        assert "outside the Gaussian rationals" in str(e.value)


class TestNumericOracle:
    def test_generic_lift_agreement(self):
        from qqsystems.numeric import numeric_check
        spec = qq_spec([(1, 1), (2, 1)], 1, 1, K=4)
        ls = lift_newton(enumerate_infinite_solutions(spec)[0], spec)
        nc = numeric_check(ls, spec)
        assert nc.passed
        for err, tol in zip(nc.mismatches, nc.tolerances):
            assert err <= tol

    def test_branch_agreement(self):
        from qqsystems.numeric import numeric_check
        spec = qq_spec([(1, 2)], 1, 1, K=4)
        for b in lift_ramified(enumerate_infinite_solutions(spec)[0], spec):
            nc = numeric_check(b, spec)
            assert nc.passed

    def test_decay_exponent_of_truncation(self):
        # truncating at order 1 leaves an O(t^2) gap: slope close to 2
        from qqsystems.numeric import numeric_check
        spec = qq_spec([(1, 1), (2, 1)], 1, 1, K=4)
        ls = lift_newton(enumerate_infinite_solutions(spec)[0], spec)
        ls1 = ls.truncate(1, spec)
        nc = numeric_check(ls1, spec, samples=(1e-2, 1e-3, 1e-4))
        assert nc.decay_exponent is not None
        assert abs(nc.decay_exponent - 2.0) < 0.25
