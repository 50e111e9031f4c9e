from fractions import Fraction

import pytest

from qqsystems.scalar import Scalar, ONE
from qqsystems.systems import MasterData, ProblemSpec, SpecValidationError
from qqsystems.tropical import (TropicalSupport, TropicalPoint,
                                hypersurface_contains, prevariety,
                                exclusion_witness, check_theorem_hypothesis)

F = Fraction


def master(*shifts):
    return MasterData(tuple((Scalar(a), m) for a, m in shifts))


def qq_spec(shifts, m, n):
    return ProblemSpec(mode="qq", lam=master(*shifts), m=m, n=n)


def QQ_spec(shifts, m, n, q):
    return ProblemSpec(mode="QQ", lam=master(*shifts), m=m, n=n, q=Scalar(q))


def support(items):
    return TropicalSupport(tuple(
        (tuple(u), F(v), Scalar(1)) for u, v in items))


F2_SUPPORT = support([((1, 1), 0), ((1, 0), 1), ((0, 1), 1), ((0, 0), 0)])
F1_SUPPORT = support([((1, 0), 0), ((0, 1), 0), ((0, 0), 0)])


class TestHypersurface:
    def test_origin_in_f2(self):
        assert hypersurface_contains(F2_SUPPORT, TropicalPoint.of(0, 0))

    def test_negative_diagonal_excluded(self):
        # at w = (-1,-1) the xy item gives -2, uniquely minimal
        assert not hypersurface_contains(F2_SUPPORT, TropicalPoint.of(-1, -1))

    def test_f1_ties_regardless_of_y(self):
        assert hypersurface_contains(F1_SUPPORT, TropicalPoint.of(0, 5))

    def test_empty_support_rejected(self):
        with pytest.raises(ValueError):
            TropicalSupport(())

    def test_repeated_exponent_rejected(self):
        with pytest.raises(ValueError):
            support([((1, 0), 0), ((1, 0), 1)])


class TestPrevariety:
    def test_qq_small_is_origin_only(self):
        res = prevariety(qq_spec([(1, 1), (2, 1)], 1, 1))
        assert res.is_origin_only
        assert res.points_bounded
        assert res.cell_count >= 1
        assert res.witness is None

    def test_QQ_small_is_origin_only(self):
        res = prevariety(QQ_spec([(1, 1), (2, 1)], 1, 1, 3))
        assert res.is_origin_only

    def test_qq_21_with_cell_count(self):
        res = prevariety(qq_spec([(1, 1), (2, 1), (3, 1)], 2, 1))
        assert res.is_origin_only
        assert res.cell_count == 36

    def test_hypothesis_gate(self):
        # Lambda = (z+1)(z-1): d_1 = 0 violates the theorem hypothesis
        spec = qq_spec([(1, 1), (-1, 1)], 1, 1)
        with pytest.raises(SpecValidationError) as e:
            check_theorem_hypothesis(spec)
        assert e.value.code == "zero_coefficient d_1"
        with pytest.raises(SpecValidationError):
            prevariety(spec, theorem_mode=True)
        # exploratory mode still runs and reports the prevariety object
        res = prevariety(spec, theorem_mode=False)
        assert res.cell_count >= 1

    def test_permutation_invariance(self):
        # same shifts, m and n swapped: same verdict and cell count
        a = prevariety(qq_spec([(1, 1), (2, 1), (3, 1)], 2, 1))
        b = prevariety(qq_spec([(1, 1), (2, 1), (3, 1)], 1, 2))
        assert a.is_origin_only == b.is_origin_only
        assert a.cell_count == b.cell_count


class TestExclusionWitness:
    def test_derived_examples(self):
        spec = qq_spec([(1, 1), (2, 1)], 1, 1)
        assert exclusion_witness(spec, TropicalPoint.of(-1, -1)) == 2
        assert exclusion_witness(spec, TropicalPoint.of(0, 3)) == 2
        assert exclusion_witness(spec, TropicalPoint.of(0, 0)) is None

    def test_consistency_with_prevariety(self):
        # points in no cell must have a witness; sampled rational points
        spec = qq_spec([(1, 1), (2, 1)], 1, 1)
        samples = [TropicalPoint.of(F(1, 2), 0), TropicalPoint.of(-2, 5),
                   TropicalPoint.of(1, 1), TropicalPoint.of(0, F(-1, 3))]
        for w in samples:
            assert exclusion_witness(spec, w) is not None

    def test_lift_valuations_inside_prevariety(self):
        # certified lifts have coordinatewise valuation 0, which must lie
        # in every hypersurface (soundness direction of the correspondence)
        from qqsystems.infinite import enumerate_infinite_solutions
        from qqsystems.lifting import lift_newton
        spec = ProblemSpec(mode="qq", lam=master((1, 1), (2, 1)),
                           m=1, n=1, K=3)
        for base in enumerate_infinite_solutions(spec):
            ls = lift_newton(base, spec)
            vals = [s.valuation() for s in ls.point.x + ls.point.y]
            assert all(v == 0 for v in vals)
            w = TropicalPoint(tuple(F(v) for v in vals))
            assert exclusion_witness(spec, w) is None


class TestSizeCap:
    def test_cap_enforced(self):
        from qqsystems.systems import SizeCapExceededError
        shifts = [(k, 1) for k in range(1, 8)]
        spec = ProblemSpec(mode="qq", lam=master(*shifts), m=4, n=3,
                           size_cap=6)
        with pytest.raises(SizeCapExceededError):
            prevariety(spec)
