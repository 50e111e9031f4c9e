"""Tropical prevariety of the deformed system.

Each residual equation tropicalizes to a piecewise-linear condition on
the valuation vector w of a candidate solution: the minimum of
u . w + val(coefficient) over the support must be attained at least
twice.  The prevariety is the set of w satisfying all of them at once;
for these systems it collapses to the origin, which is verified here by
exact cell enumeration (rational simplex LP on ties).

The second half shows exclusion witnesses: for a vector w outside the
prevariety, the 1-based index of the first equation whose minimum is
attained only once.
"""

from fractions import Fraction

from qqsystems.scalar import Scalar
from qqsystems.systems import MasterData, ProblemSpec
from qqsystems.tropical import prevariety, exclusion_witness, TropicalPoint


def main():
    for mode, q in (("qq", None), ("QQ", Scalar(3))):
        for m, n in ((1, 1), (2, 1), (2, 2)):
            shifts = tuple((Scalar(k), 1) for k in range(1, m + n + 1))
            spec = ProblemSpec(mode=mode, lam=MasterData(shifts),
                               m=m, n=n, q=q)
            res = prevariety(spec)
            print(f"{mode} (m,n)=({m},{n}): {res.cell_count} cells,"
                  f" origin only: {res.is_origin_only},"
                  f" bounded: {res.points_bounded}")

    spec = ProblemSpec(mode="qq",
                       lam=MasterData(((Scalar(1), 1), (Scalar(2), 1))),
                       m=1, n=1)
    print("\nexclusion witnesses for qq, (m,n)=(1,1):")
    for w in (TropicalPoint.of(0, 0), TropicalPoint.of(-1, -1),
              TropicalPoint.of(0, 3), TropicalPoint.of(Fraction(1, 2), 0)):
        k = exclusion_witness(spec, w)
        verdict = "inside (no witness)" if k is None \
            else f"excluded by equation {k}"
        print(f"  w = ({w.w[0]}, {w.w[1]}): {verdict}")


if __name__ == "__main__":
    main()
