"""Ramified branch search at a degenerate base.

Lambda = (z+1)^2 puts both roots of the master polynomial at -1, so the
only t = 0 solution is x0 = y0 = 1 and the Jacobian there is singular:
plain Newton lifting fails.  The ramified search tries t = s^N and
solves the consistency constraints symbolically; here it finds two
exact polynomial branches, (1, 1) and (1 + 2t, 1 - 2t), both with
identically vanishing residual.

A contrasting difference-mode instance shows the honest failure path:
over Lambda = (z+1)^2 with q = 3, the degenerate base needs sqrt(3t),
which leaves the Gaussian rationals, and the search raises instead of
returning a wrong series.
"""

from qqsystems.scalar import Scalar
from qqsystems.systems import MasterData, ProblemSpec
from qqsystems.infinite import enumerate_infinite_solutions
from qqsystems.lifting import (lift_ramified, lift_newton,
                               SingularJacobianError,
                               RamificationBoundExceededError)


def coeffs(series):
    return [str(series.coeff(k)) for k in range(series.top + 1)]


def main():
    spec = ProblemSpec(mode="qq", lam=MasterData(((Scalar(1), 2),)),
                       m=1, n=1, K=4)
    base = enumerate_infinite_solutions(spec)[0]
    print(f"base x0 = {base.x0[0]}, y0 = {base.y0[0]}  [{base.tier}]")

    try:
        lift_newton(base, spec)
    except SingularJacobianError as e:
        print(f"plain Newton refuses (as it must): {e}")

    branches = lift_ramified(base, spec)
    print(f"\nramified search found {len(branches)} branch(es):")
    for b in branches:
        print(f"  x = {coeffs(b.point.x[0])}, y = {coeffs(b.point.y[0])}"
              f"  (ramification index {b.n_ram},"
              f" residual valuation >= {b.residual_valuation})")

    print("\ndifference mode, q = 3, same Lambda:")
    spec_q = ProblemSpec(mode="QQ", lam=MasterData(((Scalar(1), 2),)),
                         m=1, n=1, q=Scalar(3), K=2)
    base_q = enumerate_infinite_solutions(spec_q)[0]
    try:
        lift_ramified(base_q, spec_q)
    except RamificationBoundExceededError as e:
        print(f"  search fails loudly: {e}")


if __name__ == "__main__":
    main()
