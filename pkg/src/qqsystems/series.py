"""Truncated (Laurent) series in the deformation parameter.

A Series is a finite jet in s, where t = s^N and N is the ramification
index.  Coefficients live at s-exponents offset .. top; exponents below
offset are exactly zero, exponents above top are unknown (truncated
tail).  A negative offset gives a truncated Laurent object with bounded
pole order, which reciprocals of positive-valuation series require.

Operations track the knowledge window: mixing two series keeps only the
exponents both windows support.  Mixing different ramification indices
raises; callers re-ramify explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .scalar import Scalar, ZERO, ONE


class RamificationMismatchError(ValueError):
    """Two series with different ramification indices were combined."""


class NonInvertibleSeriesError(ZeroDivisionError):
    """Reciprocal of a series that is zero through its whole window."""


class Series:
    __slots__ = ("n_ram", "offset", "coeffs")

    def __init__(self, n_ram: int, coeffs: Iterable[Scalar], offset: int = 0):
        if n_ram < 1:
            raise ValueError("ramification index must be positive")
        object.__setattr__(self, "n_ram", n_ram)
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c: Scalar, top: int, n_ram: int = 1) -> "Series":
        """The exact constant c, known through s^top."""
        return Series(n_ram, (c,) + (ZERO,) * top, 0)

    @staticmethod
    def zero(top: int, n_ram: int = 1) -> "Series":
        return Series.const(ZERO, top, n_ram)

    @staticmethod
    def one(top: int, n_ram: int = 1) -> "Series":
        return Series.const(ONE, top, n_ram)

    @staticmethod
    def deformation_parameter(top: int, n_ram: int = 1) -> "Series":
        """t = s^N as a series known through s^top."""
        if top < n_ram:
            raise ValueError("window too small to hold t = s^N")
        coeffs = [ZERO] * (top + 1)
        coeffs[n_ram] = ONE
        return Series(n_ram, coeffs, 0)

    @staticmethod
    def from_t_coeffs(coeffs: Sequence[Scalar]) -> "Series":
        """Unramified series from t-coefficients c0 + c1 t + ..."""
        return Series(1, coeffs, 0)

    # -- window bookkeeping ----------------------------------------------

    @property
    def top(self) -> int:
        """Largest s-exponent with a known coefficient."""
        return self.offset + len(self.coeffs) - 1

    def coeff(self, e: int) -> Scalar:
        """Coefficient of s^e; exact zero below the window, error above it."""
        if e > self.top:
            raise IndexError(f"s^{e} is beyond the known window (top {self.top})")
        if e < self.offset:
            return ZERO
        return self.coeffs[e - self.offset]

    def valuation(self) -> Optional[Fraction]:
        """min exponent with nonzero coefficient, over N; None if zero through top."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                return Fraction(self.offset + i, self.n_ram)
        return None

    @property
    def is_zero(self) -> bool:
        """Zero through the knowledge window."""
        return all(c.is_zero for c in self.coeffs)

    def truncate(self, new_top: int) -> "Series":
        if new_top >= self.top:
            return self
        n = new_top - self.offset + 1
        if n <= 0:
            raise ValueError("truncation below the window offset")
        return Series(self.n_ram, self.coeffs[:n], self.offset)

    def widen(self, new_top: int) -> "Series":
        """Extend the window with exact zeros: treats the jet as an exact polynomial."""
        if new_top <= self.top:
            return self
        pad = (ZERO,) * (new_top - self.top)
        return Series(self.n_ram, self.coeffs + pad, self.offset)

    def re_ramify(self, new_n: int) -> "Series":
        """Rewrite in s' with t = s'^new_n; new_n must be a multiple of N."""
        if new_n % self.n_ram != 0:
            raise RamificationMismatchError(
                f"cannot re-ramify N={self.n_ram} to N={new_n}")
        f = new_n // self.n_ram
        if f == 1:
            return self
        coeffs = [ZERO] * ((len(self.coeffs) - 1) * f + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            coeffs[i * f] = c
        return Series(new_n, coeffs, self.offset * f)

    def shift(self, e: int) -> "Series":
        """Exact multiplication by s^e."""
        return Series(self.n_ram, self.coeffs, self.offset + e)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Series"):
        if self.n_ram != other.n_ram:
            raise RamificationMismatchError(
                f"ramification mismatch: {self.n_ram} vs {other.n_ram}")

    def _embed(self, other):
        """Scalars and ints embed as exact constants matching this window."""
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Scalar)):
            c = other if isinstance(other, Scalar) else Scalar(other)
            off = min(self.offset, 0)
            return Series(self.n_ram, (c,) + (ZERO,) * (self.top - off), 0).shift(0) \
                if off == 0 else Series(self.n_ram,
                                        (ZERO,) * (-off) + (c,) + (ZERO,) * self.top,
                                        off)
        return None

    def __add__(self, other):
        o = self._embed(other)
        if o is None:
            return NotImplemented
        self._check(o)
        off = min(self.offset, o.offset)
        top = min(self.top, o.top)
        if top < off:
            raise ValueError("empty knowledge window in series addition")
        out = []
        for e in range(off, top + 1):
            a = self.coeffs[e - self.offset] if self.offset <= e <= self.top else ZERO
            b = o.coeffs[e - o.offset] if o.offset <= e <= o.top else ZERO
            out.append(a + b)
        return Series(self.n_ram, out, off)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.n_ram, tuple(-c for c in self.coeffs), self.offset)

    def __sub__(self, other):
        o = self._embed(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._embed(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            c = other if isinstance(other, Scalar) else Scalar(other)
            return Series(self.n_ram, tuple(a * c for a in self.coeffs), self.offset)
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        off = self.offset + other.offset
        top = min(self.top + other.offset, other.top + self.offset)
        n = top - off + 1
        if n <= 0:
            raise ValueError("empty knowledge window in series product")
        out = [ZERO] * n
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k < n and not b.is_zero:
                    out[k] = out[k] + a * b
        return Series(self.n_ram, out, off)

    __rmul__ = __mul__

    def reciprocal(self) -> "Series":
        """Multiplicative inverse through the representable window.

        For a with lowest nonzero exponent v the result has offset -v and
        is known through s^(top - 2v); a * a.reciprocal() == 1 holds through
        that product window.
        """
        v = None
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                v = self.offset + i
                break
        if v is None:
            raise NonInvertibleSeriesError("non-invertible series (zero through window)")
        rel = self.top - v  # unit part known through this relative order
        u = [self.coeff(v + r) for r in range(rel + 1)]
        inv = [ONE / u[0]]
        for r in range(1, rel + 1):
            acc = ZERO
            for j in range(1, r + 1):
                acc = acc + u[j] * inv[r - j]
            inv.append(-acc / u[0])
        # result exponents -v .. top - 2v
        keep = self.top - 2 * v - (-v) + 1
        if keep < 1:
            keep = 1  # at least the leading coefficient is certain
        return Series(self.n_ram, inv[:keep], -v)

    def __truediv__(self, other):
        if isinstance(other, (int, Scalar)):
            c = other if isinstance(other, Scalar) else Scalar(other)
            return self * (ONE / c)
        if isinstance(other, Series):
            return self * other.reciprocal()
        return NotImplemented

    # -- comparison -----------------------------------------------------------

    def same_through(self, other: "Series", top: int) -> bool:
        """Equality of coefficients for all exponents <= top."""
        self._check(other)
        if top > min(self.top, other.top):
            raise IndexError("comparison beyond a knowledge window")
        lo = min(self.offset, other.offset)
        for e in range(lo, top + 1):
            if self.coeff(e) != other.coeff(e):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        top = min(self.top, other.top)
        return self.n_ram == other.n_ram and self.same_through(other, top)

    def __hash__(self):
        raise TypeError("Series equality is window-relative; not hashable")

    # -- numeric evaluation ------------------------------------------------------

    def eval_at(self, t0: float) -> complex:
        """Evaluate the jet at a small positive t0, using the real N-th root."""
        if t0 < 0:
            raise ValueError("evaluation expects t0 >= 0")
        s0 = t0 ** (1.0 / self.n_ram)
        acc = 0j
        for i, c in enumerate(self.coeffs):
            acc += complex(c) * s0 ** (self.offset + i)
        return acc

    def to_json(self):
        return {"N": self.n_ram, "offset": self.offset,
                "coeffs": [c.to_json() for c in self.coeffs]}

    def __repr__(self):
        return (f"Series(N={self.n_ram}, offset={self.offset}, "
                f"coeffs={[str(c) for c in self.coeffs]})")


def series_product(a: Series, b: Series) -> Series:
    """Truncated product; requires equal ramification indices."""
    return a * b


def series_reciprocal(a: Series) -> Series:
    return a.reciprocal()
