"""Exact arithmetic in the exploded semiring.

Scalars are pairs c*[e^a] of a Gaussian-rational coefficient c and a rational
exponent a.  Multiplication multiplies coefficients and adds exponents;
addition is dominated by the strictly smaller exponent and adds coefficients
on ties.  Distinct zeros 0*[e^a] are kept distinct per exponent: no
canonicalization ever merges them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class NotInvertibleError(ZeroDivisionError):
    pass


class SmoothPartUndefinedError(ValueError):
    pass


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _as_fraction(self.re))
        object.__setattr__(self, "im", _as_fraction(self.im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise NotInvertibleError("not invertible")
        return GaussianRational(self.re / n, -self.im / n)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __pow__(self, k: int) -> "GaussianRational":
        if k < 0:
            return self.inverse() ** (-k)
        out = QQI_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self):
        return f"{self.re}{'+' if self.im >= 0 else ''}{self.im}i"


QQI_ZERO = GaussianRational()
QQI_ONE = GaussianRational(Fraction(1))


def qq(re, im=0) -> GaussianRational:
    return GaussianRational(_as_fraction(re), _as_fraction(im))


@dataclass(frozen=True)
class ExplodedScalar:
    """One element c*[e^a]: exact coefficient `coeff`, exact exponent `exponent`."""

    coeff: GaussianRational
    exponent: Fraction

    def __post_init__(self):
        if not isinstance(self.coeff, GaussianRational):
            object.__setattr__(self, "coeff", qq(self.coeff))
        object.__setattr__(self, "exponent", _as_fraction(self.exponent))

    def is_unit(self) -> bool:
        return not self.coeff.is_zero()

    def __mul__(self, other: "ExplodedScalar") -> "ExplodedScalar":
        return es_mul(self, other)

    def __add__(self, other: "ExplodedScalar") -> "ExplodedScalar":
        return es_add(self, other)

    def __pow__(self, k: int) -> "ExplodedScalar":
        return ExplodedScalar(self.coeff ** k, self.exponent * k)

    def __str__(self):
        return f"{self.coeff}[e^{self.exponent}]"


ES_ONE = ExplodedScalar(QQI_ONE, Fraction(0))


def es(coeff_re, coeff_im=0, exponent=0) -> ExplodedScalar:
    return ExplodedScalar(qq(coeff_re, coeff_im), _as_fraction(exponent))


def es_mul(x: ExplodedScalar, y: ExplodedScalar) -> ExplodedScalar:
    return ExplodedScalar(x.coeff * y.coeff, x.exponent + y.exponent)


def es_add(x: ExplodedScalar, y: ExplodedScalar) -> ExplodedScalar:
    if x.exponent < y.exponent:
        return x
    if y.exponent < x.exponent:
        return y
    return ExplodedScalar(x.coeff + y.coeff, x.exponent)


def es_inv(x: ExplodedScalar) -> ExplodedScalar:
    if not x.is_unit():
        raise NotInvertibleError("not invertible")
    return ExplodedScalar(x.coeff.inverse(), -x.exponent)


def es_tropical_part(x: ExplodedScalar) -> Fraction:
    return x.exponent


def es_smooth_part(x: ExplodedScalar) -> GaussianRational:
    if x.exponent < 0:
        raise SmoothPartUndefinedError("outside C[e^[0,inf)]")
    if x.exponent > 0:
        return QQI_ZERO
    return x.coeff


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def format_scalar(x: ExplodedScalar) -> str:
    """Text form ``c_re c_im e a`` with each rational written p/q."""
    return (
        f"{format_rational(x.coeff.re)} {format_rational(x.coeff.im)} "
        f"e {format_rational(x.exponent)}"
    )


def parse_scalar(s: str) -> ExplodedScalar:
    parts = s.split()
    if len(parts) != 4 or parts[2] != "e":
        raise ValueError(f"malformed exploded scalar: {s!r}")
    return ExplodedScalar(
        GaussianRational(parse_rational(parts[0]), parse_rational(parts[1])),
        parse_rational(parts[3]),
    )
