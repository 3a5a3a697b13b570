"""Exact arithmetic over the Gaussian rationals and polynomials in delta."""

import re
import logging

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Set, Tuple, Union

import sympy

from sympy.polys.domains import QQ, QQ_I

from .exceptions import DivisionByZero, NonRationalCoefficients


Number = Union[int, Fraction, "Scalar"]

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
SCALAR_REGEX = re.compile(
    rf"^(?P<re>{_RATIONAL})?(?:(?P<im>[+-](?:\d+(?:/\d+)?)?)i)?$"
)

DELTA = sympy.Symbol("delta")


def _fraction(value: Union[int, str, Fraction]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class Scalar:
    """An exact element `re + im * i` of Q(i).

    Fractions are always kept in lowest terms by `fractions.Fraction`, so the
    generated equality is structural equality.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _fraction(self.re))
        object.__setattr__(self, "im", _fraction(self.im))

    @classmethod
    def coerce(cls, value: Number) -> "Scalar":
        """
        Args:
            value (Number): An integer, a fraction or a scalar.

        Returns:
            Scalar: The value as a scalar.
        """
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"Cannot interpret {value!r} as a scalar.")

    @property
    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.re == other and not self.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __add__(self, other: Number) -> "Scalar":
        other = Scalar.coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "Scalar":
        other = Scalar.coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other: Number) -> "Scalar":
        other = Scalar.coerce(other)
        if not self.im and not other.im:
            return Scalar(self.re * other.re)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def inverse(self) -> "Scalar":
        """
        Raises:
            DivisionByZero: When the scalar is zero.

        Returns:
            Scalar: The multiplicative inverse.
        """
        if not self:
            raise DivisionByZero("Zero has no inverse in Q(i).")
        norm = self.re * self.re + self.im * self.im
        return Scalar(self.re / norm, -self.im / norm)

    def __truediv__(self, other: Number) -> "Scalar":
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"


ZERO = Scalar(0)
ONE = Scalar(1)
HALF = Scalar(Fraction(1, 2))
I = Scalar(0, 1)


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_scalar(value: Scalar) -> str:
    """
    Args:
        value (Scalar): The scalar to format.

    Returns:
        str: `a/b` for rationals or `a/b+c/di` for Gaussian rationals.
    """
    real = _format_rational(value.re)
    if not value.im:
        return real
    sign = "-" if value.im < 0 else "+"
    return f"{real}{sign}{_format_rational(abs(value.im))}i"


def parse_scalar(text: str) -> Scalar:
    """
    Args:
        text (str): A scalar written as `a`, `a/b`, `a/b+c/di`, `+ci` or `i`.

    Raises:
        ValueError: When the text is not a scalar.
        DivisionByZero: When a denominator is zero.

    Returns:
        Scalar: The parsed scalar.
    """
    compact = text.strip().replace(" ", "")
    if compact in ("i", "+i"):
        return I
    if compact == "-i":
        return -I
    match = SCALAR_REGEX.match(compact)
    if not compact or not match:
        raise ValueError(f"{text!r} is not a Gaussian rational.")
    try:
        real = Fraction(match.group("re") or 0)
        imaginary = match.group("im")
        if imaginary is None:
            imag = Fraction(0)
        elif imaginary in ("+", "-"):
            imag = Fraction(int(imaginary + "1"))
        else:
            imag = Fraction(imaginary)
    except ZeroDivisionError as error:
        raise DivisionByZero(f"{text!r} has a zero denominator.") from error
    return Scalar(real, imag)


def to_domain(value: Scalar, domain=QQ):
    """
    Args:
        value (Scalar): The scalar to convert.
        domain (Domain): Either `QQ` or `QQ_I`.

    Returns:
        The matching sympy domain element.
    """
    real = QQ(value.re.numerator, value.re.denominator)
    if domain == QQ:
        if value.im:
            raise NonRationalCoefficients(f"{value} does not belong to QQ.")
        return real
    imag = QQ(value.im.numerator, value.im.denominator)
    return QQ_I(real, imag)


def _qq_to_fraction(element) -> Fraction:
    return Fraction(int(QQ.numer(element)), int(QQ.denom(element)))


def from_domain(element, domain=QQ) -> Scalar:
    """
    Args:
        element: A sympy `QQ` or `QQ_I` element.
        domain (Domain): The domain the element belongs to.

    Returns:
        Scalar: The same number as a scalar.
    """
    if domain == QQ:
        return Scalar(_qq_to_fraction(element))
    return Scalar(_qq_to_fraction(element.x), _qq_to_fraction(element.y))


def to_sympy(value: Scalar) -> sympy.Expr:
    return sympy.Rational(value.re.numerator, value.re.denominator) + sympy.I * (
        sympy.Rational(value.im.numerator, value.im.denominator)
    )


def from_sympy(expression: sympy.Expr) -> Scalar:
    """
    Args:
        expression (sympy.Expr): An exact Gaussian rational sympy number.

    Returns:
        Scalar: The same number as a scalar.
    """
    real, imag = sympy.sympify(expression).as_real_imag()
    real, imag = sympy.Rational(real), sympy.Rational(imag)
    return Scalar(Fraction(int(real.p), int(real.q)), Fraction(int(imag.p), int(imag.q)))


@dataclass(frozen=True)
class Poly:
    """A dense univariate polynomial in delta, lowest degree first."""

    coefficients: Tuple[Scalar, ...] = ()

    ZERO_DEGREE = -1

    def __post_init__(self):
        coefficients = [Scalar.coerce(value) for value in self.coefficients]
        while coefficients and not coefficients[-1]:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def from_sympy(cls, expression: sympy.Expr) -> "Poly":
        polynomial = sympy.Poly(expression, DELTA)
        coefficients = [from_sympy(value) for value in reversed(polynomial.all_coeffs())]
        return cls(tuple(coefficients))

    def to_sympy(self) -> sympy.Expr:
        return sum(
            (to_sympy(value) * DELTA**power for power, value in enumerate(self.coefficients)),
            sympy.Integer(0),
        )

    @property
    def degree(self) -> int:
        """
        Returns:
            int: The degree, `Poly.ZERO_DEGREE` for the zero polynomial.
        """
        return len(self.coefficients) - 1 if self.coefficients else self.ZERO_DEGREE

    @property
    def is_real(self) -> bool:
        return all(value.is_real for value in self.coefficients)

    def real_part(self) -> "Poly":
        return Poly(tuple(Scalar(value.re) for value in self.coefficients))

    def imaginary_part(self) -> "Poly":
        return Poly(tuple(Scalar(value.im) for value in self.coefficients))

    def __add__(self, other: "Poly") -> "Poly":
        size = max(len(self.coefficients), len(other.coefficients))
        left = self.coefficients + (ZERO,) * (size - len(self.coefficients))
        right = other.coefficients + (ZERO,) * (size - len(other.coefficients))
        return Poly(tuple(a + b for a, b in zip(left, right)))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-value for value in self.coefficients))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coefficients or not other.coefficients:
            return Poly()
        result = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                result[i + j] = result[i + j] + a * b
        return Poly(tuple(result))

    def __call__(self, value: Number) -> Scalar:
        return poly_eval(self, Scalar.coerce(value))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for power, value in enumerate(self.coefficients):
            if value:
                terms.append(f"({value})*delta^{power}" if power else f"({value})")
        return " + ".join(terms)


def poly_eval(polynomial: Poly, value: Scalar) -> Scalar:
    """
    Args:
        polynomial (Poly): The polynomial.
        value (Scalar): The point to evaluate at.

    Returns:
        Scalar: The Horner evaluation of the polynomial at the point.
    """
    result = ZERO
    for coefficient in reversed(polynomial.coefficients):
        result = result * value + coefficient
    return result


def _integer_sympy_poly(polynomial: Poly) -> sympy.Poly:
    """Clears the denominators of a rational polynomial."""
    coefficients = [value.re for value in polynomial.coefficients]
    common = int(sympy.ilcm(1, *(value.denominator for value in coefficients)))
    integers = [int(value * common) for value in reversed(coefficients)]
    return sympy.Poly(integers, DELTA, domain=sympy.ZZ)


def poly_rational_roots(polynomial: Poly) -> Set[Scalar]:
    """Finds the rational roots of a polynomial with rational coefficients.

    Rational roots are exactly the roots of the linear factors of the
    cleared-denominator integer polynomial, which sympy extracts for us. Each
    candidate is then verified by exact evaluation.

    Args:
        polynomial (Poly): A nonzero polynomial with rational coefficients.

    Raises:
        NonRationalCoefficients: When a coefficient has a nonzero imaginary part.

    Returns:
        Set[Scalar]: Every rational root of the polynomial.
    """
    if not polynomial.is_real:
        raise NonRationalCoefficients(f"{polynomial} has Gaussian coefficients.")
    if polynomial.degree < 1:
        return set()
    _, factors = _integer_sympy_poly(polynomial).factor_list()
    roots: Set[Scalar] = set()
    for factor, _ in factors:
        if factor.degree() != 1:
            continue
        leading, constant = (int(value) for value in factor.all_coeffs())
        root = Scalar(Fraction(-constant, leading))
        if poly_eval(polynomial, root):
            logging.warning(f"Discarding unverified candidate root {root}.")
            continue
        roots.add(root)
    return roots


def nonlinear_factors(polynomial: Poly) -> List[Poly]:
    """
    Args:
        polynomial (Poly): A nonzero polynomial with rational coefficients.

    Returns:
        List[Poly]: The irreducible factors of degree at least two.
    """
    if polynomial.degree < 2:
        return []
    _, factors = _integer_sympy_poly(polynomial).factor_list()
    return [
        Poly.from_sympy(factor.as_expr()) for factor, _ in factors if factor.degree() > 1
    ]


def poly_gcd(polynomials: Iterable[Poly]) -> Poly:
    """
    Args:
        polynomials (Iterable[Poly]): Polynomials over Q(i).

    Returns:
        Poly: Their greatest common divisor, zero if they all vanish.
    """
    result = sympy.Integer(0)
    for polynomial in polynomials:
        result = sympy.gcd(result, polynomial.to_sympy(), DELTA)
    if result == 0:
        return Poly()
    return Poly.from_sympy(result)


def common_rational_roots(polynomial: Poly) -> Set[Scalar]:
    """
    Args:
        polynomial (Poly): A nonzero polynomial over Q(i).

    Returns:
        Set[Scalar]:
            The rational roots of the polynomial, i.e. the common rational
            roots of its real and imaginary parts.
    """
    if polynomial.is_real:
        return poly_rational_roots(polynomial)
    real = polynomial.real_part()
    imaginary = polynomial.imaginary_part()
    if real.degree == Poly.ZERO_DEGREE:
        return poly_rational_roots(imaginary)
    return {root for root in poly_rational_roots(real) if not poly_eval(imaginary, root)}
