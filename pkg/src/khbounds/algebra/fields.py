"""Exact scalar fields and ring descriptors.

Field elements are plain Python numbers so the hot loops in the complex
simplifier can do arithmetic without method dispatch: elements of a prime
field are ints in ``range(p)``, rationals are ints or ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

Scalar = Union[int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class Field:
    """Base class for the exact fields used as coefficient rings."""

    characteristic: int = 0
    name: str = "?"

    def __call__(self, x) -> Scalar:
        raise NotImplementedError

    def inv(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def is_field(self) -> bool:
        return True

    def __repr__(self) -> str:
        return self.name


class Rationals(Field):
    characteristic = 0
    name = "Q"

    def __call__(self, x) -> Scalar:
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return x if isinstance(x, int) else Fraction(x)

    def inv(self, a: Scalar) -> Scalar:
        if a == 1 or a == -1:
            return int(a)
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return self(Fraction(1) / a)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, a: Scalar) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return pow(a, -1, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("F", self.p))


QQ = Rationals()


def field_from_name(name: str) -> Field:
    """Parse ``Q``/``QQ`` or ``F<p>``/``GF<p>`` into a field."""
    key = name.strip().upper()
    if key in ("Q", "QQ"):
        return QQ
    for prefix in ("GF", "F"):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return PrimeField(int(key[len(prefix):]))
    raise ValueError(f"unknown field {name!r}")


# Ring descriptors.  These only describe a scalar ring; arithmetic lives in
# the field classes above and in ``poly``.

@dataclass(frozen=True)
class UnivariatePolynomials:
    base: Field
    var: str = "x"

    def is_field(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"{self.base!r}[{self.var}]"


@dataclass(frozen=True)
class MultivariateIntegerPolynomials:
    variables: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable names in {self.variables}")

    def is_field(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "Z[" + ",".join(self.variables) + "]"
