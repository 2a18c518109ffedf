"""Polynomials: univariate over an exact field, multivariate over Z (or Q).

UPoly is the workhorse for Smith normal form over F[x].  MPoly is only used
at Frobenius-algebra scale, so it favours clarity over speed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

from .fields import Field


class RingMismatch(TypeError):
    pass


class UPoly:
    """Univariate polynomial over a field, coefficients stored low to high."""

    __slots__ = ("F", "c")

    def __init__(self, F: Field, coeffs: Iterable = ()):
        self.F = F
        cs = [F(a) for a in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.c = tuple(cs)

    @classmethod
    def monomial(cls, F, k: int, a=1) -> "UPoly":
        return cls(F, [0] * k + [a])

    @classmethod
    def const(cls, F, a) -> "UPoly":
        return cls(F, [a])

    def _check(self, other):
        if isinstance(other, UPoly):
            if other.F != self.F:
                raise RingMismatch(f"{self.F!r} vs {other.F!r}")
            return other
        return UPoly(self.F, [other])

    @property
    def degree(self) -> int:
        # -1 for the zero polynomial
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lead(self):
        return self.c[-1] if self.c else 0

    def is_unit(self) -> bool:
        return len(self.c) == 1

    def valuation(self) -> int:
        """Largest k with x^k dividing self (the zero polynomial raises)."""
        if not self.c:
            raise ValueError("valuation of zero")
        k = 0
        while self.c[k] == 0:
            k += 1
        return k

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (0,) * (n - len(self.c))
        b = other.c + (0,) * (n - len(other.c))
        return UPoly(self.F, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.F, [-x for x in self.c])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if not self.c or not other.c:
            return UPoly(self.F)
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            for j, y in enumerate(other.c):
                out[i + j] += x * y
        return UPoly(self.F, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        rem = list(self.c)
        q = [0] * max(len(rem) - len(other.c) + 1, 0)
        inv = F.inv(other.lead())
        dv = other.degree
        for k in range(len(rem) - 1, dv - 1, -1):
            a = F(rem[k] * inv)
            if a == 0:
                continue
            q[k - dv] = a
            for i, b in enumerate(other.c):
                rem[k - dv + i] = F(rem[k - dv + i] - a * b)
        return UPoly(F, q), UPoly(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UPoly":
        if not self.c:
            return self
        inv = self.F.inv(self.lead())
        return UPoly(self.F, [a * inv for a in self.c])

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.F == other.F and self.c == other.c
        if other == 0:
            return not self.c
        return self.c == (self.F(other),)

    def __hash__(self):
        return hash(self.c)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return self.F(acc)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for k, a in enumerate(self.c):
            if a == 0:
                continue
            if k == 0:
                parts.append(str(a))
            else:
                mono = "x" if k == 1 else f"x^{k}"
                parts.append(mono if a == 1 else f"{a}*{mono}")
        return " + ".join(reversed(parts))


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# --------------------------------------------------------------------------
# multivariate

Exp = Tuple[int, ...]


def _glex_key(e: Exp):
    return (sum(e), e)


class MPoly:
    """Sparse polynomial in named variables with integer/rational coefficients.

    Terms are kept in a dict; ``terms()`` yields them in descending graded-lex
    order, which is also the order used for printing and equality-by-repr.
    """

    __slots__ = ("vars", "d")

    def __init__(self, variables: Sequence[str], terms: Dict[Exp, object] | None = None):
        self.vars = tuple(variables)
        d = {}
        for e, a in (terms or {}).items():
            if len(e) != len(self.vars):
                raise ValueError("exponent length does not match variables")
            if a != 0:
                if isinstance(a, Fraction) and a.denominator == 1:
                    a = a.numerator
                d[tuple(e)] = a
        self.d = d

    @classmethod
    def const(cls, variables, a) -> "MPoly":
        return cls(variables, {(0,) * len(variables): a})

    @classmethod
    def var(cls, variables, name: str, power: int = 1) -> "MPoly":
        e = [0] * len(variables)
        e[list(variables).index(name)] = power
        return cls(variables, {tuple(e): 1})

    def _check(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise RingMismatch(f"{self.vars} vs {other.vars}")
            return other
        return MPoly.const(self.vars, other)

    def terms(self):
        return sorted(self.d.items(), key=lambda kv: _glex_key(kv[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self.d

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.d)
        for e, a in other.d.items():
            out[e] = out.get(e, 0) + a
        return MPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -a for e, a in self.d.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out: Dict[Exp, object] = {}
        for e1, a in self.d.items():
            for e2, b in other.d.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + a * b
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.const(self.vars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = self._check(other)
        except RingMismatch:
            return False
        return self.d == other.d

    def __hash__(self):
        return hash((self.vars, tuple(self.terms())))

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.d), default=-1)

    def coefficient_in(self, name: str, k: int) -> "MPoly":
        """Coefficient of name^k, as a polynomial in the same ring."""
        i = self.vars.index(name)
        out = {}
        for e, a in self.d.items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = a
        return MPoly(self.vars, out)

    def reduce_power(self, name: str, n: int, tail: "MPoly") -> "MPoly":
        """Rewrite every ``name^k`` with k >= n using ``name^n = tail``.

        ``(X**2).reduce_power('X', 2, h*X + t)`` gives ``h*X + t``.
        """
        tail = self._check(tail)
        i = self.vars.index(name)
        if tail.degree_in(name) >= n:
            raise ValueError("tail must have lower degree than the relation")
        cur = self
        while True:
            high = {e: a for e, a in cur.d.items() if e[i] >= n}
            if not high:
                return cur
            low = MPoly(self.vars, {e: a for e, a in cur.d.items() if e[i] < n})
            for e, a in high.items():
                e2 = list(e)
                e2[i] -= n
                low = low + MPoly(self.vars, {tuple(e2): a}) * tail
            cur = low

    def substitute(self, values: Dict[str, object]):
        """Evaluate some variables at numbers; returns an MPoly."""
        out = MPoly(self.vars)
        for e, a in self.d.items():
            coef = a
            e2 = list(e)
            for name, v in values.items():
                k = self.vars.index(name)
                coef = coef * (v ** e[k])
                e2[k] = 0
            out = out + MPoly(self.vars, {tuple(e2): coef})
        return out

    def constant_value(self):
        if any(any(e) for e in self.d):
            raise ValueError(f"{self!r} is not constant")
        return self.d.get((0,) * len(self.vars), 0)

    def __repr__(self):
        if not self.d:
            return "0"
        parts = []
        for e, a in self.terms():
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(str(a))
            elif a == 1:
                parts.append(mono)
            elif a == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{a}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
