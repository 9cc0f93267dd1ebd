"""Exact sparse Laurent polynomials in q and t over the integers.

Every generating function in this package is a value of :class:`LaurentPoly`.
Coefficients are arbitrary-precision Python ints; a polynomial is stored as a
map from exponent pairs ``(deg_q, deg_t)`` to nonzero coefficients, so equality
is literal equality of canonical forms.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Union


class NotDivisibleError(ArithmeticError):
    """Raised when an exact polynomial division has no polynomial quotient."""


Scalar = Union[int, "LaurentPoly"]


def _term_sort_key(item):
    (dq, dt), _ = item
    return (dt, dq)


class LaurentPoly:
    """A Laurent polynomial in q and t with integer coefficients.

    Instances are immutable; all arithmetic returns new values.  Terms with
    zero coefficient are never stored, so ``p == r`` iff the term maps agree.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        if terms:
            for (dq, dt), c in terms.items():
                if c:
                    clean[(int(dq), int(dt))] = int(c)
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _ONE

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly({(0, 0): c})

    @staticmethod
    def q(power: int = 1) -> "LaurentPoly":
        return LaurentPoly({(power, 0): 1})

    @staticmethod
    def t(power: int = 1) -> "LaurentPoly":
        return LaurentPoly({(0, power): 1})

    @staticmethod
    def monomial(coeff: int, deg_q: int, deg_t: int = 0) -> "LaurentPoly":
        return LaurentPoly({(deg_q, deg_t): coeff})

    @staticmethod
    def _coerce(x: Scalar) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")

    # -- basic queries -----------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple[int, int], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, deg_q: int, deg_t: int = 0) -> int:
        return self._terms.get((deg_q, deg_t), 0)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._terms.items(), key=_term_sort_key))

    def substitute(self, q: int = 1, t: int = 1) -> int:
        """Evaluate at integer values of q and t (exponents must be >= 0)."""
        total = 0
        for (dq, dt), c in self._terms.items():
            if (dq < 0 and q == 0) or (dt < 0 and t == 0):
                raise ZeroDivisionError("negative exponent at zero")
            total += c * q**dq * t**dt
        return total

    def max_deg_q(self) -> int:
        if not self._terms:
            return 0
        return max(dq for dq, _ in self._terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        other = self._coerce(other)
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- exact division ----------------------------------------------------

    def exact_div(self, other: Scalar) -> "LaurentPoly":
        """Return c with other * c == self, or raise NotDivisibleError."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return _ZERO
        if all(dt == 0 for _, dt in other._terms):
            return self._exact_div_q_only(other)
        return self._exact_div_general(other)

    def _exact_div_q_only(self, other: "LaurentPoly") -> "LaurentPoly":
        # Divide each t-slice by the q-only divisor (exact univariate division).
        divisor = sorted((dq, c) for (dq, dt), c in other._terms.items())
        shift = divisor[0][0]
        divisor = [(dq - shift, c) for dq, c in divisor]
        dlead_deg, dlead_coeff = divisor[-1]
        slices: dict[int, dict[int, int]] = {}
        for (dq, dt), c in self._terms.items():
            slices.setdefault(dt, {})[dq] = c
        out: dict[tuple[int, int], int] = {}
        for dt, sl in slices.items():
            rem = dict(sl)
            min_a = min(rem)
            while rem:
                top = max(rem)
                if top - dlead_deg < min_a:
                    raise NotDivisibleError("not divisible")
                qc, r = divmod(rem[top], dlead_coeff)
                if r:
                    raise NotDivisibleError("leading coefficient does not divide")
                qdeg = top - dlead_deg
                key = (qdeg - shift, dt)
                out[key] = out.get(key, 0) + qc
                for ddeg, dc in divisor:
                    k = qdeg + ddeg
                    s = rem.get(k, 0) - qc * dc
                    if s:
                        rem[k] = s
                    else:
                        rem.pop(k, None)
                if rem and max(rem) >= top:
                    raise NotDivisibleError("division does not terminate")
        return LaurentPoly({k: c for k, c in out.items() if c})

    def _exact_div_general(self, other: "LaurentPoly") -> "LaurentPoly":
        # Iterated leading-term elimination under graded lex order on
        # (deg_t, deg_q); sufficient for the divisors used in this package.
        def lead(p: "LaurentPoly"):
            return max(p._terms, key=lambda k: (k[0] + k[1], k[1], k[0]))

        rem = self
        quot: dict[tuple[int, int], int] = {}
        lb = lead(other)
        cb = other._terms[lb]
        steps = 0
        limit = 4 * (len(self._terms) + 1) * (len(other._terms) + 1) + 64
        while not rem.is_zero():
            steps += 1
            if steps > limit:
                raise NotDivisibleError("no polynomial quotient")
            la = lead(rem)
            ca = rem._terms[la]
            qc, r = divmod(ca, cb)
            if r:
                raise NotDivisibleError("leading coefficient does not divide")
            k = (la[0] - lb[0], la[1] - lb[1])
            quot[k] = quot.get(k, 0) + qc
            rem = rem - LaurentPoly({k: qc}) * other
        return LaurentPoly(quot)

    # -- rendering and serialization ----------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (dq, dt), c in sorted(self._terms.items(), key=_term_sort_key):
            factors = []
            if dq == 1:
                factors.append("q")
            elif dq != 0:
                factors.append(f"q^{dq}")
            if dt == 1:
                factors.append("t")
            elif dt != 0:
                factors.append(f"t^{dt}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_json(self) -> list[list[int]]:
        """Array of [coeff, deg_q, deg_t] triples sorted by (deg_t, deg_q)."""
        return [
            [c, dq, dt]
            for (dq, dt), c in sorted(self._terms.items(), key=_term_sort_key)
        ]

    @staticmethod
    def from_json(data: Iterable[Iterable[int]]) -> "LaurentPoly":
        return LaurentPoly({(dq, dt): c for c, dq, dt in data})


_ZERO = LaurentPoly()
_ONE = LaurentPoly({(0, 0): 1})

ZERO = _ZERO
ONE = _ONE


# -- quantum integers and friends -------------------------------------------


def qint(n: int) -> LaurentPoly:
    """[n] = 1 + q + ... + q^(n-1); [0] is the zero polynomial."""
    if n < 0:
        raise ValueError(f"qint requires n >= 0, got {n}")
    return LaurentPoly({(i, 0): 1 for i in range(n)})


def qfact(n: int) -> LaurentPoly:
    """[n]! = [1][2]...[n]."""
    if n < 0:
        raise ValueError(f"qfact requires n >= 0, got {n}")
    out = _ONE
    for i in range(1, n + 1):
        out = out * qint(i)
    return out


def qdoublefact(two_m: int) -> LaurentPoly:
    """[2m]!! = [2][4]...[2m]; the argument is the even number 2m."""
    if two_m < 0 or two_m % 2:
        raise ValueError(f"qdoublefact takes an even argument >= 0, got {two_m}")
    out = _ONE
    for i in range(2, two_m + 1, 2):
        out = out * qint(i)
    return out


def qbinom(n: int, m: int) -> LaurentPoly:
    """q-binomial coefficient [n]! / ([n-m]! [m]!); zero outside 0<=m<=n."""
    if m < 0 or n < 0 or m > n:
        return _ZERO
    return qfact(n).exact_div(qfact(n - m) * qfact(m))


def qbinom_q2(n: int, m: int) -> LaurentPoly:
    """[2n]!! / ([2(n-m)]!! [2m]!!); zero outside 0<=m<=n."""
    if m < 0 or n < 0 or m > n:
        return _ZERO
    return qdoublefact(2 * n).exact_div(qdoublefact(2 * (n - m)) * qdoublefact(2 * m))


def qmultinom(n: int, ks: Iterable[int]) -> LaurentPoly:
    """[n]! / prod [k_i]! for nonnegative k_i with sum <= n is not allowed:
    the k_i must sum to n exactly."""
    ks = list(ks)
    if any(k < 0 for k in ks):
        raise ValueError("multinomial parts must be nonnegative")
    if sum(ks) != n:
        raise ValueError(f"multinomial parts {ks} must sum to {n}")
    den = _ONE
    for k in ks:
        den = den * qfact(k)
    return qfact(n).exact_div(den)


def qmultinom_q2(n: int, ks: Iterable[int]) -> LaurentPoly:
    """[2n]!! / prod [2 k_i]!! with parts summing to n."""
    ks = list(ks)
    if any(k < 0 for k in ks):
        raise ValueError("multinomial parts must be nonnegative")
    if sum(ks) != n:
        raise ValueError(f"multinomial parts {ks} must sum to {n}")
    den = _ONE
    for k in ks:
        den = den * qdoublefact(2 * k)
    return qdoublefact(2 * n).exact_div(den)


def qt_int(n: int) -> LaurentPoly:
    """[n]_t = [n-1] + q^(n-2) t for n >= 2, and [1]_t = t.

    The height-1 value is pinned to t; heights below 1 never occur.
    """
    if n < 1:
        raise ValueError(f"qt_int requires n >= 1, got {n}")
    if n == 1:
        return LaurentPoly.t()
    return qint(n - 1) + LaurentPoly({(n - 2, 1): 1})


def one_plus_q_power_product(n: int) -> LaurentPoly:
    """prod_{i=1..n} (1 + q^i)."""
    out = _ONE
    for i in range(1, n + 1):
        out = out * (LaurentPoly({(0, 0): 1, (i, 0): 1}))
    return out


def prod(polys: Iterable[Scalar]) -> LaurentPoly:
    out = _ONE
    for p in polys:
        out = out * LaurentPoly._coerce(p)
    return out
