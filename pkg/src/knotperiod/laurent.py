"""Sparse Laurent polynomials in one variable ``t`` over Z or a prime field F_p.

A polynomial is a finite map exponent -> coefficient.  The coefficient ring
is carried by the ``p`` attribute: ``None`` for the integers, a prime for
F_p (coefficients then live in ``range(p)``).

Units of Z[t^-1, t] are ``+-t^k``; units of F_p[t^-1, t] are ``c*t^k``.
Invariants in this package are only defined up to such units, so
``canonicalize`` picks one representative per unit class: lowest exponent
shifted to 0, and a positive (Z) or unit (F_p) leading coefficient.

Text format (used in every report): terms in increasing exponent order,
``c*t^e`` with ``+``/``-`` separators, e.g. ``1 - t + t^2``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

from .errors import NotDivisibleError, ParseError

__all__ = [
    "LaurentPoly",
    "is_prime",
    "divexact",
    "try_divexact",
    "canonicalize",
    "equal_up_to_unit",
    "gcd_poly",
    "reduce_mod_p",
    "qth_power_root",
    "cyclotomic_like",
    "det_from_charpoly",
    "parse_poly",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_ring(p):
    if p is not None and not is_prime(p):
        raise ValueError(f"coefficient modulus {p} is not prime")


class LaurentPoly:
    """Immutable Laurent polynomial over Z (``p=None``) or F_p."""

    __slots__ = ("_terms", "p", "_hash")

    def __init__(self, terms=None, p=None):
        _check_ring(p)
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                if p is not None:
                    c %= p
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self.p = p
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c, p=None):
        return cls({0: c}, p)

    @classmethod
    def monomial(cls, c, e, p=None):
        return cls({e: c}, p)

    @classmethod
    def gen(cls, p=None):
        """The variable ``t``."""
        return cls({1: 1}, p)

    @classmethod
    def from_coeffs(cls, coeffs, low=0, p=None):
        """Build ``sum(coeffs[i] * t^(low+i))``."""
        return cls({low + i: c for i, c in enumerate(coeffs)}, p)

    @classmethod
    def _raw(cls, terms, p):
        # terms already reduced and zero-free
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.p = p
        obj._hash = None
        return obj

    # -- inspection ---------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, e):
        return self._terms.get(e, 0)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def min_exp(self):
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self._terms)

    @property
    def max_exp(self):
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self._terms)

    @property
    def width(self):
        """Degree span ``max_exp - min_exp``; the degree of the unit class."""
        return self.max_exp - self.min_exp

    @property
    def leading_coeff(self):
        return self._terms[self.max_exp]

    @property
    def trailing_coeff(self):
        return self._terms[self.min_exp]

    def is_unit(self):
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return self.p is not None or c in (1, -1)

    def is_constant(self):
        return not self._terms or set(self._terms) == {0}

    def dense(self):
        """Return ``(low, coeffs)`` with ``coeffs[i]`` the coefficient of ``t^(low+i)``."""
        if not self._terms:
            return 0, []
        lo, hi = self.min_exp, self.max_exp
        out = [0] * (hi - lo + 1)
        for e, c in self._terms.items():
            out[e - lo] = c
        return lo, out

    # -- ring structure -----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.p != self.p:
                raise ValueError(f"coefficient ring mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if p is not None:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        if p is None:
            return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, None)
        return LaurentPoly._raw({e: p - c for e, c in self._terms.items()}, p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        if p is not None:
            out = {e: c % p for e, c in out.items()}
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, p)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.unit_inverse() ** (-k)
        result = LaurentPoly._raw({0: 1}, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def unit_inverse(self):
        if not self.is_unit():
            raise NotDivisibleError(f"{self} is not a unit")
        ((e, c),) = self._terms.items()
        if self.p is None:
            return LaurentPoly._raw({-e: c}, None)
        return LaurentPoly._raw({-e: pow(c, -1, self.p)}, self.p)

    def shift(self, k):
        """Multiply by ``t^k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()}, self.p)

    def scale(self, c):
        return self * c

    def substitute_power(self, k):
        """Substitute ``t -> t^k``."""
        if k == 0:
            return LaurentPoly({0: sum(self._terms.values())}, self.p)
        return LaurentPoly._raw({e * k: c for e, c in self._terms.items()}, self.p)

    def __call__(self, x):
        """Evaluate at an integer (residue for F_p; exact rational for Z)."""
        p = self.p
        if p is not None:
            total = 0
            for e, c in self._terms.items():
                total += c * pow(x, e, p)
            return total % p
        total = Fraction(0)
        for e, c in self._terms.items():
            total += c * Fraction(x) ** e
        return int(total) if total.denominator == 1 else total

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.p)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.p == other.p and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self._terms.items())))
        return self._hash

    # -- text ---------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if a == 1 else f"{a}*{var}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        ring = "" if self.p is None else f", p={self.p}"
        return f"LaurentPoly('{self}'{ring})"


# -- dense helpers ------------------------------------------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _field_divmod(a, b, p):
    """Polynomial divmod of dense coefficient lists over F_p."""
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return q, _trim(a[:db] if db else [])


def _int_divexact(a, b):
    """Exact quotient of dense integer polynomials, or ``None``."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i]:
            c, r = divmod(a[i], lead)
            if r:
                return None
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    if any(a[:db]):
        return None
    return q


def _prem(a, b):
    """Pseudo-remainder of dense integer polynomials."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [lead * x for x in a]
        for j in range(db + 1):
            a[shift + j] -= c * b[j]
        _trim(a)
    return a


def _content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


# -- division and normal forms -------------------------------------------


def try_divexact(a: LaurentPoly, b: LaurentPoly):
    """Return ``a / b`` in the Laurent ring, or ``None`` if ``b`` does not divide ``a``."""
    if b.p != a.p:
        raise ValueError("coefficient ring mismatch")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    la, da = a.dense()
    lb, db = b.dense()
    if a.p is None:
        q = _int_divexact(da, db)
        if q is None:
            return None
    else:
        q, r = _field_divmod(da, db, a.p)
        if r:
            return None
    return LaurentPoly.from_coeffs(q, la - lb, a.p)


def divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact Laurent division; raises :class:`NotDivisibleError` when ``b`` does not divide ``a``."""
    q = try_divexact(a, b)
    if q is None:
        raise NotDivisibleError(f"{b} does not divide {a}")
    return q


def canonicalize(a: LaurentPoly) -> LaurentPoly:
    """Unit-class representative: lowest exponent 0, leading coefficient positive (Z) or 1 (F_p)."""
    if a.is_zero():
        raise ValueError("cannot canonicalize the zero polynomial")
    a = a.shift(-a.min_exp)
    lead = a.leading_coeff
    if a.p is None:
        return -a if lead < 0 else a
    if lead != 1:
        a = a * pow(lead, -1, a.p)
    return a


def equal_up_to_unit(a: LaurentPoly, b: LaurentPoly) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero() and a.p == b.p
    return canonicalize(a) == canonicalize(b)


def gcd_poly(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Canonical gcd in the Laurent ring (a UFD, so this generates the smallest principal ideal)."""
    if a.p != b.p:
        raise ValueError("coefficient ring mismatch")
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero():
        return canonicalize(b)
    if b.is_zero():
        return canonicalize(a)
    p = a.p
    _, da = canonicalize(a).dense()
    _, db = canonicalize(b).dense()
    if p is not None:
        while db:
            _, r = _field_divmod(da, db, p)
            da, db = db, r
        return canonicalize(LaurentPoly.from_coeffs(da, 0, p))
    # primitive remainder sequence
    c = gcd(_content(da), _content(db))
    da = [x // _content(da) for x in da]
    db = [x // _content(db) for x in db]
    if len(da) < len(db):
        da, db = db, da
    while len(db) > 1:
        r = _prem(da, db)
        if not r:
            break
        cr = _content(r)
        da, db = db, [x // cr for x in r]
    if len(db) == 1:
        db = [1]
    return canonicalize(LaurentPoly.from_coeffs([c * x for x in db], 0, None))


def reduce_mod_p(a: LaurentPoly, p: int) -> LaurentPoly:
    if a.p is not None:
        raise ValueError("reduce_mod_p expects an integer polynomial")
    return LaurentPoly(a._terms, p)


def qth_power_root(h: LaurentPoly, q: int):
    """Return ``g`` with ``g**q`` unit-equal to ``h`` over F_p, or ``None``.

    In characteristic ``p`` with ``q`` a power of ``p``, Frobenius gives
    ``g(t)**q == g(t**q)``, so a root exists iff every exponent of ``h`` is
    congruent to every other modulo ``q``; coefficients carry over unchanged.
    """
    p = h.p
    if p is None:
        raise ValueError("qth_power_root needs a prime-field polynomial")
    if h.is_zero():
        raise ValueError("qth_power_root of the zero polynomial")
    k = q
    while k % p == 0:
        k //= p
    if k != 1 or q < 1:
        raise ValueError(f"{q} is not a power of the characteristic {p}")
    lo = h.min_exp
    if any((e - lo) % q for e in h._terms):
        return None
    return canonicalize(LaurentPoly({(e - lo) // q: c for e, c in h._terms.items()}, p))


def cyclotomic_like(lam: int, p=None) -> LaurentPoly:
    """``1 + t + ... + t^(lam-1)``."""
    if lam < 1:
        raise ValueError("lambda must be positive")
    return LaurentPoly({i: 1 for i in range(lam)}, p)


def det_from_charpoly(chi: LaurentPoly, lam: int) -> LaurentPoly:
    """``det(I - B t^lam)`` for any matrix ``B`` with characteristic polynomial ``chi``.

    ``chi`` is written in the variable of the polynomial (read as ``x``).
    With ``chi = x^n + c_{n-1} x^{n-1} + ... + c_0`` the result is
    ``1 + c_{n-1} s + ... + c_0 s^n`` at ``s = t^lam``.
    """
    if chi.is_zero() or chi.min_exp < 0:
        raise ValueError("characteristic polynomial must be an honest polynomial")
    n = chi.max_exp
    if chi.leading_coeff != 1:
        raise ValueError("characteristic polynomial must be monic")
    if chi.coeff(0) == 0:
        raise ValueError("characteristic polynomial has zero constant term (singular matrix)")
    return LaurentPoly({(n - e) * lam: c for e, c in chi._terms.items()}, chi.p)


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)\s*(?:\*\s*)?)?(t(?:\s*\^\s*(-?\d+))?)?\s*"
)


def parse_poly(text: str, p=None) -> LaurentPoly:
    """Parse the report text format (tolerant of spacing and ``2t`` vs ``2*t``)."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    terms = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, var, exp = m.group(1), m.group(2), m.group(3), m.group(4)
        if m.end() == pos or (num is None and var is None):
            raise ParseError(f"bad polynomial term in {text!r}", pos)
        if sign is None and not first:
            raise ParseError(f"missing operator in {text!r}", pos)
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        e = 0 if var is None else (int(exp) if exp is not None else 1)
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(terms, p)
