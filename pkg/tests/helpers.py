"""Shared generators and independent oracles for the test suite."""

import itertools
import random

import sympy as sp

from knotperiod.freegroup import Word
from knotperiod.laurent import LaurentPoly, canonicalize, reduce_mod_p

T = sp.Symbol("t")


def random_word(rng, ngens=3, length=8, max_exp=3):
    letters = []
    for _ in range(rng.randint(0, length)):
        e = rng.randint(-max_exp, max_exp)
        letters.append((rng.randrange(ngens), e or 1))
    return Word(letters)


def random_poly(rng, p=None, low=-2, high=3, coeff=4, density=0.7):
    terms = {}
    for e in range(rng.randint(low, 0), rng.randint(0, high) + 1):
        if rng.random() < density:
            terms[e] = rng.randrange(p) if p else rng.randint(-coeff, coeff)
    return LaurentPoly(terms, p)


def to_sympy(a: LaurentPoly):
    """Return ``(expr, shift)`` with ``a = expr * t^-shift`` and ``expr`` an honest polynomial."""
    if a.is_zero():
        return sp.Integer(0), 0
    shift = -a.min_exp
    return sum(c * T ** (e + shift) for e, c in a.items()), shift


def sympy_poly(a: LaurentPoly):
    expr, _ = to_sympy(a)
    if a.p is None:
        return sp.Poly(expr, T, domain="ZZ")
    return sp.Poly(expr, T, modulus=a.p)


def from_sympy_poly(poly, p=None):
    terms = {}
    for (e,), c in poly.terms():
        c = int(c)
        terms[e] = c % p if p else c
    return LaurentPoly(terms, p)


def seed_rng(seed=0):
    return random.Random(seed)


def gf_monic(expr, p):
    return sp.Poly(expr, T, modulus=p).monic()


def murasugi_oracle(delta, p, r):
    """Every (lam, f) found by trying all f over F_p of degree <= deg/q, with sympy arithmetic."""
    q = p ** r
    if delta.p is None:
        delta = reduce_mod_p(delta, p)
    target = gf_monic(sympy_poly(canonicalize(delta)).as_expr(), p)
    deg = target.degree()
    out = set()
    for lam in range(1, deg // (q - 1) + 2):
        if lam % p == 0:
            continue
        cyc = sum(T ** i for i in range(lam))
        for k in range(deg // q + 1):
            for mid in itertools.product(range(p), repeat=max(k - 1, 0)):
                f = 1 + sum(c * T ** (i + 1) for i, c in enumerate(mid)) + (T ** k if k else 0)
                for c0 in range(1, p) if k else [1]:
                    g = f + (c0 - 1)
                    fp = gf_monic(g, p)
                    if fp.eval(1) % p == 0:
                        continue
                    if gf_monic(g ** q * cyc ** (q - 1), p) == target:
                        out.add((lam, str(from_sympy_poly(fp, p))))
    return out
