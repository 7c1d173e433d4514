"""Periodicity obstructions: the classical congruence mod p and its twisted form.

For a knot with period ``q = p^r`` and linking number ``lam`` with the axis,

    Delta_K = f^q * (1 + t + ... + t^(lam-1))^(q-1)    (mod p, up to units)

and with a representation ``rho`` of dimension ``n``

    Delta_{K,rho} * d0^(q-1) = f^q * det(I - B t^lam)^(q-1)

where ``B = rho(l_A)`` and ``d0`` is the degree-0 invariant of the quotient.
The searches below enumerate every witness within the given bounds; an
empty result is evidence bounded by those caps, nothing more.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import gcd

from .alexander import alexander_poly, psi_action
from .errors import ComputationError, InvalidInputError
from .laurent import (
    LaurentPoly,
    canonicalize,
    cyclotomic_like,
    det_from_charpoly,
    equal_up_to_unit,
    is_prime,
    qth_power_root,
    reduce_mod_p,
    try_divexact,
)
from .matring import RingMatrix, determinant
from .twisted import charpoly, delta0, evaluate_word, twisted_alexander, wada_poly

__all__ = [
    "MuraWitness",
    "TwistedWitness",
    "murasugi_check",
    "murasugi_verify",
    "twisted_search",
    "twisted_verify",
    "monic_polys",
    "delta0_candidates",
    "obstruction_report",
    "dump_report",
    "CONSISTENT",
    "EXCLUDED",
]

CONSISTENT = "consistent-with-period"
EXCLUDED = "period-excluded-within-caps"


def _period(p, r):
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if r < 1:
        raise InvalidInputError("r must be positive")
    return p ** r


def _mod_p(delta: LaurentPoly, p):
    if delta.p is None:
        delta = reduce_mod_p(delta, p)
    elif delta.p != p:
        raise InvalidInputError(f"polynomial lives over F_{delta.p}, expected F_{p}")
    if delta.is_zero():
        raise InvalidInputError("polynomial vanishes mod p; the condition is vacuous")
    return canonicalize(delta)


def _is_symmetric(f: LaurentPoly):
    return canonicalize(f.substitute_power(-1)) == f


def _sort_key(poly: LaurentPoly):
    low, coeffs = poly.dense()
    return (len(coeffs), tuple(reversed(coeffs)))


@dataclass(frozen=True)
class MuraWitness:
    lam: int
    f: LaurentPoly

    def target(self, q):
        return self.f ** q * cyclotomic_like(self.lam, self.f.p) ** (q - 1)

    def verify(self, delta, q):
        return self.f(1) != 0 and equal_up_to_unit(self.target(q), delta)

    def as_dict(self):
        return {"lambda": self.lam, "f": str(self.f), "f_symmetric": _is_symmetric(self.f)}


@dataclass(frozen=True)
class TwistedWitness:
    lam: int
    chi: LaurentPoly
    delta0_candidate: LaurentPoly
    f: LaurentPoly

    @property
    def D(self):
        return det_from_charpoly(self.chi, self.lam)

    def verify(self, delta, q):
        lhs = delta * self.delta0_candidate ** (q - 1)
        return equal_up_to_unit(lhs, self.f ** q * self.D ** (q - 1))

    def as_dict(self):
        return {
            "lambda": self.lam,
            "chi": str(self.chi).replace("t", "x"),
            "delta0_candidate": str(self.delta0_candidate),
            "D": str(self.D),
            "f": str(self.f),
            "f_symmetric": _is_symmetric(self.f),
        }


def _degree_ok(delta, q, f, D, d0):
    return delta.width == q * f.width + (q - 1) * (D.width - d0.width)


def _lambdas(p, lambda_max):
    return [lam for lam in range(1, lambda_max + 1) if gcd(lam, p) == 1]


def murasugi_check(delta: LaurentPoly, p: int, r: int, lambda_max=None):
    """All witnesses ``(lam, f)`` of the classical congruence with ``lam <= lambda_max``.

    The default bound ``deg(Delta) // (q - 1) + 1`` follows from degree
    counting.  ``f`` must satisfy ``f(1) != 0`` mod p; no other constraint is
    imposed.
    """
    q = _period(p, r)
    delta = _mod_p(delta, p)
    if lambda_max is None:
        lambda_max = delta.width // (q - 1) + 1
    out = []
    for lam in _lambdas(p, lambda_max):
        h = try_divexact(delta, cyclotomic_like(lam, p) ** (q - 1))
        if h is None:
            continue
        f = qth_power_root(h, q)
        if f is None or f(1) == 0:
            continue
        w = MuraWitness(lam, f)
        if not w.verify(delta, q):
            raise ComputationError(f"witness {w} failed its round-trip check")
        out.append(w)
    return out


def murasugi_verify(k_pres, kbar_pres, lam: int, p: int, r: int):
    """Check ``Delta_K = Delta_Kbar^q * c_lam^(q-1)`` mod p with ``f = Delta_Kbar``."""
    q = _period(p, r)
    dk = alexander_poly(k_pres, p=p)
    dbar = alexander_poly(kbar_pres, p=p)
    rhs = dbar ** q * cyclotomic_like(lam, p) ** (q - 1)
    rhs = canonicalize(rhs) if rhs else rhs
    return {
        "identity": "Delta_K = Delta_Kbar^q (1 + t + ... + t^(lambda-1))^(q-1) mod p",
        "p": p, "r": r, "q": q, "lambda": lam,
        "lhs": str(dk), "rhs": str(rhs),
        "equal": equal_up_to_unit(dk, rhs),
    }


def monic_polys(p, n, nonzero_constant=True):
    """Monic degree-``n`` polynomials over F_p, optionally with nonzero constant term."""
    if n < 1:
        raise ValueError("degree must be positive")
    lows = range(1, p) if nonzero_constant else range(p)
    for c0 in lows:
        for mid in itertools.product(range(p), repeat=n - 1):
            yield LaurentPoly.from_coeffs([c0, *mid, 1], 0, p)


def delta0_candidates(p, n):
    """Canonical polynomials of degree ``<= n`` with nonzero constant term."""
    out = [LaurentPoly.constant(1, p)]
    for k in range(1, n + 1):
        out.extend(monic_polys(p, k))
    return out


def twisted_search(delta_rho: LaurentPoly, p: int, r: int, n: int, lambda_max=None, max_chi=None,
                   chis=None, delta0s=None):
    """Enumerate ``(lam, chi, d0, f)`` with ``Delta * d0^(q-1) = f^q * det(I - B t^lam)^(q-1)``.

    ``chi`` runs over monic degree-``n`` polynomials with ``chi(0) != 0`` (the
    characteristic polynomial of ``B``) and ``d0`` over canonical
    polynomials of degree ``<= n`` with nonzero constant term.  ``chis`` and
    ``delta0s`` restrict the enumeration to explicit lists.

    Returns ``(witnesses, exhausted)``; ``exhausted`` is False when
    ``max_chi`` cut the characteristic-polynomial enumeration short.
    """
    q = _period(p, r)
    if n < 1:
        raise InvalidInputError("dimension must be positive")
    delta = _mod_p(delta_rho, p)
    if lambda_max is None:
        lambda_max = delta.width // ((q - 1) * n) + 1
    if chis is None:
        chis = list(monic_polys(p, n))
    if delta0s is None:
        delta0s = delta0_candidates(p, n)
    exhausted = True
    if max_chi is not None and len(chis) > max_chi:
        chis = chis[:max_chi]
        exhausted = False
    lifted = [(d0, delta * d0 ** (q - 1)) for d0 in delta0s]
    out = []
    for lam in _lambdas(p, lambda_max):
        for chi in chis:
            D = det_from_charpoly(chi, lam)
            Dq = D ** (q - 1)
            for d0, lhs in lifted:
                h = try_divexact(lhs, Dq)
                if h is None:
                    continue
                f = qth_power_root(h, q)
                if f is None:
                    continue
                w = TwistedWitness(lam, chi, d0, f)
                if not w.verify(delta, q) or not _degree_ok(delta, q, f, D, d0):
                    raise ComputationError(f"witness {w} failed its round-trip check")
                out.append(w)
    out.sort(key=lambda w: (w.lam, _sort_key(w.chi), _sort_key(w.delta0_candidate), _sort_key(w.f)))
    return out, exhausted


def _matrix_part(rep, lA_word, psi, lam):
    """``rho(l_A)`` from the Phi-image of ``lA_word``, checking its t-degree is ``lam``."""
    image = evaluate_word(rep, lA_word, psi)
    powers = {e for i in range(rep.n) for j in range(rep.n) for e in image[i, j].terms}
    if len(powers) > 1:
        raise ComputationError("image of l_A is not a monomial matrix in t")
    e = powers.pop() if powers else 0
    if e != lam:
        raise InvalidInputError(f"l_A abelianizes to t^{e}, but lambda = {lam}")
    return tuple(tuple(image[i, j].coeff(e) % rep.p for j in range(rep.n)) for i in range(rep.n))


def twisted_verify(k_pres, rep, kbar_pres, repbar, lA_word, lam: int, p: int, r: int,
                   link_pres=None, link_rep=None, component=0):
    """Evaluate both forms of the twisted condition and, with a link, the axis identity.

    Every comparison is made up to units.  ``rep`` acts on ``k_pres`` and
    ``lA_word`` is a word in its generators representing the axis longitude.
    """
    q = _period(p, r)
    for rho in (rep, repbar, link_rep):
        if rho is not None and rho.p != p:
            raise InvalidInputError(f"representation is over F_{rho.p}, expected F_{p}")
    psi = psi_action(k_pres)
    B = _matrix_part(rep, lA_word, psi, lam)
    n = rep.n
    D = determinant(RingMatrix.identity(n, p) - RingMatrix.from_ints(B, p, power=lam))
    chi = charpoly(B, p)
    if not equal_up_to_unit(D, det_from_charpoly(chi, lam)):
        raise ComputationError("det(I - B t^lambda) disagrees with its characteristic-polynomial form")
    dk = twisted_alexander(k_pres, rep)
    dbar = twisted_alexander(kbar_pres, repbar)
    d0bar = delta0(kbar_pres, repbar)
    wbar = wada_poly(kbar_pres, repbar)

    def check(name, lhs, rhs):
        return {"identity": name, "lhs": str(canonicalize(lhs) if lhs else lhs),
                "rhs": str(canonicalize(rhs) if rhs else rhs), "equal": equal_up_to_unit(lhs, rhs)}

    checks = [
        check("Delta_K * Delta0_Kbar^(q-1) = Delta_Kbar^q * D^(q-1)",
              dk * d0bar ** (q - 1), dbar ** q * D ** (q - 1)),
        check("Delta_K * den_Kbar^(q-1) = Delta_Kbar * (num_Kbar * D)^(q-1)",
              dk * wbar.denominator ** (q - 1), dbar * (wbar.numerator * D) ** (q - 1)),
    ]
    if link_pres is not None:
        if link_rep is None:
            raise InvalidInputError("a link presentation needs its own representation")
        dl = twisted_alexander(link_pres, link_rep, component=component)
        checks.append(check("Delta_L = D * Delta_K", dl, D * dk))
    return {
        "p": p, "r": r, "q": q, "lambda": lam, "n": n,
        "rho_lA": [list(row) for row in B],
        "D": str(canonicalize(D)),
        "delta_K": str(dk), "delta_Kbar": str(dbar), "delta0_Kbar": str(d0bar),
        "checks": checks,
        "equal": all(c["equal"] for c in checks),
    }


def obstruction_report(source, p, r, caps, witnesses, exhausted=True, **extra):
    """Report dict with the fixed field set used by the command line."""
    report = {
        "input": source,
        "p": p,
        "r": r,
        "q": p ** r,
        "caps": caps,
        "witnesses": [w.as_dict() for w in witnesses],
        "exhausted": exhausted,
        "verdict": CONSISTENT if witnesses else EXCLUDED,
    }
    report.update(extra)
    return report


def dump_report(report) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
