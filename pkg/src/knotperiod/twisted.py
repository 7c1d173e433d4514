"""Representations into GL_n(F_p) and twisted Alexander invariants.

A representation sends generator ``x_j`` to an invertible matrix
``rho(x_j)``; combined with the abelianization exponents this gives the
action ``x_j -> rho(x_j) t^(e_j)`` on ``F_p[t^-1, t]^n``.  From it:

* Wada's invariant ``det(A_j) / det(I - Phi(x_j))`` for any column ``j``
  with nonzero denominator,
* ``delta0``: the gcd of the ``n x n`` minors of the stacked blocks
  ``I - Phi(x_j)`` (the order of H_0),
* the twisted Alexander polynomial ``Delta = Delta^W * delta0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .alexander import PsiAction, psi_action
from .errors import ComputationError, InvalidInputError, ParseError
from .fox import jacobian
from .freegroup import Specializer, Word
from .laurent import LaurentPoly, canonicalize, is_prime, try_divexact
from .matring import RingMatrix, apply_action, delete_block_column, determinant, minors_gcd, stack_blocks

__all__ = [
    "Representation",
    "RepSearch",
    "validate_representation",
    "find_representations",
    "general_linear_group",
    "phi_assignment",
    "evaluate_word",
    "WadaPoly",
    "wada_poly",
    "wada_all_columns",
    "delta0",
    "twisted_alexander",
    "read_rep",
    "format_rep",
    "charpoly",
]


# -- small dense linear algebra over F_p ------------------------------------


def mat_mul(a, b, p):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n))
        for i in range(n)
    )


def mat_identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_det(a, p):
    a = [list(r) for r in a]
    n = len(a)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] % p), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k] % p
        inv = pow(a[k][k], -1, p)
        for i in range(k + 1, n):
            f = a[i][k] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[k])]
    return det % p


def mat_inv(a, p):
    n = len(a)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] % p), None)
        if piv is None:
            raise InvalidInputError("matrix is singular mod p")
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = pow(aug[k][k], -1, p)
        aug[k] = [x * inv % p for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[k])]
    return tuple(tuple(r[n:]) for r in aug)


def charpoly(a, p) -> LaurentPoly:
    """Characteristic polynomial ``det(x I - a)`` written in the variable ``t``."""
    n = len(a)
    m = RingMatrix([[LaurentPoly({1: int(i == j)}, p) - a[i][j] for j in range(n)] for i in range(n)], p)
    return determinant(m)


def general_linear_group(n, p):
    """All invertible ``n x n`` matrices over F_p, in lexicographic order."""
    out = []
    for flat in itertools.product(range(p), repeat=n * n):
        m = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if mat_det(m, p):
            out.append(m)
    return out


# -- representations ----------------------------------------------------


@dataclass(frozen=True)
class Representation:
    """``images[j]`` is the matrix of generator ``j``, entries in ``range(p)``."""

    p: int
    n: int
    images: tuple

    def image_of_word(self, w: Word):
        out = mat_identity(self.n)
        for g, e in w.syllables:
            base = self.images[g] if e > 0 else mat_inv(self.images[g], self.p)
            for _ in range(abs(e)):
                out = mat_mul(out, base, self.p)
        return out

    def is_trivial(self):
        ident = mat_identity(self.n)
        return all(m == ident for m in self.images)

    def conjugate(self, g):
        gi = mat_inv(g, self.p)
        return Representation(self.p, self.n, tuple(mat_mul(mat_mul(g, m, self.p), gi, self.p)
                                                    for m in self.images))


def _normalize_matrix(m, n, p):
    m = tuple(tuple(int(x) % p for x in row) for row in m)
    if len(m) != n or any(len(r) != n for r in m):
        raise InvalidInputError(f"representation images must be {n}x{n}")
    return m


def validate_representation(pres, images, p) -> Representation:
    """Build a :class:`Representation`, checking invertibility and every relator."""
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    images = list(images)
    if len(images) != pres.num_generators:
        raise InvalidInputError(
            f"expected {pres.num_generators} generator images, got {len(images)}")
    n = len(images[0]) if images else 1
    mats = tuple(_normalize_matrix(m, n, p) for m in images)
    for j, m in enumerate(mats):
        if not mat_det(m, p):
            raise InvalidInputError(f"image of generator {pres.names[j]} is singular mod {p}")
    rep = Representation(p, n, mats)
    ident = mat_identity(n)
    for i, r in enumerate(pres.relators):
        if rep.image_of_word(r) != ident:
            raise InvalidInputError(f"relator {i + 1} ({r.format(pres.names)}) is not sent to the identity")
    return rep


def trivial_representation(pres, p, n=1) -> Representation:
    ident = mat_identity(n)
    return Representation(p, n, (ident,) * pres.num_generators)


@dataclass
class RepSearch:
    reps: list
    truncated: bool
    nodes: int

    def __iter__(self):
        return iter(self.reps)

    def __len__(self):
        return len(self.reps)


def _conjugacy_class(b, group, p):
    return {mat_mul(mat_mul(g, b, p), mat_inv(g, p), p) for g in group}


def find_representations(pres, p, n, *, max_nodes=10**6, max_candidates=None,
                         conjugacy_class=None, up_to_conjugacy=False,
                         max_p=5, max_n=2) -> RepSearch:
    """Enumerate homomorphisms to GL_n(F_p) by backtracking over generator images.

    A relator with exactly one unassigned generator, occurring once with
    exponent +-1, determines that generator's image.  With
    ``conjugacy_class`` every image is restricted to the class of the
    given matrix (sound for Wirtinger presentations, whose generators are
    conjugate).  ``up_to_conjugacy`` keeps one representative per
    simultaneous-conjugation orbit.
    """
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if p > max_p or n > max_n:
        raise InvalidInputError(f"search limited to p <= {max_p}, n <= {max_n}; raise the caps explicitly")
    group = general_linear_group(n, p)
    candidates = group
    allowed = None
    if conjugacy_class is not None:
        b = _normalize_matrix(conjugacy_class, n, p)
        allowed = _conjugacy_class(b, group, p)
        candidates = sorted(allowed)
    inverse = {g: mat_inv(g, p) for g in group}
    m = pres.num_generators
    relators = [list(r.syllables) for r in pres.relators]
    ident = mat_identity(n)

    def evaluate(syl, images):
        out = ident
        for g, e in syl:
            base = images[g] if e > 0 else inverse[images[g]]
            for _ in range(abs(e)):
                out = mat_mul(out, base, p)
        return out

    found = []
    nodes = 0
    truncated = False

    def propagate(images):
        """Fill forced images; return False on contradiction."""
        changed = True
        while changed:
            changed = False
            for syl in relators:
                free = [i for i, (g, _) in enumerate(syl) if images[g] is None]
                if not free:
                    if evaluate(syl, images) != ident:
                        return False
                    continue
                gens = {syl[i][0] for i in free}
                if len(free) != 1 or abs(syl[free[0]][1]) != 1:
                    continue
                (g,) = gens
                i = free[0]
                u = evaluate(syl[:i], images)
                v = evaluate(syl[i + 1:], images)
                # u x^e v = 1  =>  x^e = u^-1 v^-1
                val = mat_mul(inverse[u], inverse[v], p)
                if syl[i][1] < 0:
                    val = inverse[val]
                if allowed is not None and val not in allowed:
                    return False
                images[g] = val
                changed = True
        return True

    def search(images):
        nonlocal nodes, truncated
        if truncated:
            return
        nodes += 1
        if nodes > max_nodes:
            truncated = True
            return
        images = list(images)
        if not propagate(images):
            return
        try:
            j = images.index(None)
        except ValueError:
            found.append(Representation(p, n, tuple(images)))
            if max_candidates is not None and len(found) >= max_candidates:
                truncated = True
            return
        for c in candidates:
            images[j] = c
            search(images)
            if truncated:
                return
        images[j] = None

    search([None] * m)
    reps = sorted(set(found), key=lambda r: r.images)
    if up_to_conjugacy:
        seen = set()
        unique = []
        for rep in reps:
            orbit_key = min(rep.conjugate(g).images for g in group)
            if orbit_key not in seen:
                seen.add(orbit_key)
                unique.append(Representation(p, n, orbit_key))
        reps = unique
    return RepSearch(reps, truncated, nodes)


# -- the twisted action --------------------------------------------------


def _psi_for(pres, psi, component):
    return psi if psi is not None else psi_action(pres, component)


def phi_assignment(rep: Representation, psi: PsiAction):
    """Generator ``j`` -> ``rho(x_j) t^(e_j)`` as a matrix over F_p[t^-1, t]."""
    return {j: RingMatrix.from_ints(rep.images[j], rep.p, power=psi.exponents[j])
            for j in range(len(rep.images))}


def evaluate_word(rep: Representation, w: Word, psi: PsiAction) -> RingMatrix:
    return Specializer(phi_assignment(rep, psi), n=rep.n, p=rep.p).word(w)


def _twisted_matrix(pres, rep, psi):
    return apply_action(jacobian(pres), phi_assignment(rep, psi), n=rep.n, p=rep.p)


def _denominator(rep, psi, j):
    block = RingMatrix.identity(rep.n, rep.p) - RingMatrix.from_ints(rep.images[j], rep.p, power=psi.exponents[j])
    return determinant(block)


@dataclass(frozen=True)
class WadaPoly:
    numerator: LaurentPoly
    denominator: LaurentPoly
    column: int

    def __str__(self):
        return f"({self.numerator}) / ({self.denominator})"


def _check_pres(pres, rep):
    if pres.deficiency != 1:
        raise InvalidInputError("twisted invariants need a deficiency-one presentation")
    if len(rep.images) != pres.num_generators:
        raise InvalidInputError("representation does not match the presentation's generators")


def wada_all_columns(pres, rep, psi=None, component=0):
    """Unnormalized ``{j: (det A_j^Phi, det(I - Phi x_j))}`` for every admissible column."""
    _check_pres(pres, rep)
    psi = _psi_for(pres, psi, component)
    a_phi = _twisted_matrix(pres, rep, psi)
    out = {}
    for j in range(pres.num_generators):
        den = _denominator(rep, psi, j)
        if den:
            out[j] = (determinant(delete_block_column(a_phi, j, rep.n)), den)
    return out


def wada_poly(pres, rep, psi=None, component=0) -> WadaPoly:
    """Wada's invariant from the first column with ``det(I - Phi x_j) != 0``."""
    _check_pres(pres, rep)
    psi = _psi_for(pres, psi, component)
    a_phi = None
    for j in range(pres.num_generators):
        den = _denominator(rep, psi, j)
        if not den:
            continue
        if a_phi is None:
            a_phi = _twisted_matrix(pres, rep, psi)
        num = determinant(delete_block_column(a_phi, j, rep.n))
        num = canonicalize(num) if num else num
        return WadaPoly(num, canonicalize(den), j)
    raise ComputationError("det(I - Phi(x_j)) vanishes for every generator")


def delta0(pres, rep, psi=None, component=0) -> LaurentPoly:
    """Gcd of the ``n x n`` minors of the stacked blocks ``I - Phi(x_j)``."""
    psi = _psi_for(pres, psi, component)
    ident = RingMatrix.identity(rep.n, rep.p)
    blocks = [ident - RingMatrix.from_ints(rep.images[j], rep.p, power=psi.exponents[j])
              for j in range(pres.num_generators)]
    if not blocks:
        raise ComputationError("presentation has no generators")
    g = minors_gcd(stack_blocks(blocks), rep.n)
    if not g:
        raise ComputationError("every generator acts trivially; H_0 is free")
    return g


def twisted_alexander(pres, rep, psi=None, component=0) -> LaurentPoly:
    """``Delta = Delta^W * delta0``; the division is required to be exact."""
    psi = _psi_for(pres, psi, component)
    w = wada_poly(pres, rep, psi)
    if not w.numerator:
        return w.numerator
    d0 = delta0(pres, rep, psi)
    q = try_divexact(w.numerator * d0, w.denominator)
    if q is None:
        raise ComputationError(
            f"denominator {w.denominator} does not divide numerator * delta0 = {w.numerator * d0}")
    return canonicalize(q)


# -- file format -----------------------------------------------------------


def format_rep(rep: Representation) -> str:
    lines = [f"{rep.p} {rep.n}"]
    for m in rep.images:
        for row in m:
            lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def read_rep(text: str, pres=None):
    """Parse ``p n`` followed by one ``n x n`` matrix per generator.

    With ``pres`` the images are validated against its relators and a
    :class:`Representation` is returned; otherwise ``(p, n, images)``.
    """
    rows = [line.split("#", 1)[0].split() for line in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows or len(rows[0]) != 2:
        raise ParseError("representation file must start with 'p n'", 0)
    try:
        p, n = int(rows[0][0]), int(rows[0][1])
        body = [[int(x) for x in r] for r in rows[1:]]
    except ValueError:
        raise ParseError("representation entries must be integers") from None
    if n < 1 or any(len(r) != n for r in body) or len(body) % n:
        raise ParseError(f"expected rows of {n} residues in blocks of {n}")
    images = [tuple(tuple(r) for r in body[i:i + n]) for i in range(0, len(body), n)]
    if pres is None:
        return p, n, images
    return validate_representation(pres, images, p)
