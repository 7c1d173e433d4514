"""Fox free differential calculus."""

from __future__ import annotations

from dataclasses import dataclass

from .freegroup import EMPTY, GroupRingElem, Word, word_mul

__all__ = ["fox_derivative", "fox_derivative_elem", "syllable_derivative", "Jacobian", "jacobian"]


def syllable_derivative(g: int, k: int) -> GroupRingElem:
    """d(x^k)/dx in closed form: ``1 + x + ... + x^(k-1)`` or ``-(x^-1 + ... + x^k)``."""
    if k > 0:
        return GroupRingElem._raw({Word._raw(((g, i),)) if i else EMPTY: 1 for i in range(k)})
    return GroupRingElem._raw({Word._raw(((g, -i),)): -1 for i in range(1, -k + 1)})


def fox_derivative(w: Word, j: int) -> GroupRingElem:
    """dw/dx_j, accumulated syllable by syllable via d(uv) = du + u dv."""
    out = {}
    prefix = EMPTY
    for g, e in w.syllables:
        if g == j:
            for v, c in syllable_derivative(g, e)._terms.items():
                u = word_mul(prefix, v)
                s = out.get(u, 0) + c
                if s:
                    out[u] = s
                else:
                    out.pop(u, None)
        prefix = word_mul(prefix, Word._raw(((g, e),)))
    return GroupRingElem._raw(out)


def fox_derivative_elem(e: GroupRingElem, j: int) -> GroupRingElem:
    out = GroupRingElem.zero()
    for w, c in e._terms.items():
        out = out + fox_derivative(w, j).scale(c)
    return out


@dataclass(frozen=True)
class Jacobian:
    """``entries[i][j] = dR_i/dx_j`` for a presentation's relators and generators."""

    entries: tuple
    num_generators: int
    source: object = None

    @property
    def shape(self):
        return len(self.entries), self.num_generators


def jacobian(pres) -> Jacobian:
    m = pres.num_generators
    rows = tuple(tuple(fox_derivative(r, j) for j in range(m)) for r in pres.relators)
    return Jacobian(rows, m, pres)
