"""Free-group words in run-length form and the integral group ring ZF."""

from __future__ import annotations

from .laurent import LaurentPoly
from .matring import RingMatrix

__all__ = ["Word", "GroupRingElem", "reduce", "word_mul", "word_inv", "specialize", "Specializer"]


def reduce(letters) -> "Word":
    """Freely reduce a sequence of ``(generator, exponent)`` pairs."""
    out = []
    for g, e in letters:
        if e == 0:
            continue
        if g < 0:
            raise ValueError(f"negative generator index {g}")
        if out and out[-1][0] == g:
            e += out[-1][1]
            out.pop()
            if e == 0:
                continue
        out.append((g, e))
    return Word._raw(tuple(out))


class Word:
    """A freely reduced word, stored as syllables ``(generator, nonzero exponent)``."""

    __slots__ = ("syllables",)

    def __init__(self, letters=()):
        self.syllables = reduce(letters).syllables

    @classmethod
    def _raw(cls, syllables):
        w = cls.__new__(cls)
        w.syllables = syllables
        return w

    @classmethod
    def gen(cls, g, e=1):
        return cls([(g, e)])

    def __mul__(self, other):
        return word_mul(self, other)

    def inverse(self):
        return word_inv(self)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Word._raw(())
        for _ in range(k):
            out = out * self
        return out

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def letters(self):
        """Expand to single letters ``(g, +-1)``."""
        for g, e in self.syllables:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, step

    def generators(self):
        return {g for g, _ in self.syllables}

    def exponent_sum(self, g):
        return sum(e for h, e in self.syllables if h == g)

    def __eq__(self, other):
        return isinstance(other, Word) and self.syllables == other.syllables

    def __lt__(self, other):
        return self.syllables < other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def format(self, names=None):
        if not self.syllables:
            return "1"
        parts = []
        for g, e in self.syllables:
            name = names[g] if names else f"x{g + 1}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Word({list(self.syllables)!r})"


EMPTY = Word._raw(())


def word_mul(a: Word, b: Word) -> Word:
    if not a.syllables:
        return b
    if not b.syllables:
        return a
    left = list(a.syllables)
    right = b.syllables
    i = 0
    while left and i < len(right):
        g, e = left[-1]
        h, f = right[i]
        if g != h:
            break
        left.pop()
        if e + f:
            left.append((g, e + f))
            i += 1
            break
        i += 1
    return Word._raw(tuple(left) + tuple(right[i:]))


def word_inv(a: Word) -> Word:
    return Word._raw(tuple((g, -e) for g, e in reversed(a.syllables)))


class GroupRingElem:
    """A finite integer combination of free-group words."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for w, c in dict(terms).items():
                if not isinstance(w, Word):
                    w = Word(w)
                c = clean.get(w, 0) + c
                if c:
                    clean[w] = c
                else:
                    clean.pop(w, None)
        self._terms = clean

    @classmethod
    def _raw(cls, terms):
        e = cls.__new__(cls)
        e._terms = terms
        return e

    @classmethod
    def of(cls, w: Word, c=1):
        return cls._raw({w: c} if c else {})

    @classmethod
    def one(cls):
        return cls._raw({EMPTY: 1})

    @classmethod
    def zero(cls):
        return cls._raw({})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _coerce(self, other):
        if isinstance(other, GroupRingElem):
            return other
        if isinstance(other, Word):
            return GroupRingElem.of(other)
        if isinstance(other, int):
            return GroupRingElem.of(EMPTY, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for w, c in other._terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return GroupRingElem._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElem._raw({w: -c for w, c in self._terms.items()})

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

    def scale(self, c: int):
        if not c:
            return GroupRingElem.zero()
        return GroupRingElem._raw({w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = word_mul(w1, w2)
                v = out.get(w, 0) + c1 * c2
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return GroupRingElem._raw(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __eq__(self, other):
        if isinstance(other, (int, Word)):
            other = self._coerce(other)
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def format(self, names=None):
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            body = w.format(names)
            if body == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"GroupRingElem({self.format()!r})"


def gr_add(a, b):
    return a + b


def gr_mul(a, b):
    return a * b


def gr_scale(a, c):
    return a.scale(c)


class Specializer:
    """Ring homomorphism ZF -> n x n matrices over a Laurent ring.

    Generator images and their inverses are computed once, and powers of
    each image are cached.
    """

    def __init__(self, assign, n=None, p=None):
        images = {}
        for g, m in dict(assign).items():
            if isinstance(m, LaurentPoly):
                m = RingMatrix([[m]], m.p)
            images[g] = m
        dims = {m.rows for m in images.values()} | {m.cols for m in images.values()}
        if n is not None:
            dims.add(n)
        if len(dims) > 1:
            raise ValueError(f"generator images have mismatched dimensions {sorted(dims)}")
        rings = {m.p for m in images.values()}
        if p is not None or not rings:
            rings.add(p)
        if len(rings) > 1:
            raise ValueError("generator images live over different coefficient rings")
        self.n = dims.pop() if dims else 1
        self.p = rings.pop()
        self.images = images
        self.inverses = {g: m.inverse() for g, m in images.items()}
        self._powers = {}
        self._words = {}
        self.identity = RingMatrix.identity(self.n, self.p)

    def power(self, g, e):
        key = (g, e)
        hit = self._powers.get(key)
        if hit is not None:
            return hit
        try:
            base = self.images[g] if e > 0 else self.inverses[g]
        except KeyError:
            raise KeyError(f"no image assigned to generator {g}") from None
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        self._powers[key] = out
        return out

    def word(self, w: Word) -> RingMatrix:
        hit = self._words.get(w)
        if hit is not None:
            return hit
        out = self.identity
        for g, e in w.syllables:
            out = out * self.power(g, e)
        self._words[w] = out
        return out

    def __call__(self, e) -> RingMatrix:
        if isinstance(e, Word):
            return self.word(e)
        out = RingMatrix.zeros(self.n, self.n, self.p)
        for w, c in e._terms.items():
            out = out + self.word(w) * c
        return out


def specialize(e, assign) -> RingMatrix:
    """Image of a group-ring element (or word) under ``x_g -> assign[g]``."""
    return Specializer(assign)(e)
