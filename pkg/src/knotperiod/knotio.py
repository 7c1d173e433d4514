"""Diagram and presentation input: PD codes, Wirtinger presentations, linking numbers.

PD convention: ``X(a, b, c, d)`` lists the four edge labels counterclockwise
starting from the incoming under-edge ``a``; ``c`` is the outgoing
under-edge and ``b``/``d`` carry the over-strand.  Labels increase along
the orientation of each component.  A crossing is positive when the
over-strand runs ``d -> b``; this is the right-handed crossing for that
picture and agrees with the KnotTheory tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

from .errors import InvalidInputError, ParseError
from .freegroup import Word
from .smith import abelianization

__all__ = [
    "PDCode",
    "Presentation",
    "parse_pd",
    "wirtinger",
    "linking_number",
    "torus_presentation",
    "parse_presentation",
    "parse_word",
    "pd_from_braid",
    "sublink",
]

UNDER, OVER = 0, 1


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class PDCode:
    """A planar diagram.

    ``components`` lists the edge labels of each component in traversal
    order; component ids are positions in that tuple.  ``PD[]`` (no
    crossings, one component, no labels) is the round unknot.
    """

    crossings: tuple
    components: tuple = field(default=((),))

    @cached_property
    def component_of(self):
        return {lab: i for i, comp in enumerate(self.components) for lab in comp}

    @property
    def num_components(self):
        return len(self.components)

    @cached_property
    def _orientation(self):
        return _orient(self.crossings)

    @property
    def over_incoming_at_d(self):
        return self._orientation

    def sign(self, k) -> int:
        """+1 for a right-handed crossing, -1 otherwise."""
        return 1 if self._orientation[k] else -1

    @cached_property
    def signs(self):
        return tuple(self.sign(k) for k in range(len(self.crossings)))

    def over_in_out(self, k):
        a, b, c, d = self.crossings[k]
        return (d, b) if self._orientation[k] else (b, d)

    def passage_components(self, k):
        """``(under component, over component)`` at crossing ``k``."""
        a, b, c, d = self.crossings[k]
        return self.component_of[a], self.component_of[b]

    def events(self):
        """Per component, the cyclic list of ``(crossing, UNDER|OVER)`` passages."""
        where = {}
        for k, (a, b, c, d) in enumerate(self.crossings):
            o_in, _ = self.over_in_out(k)
            where[a] = (k, UNDER)
            where[o_in] = (k, OVER)
        return [[where[lab] for lab in comp] for comp in self.components]

    def __str__(self):
        body = ",".join("X({},{},{},{})".format(*x) for x in self.crossings)
        text = f"PD[{body}]"
        if len(self.components) > 1:
            groups = ", ".join("(" + ",".join(map(str, comp)) + ")" for comp in self.components)
            text += f"; components: {groups}"
        return text


def _orient(crossings):
    """For each crossing, whether the over-strand enters at ``d``."""
    slots = {}
    for k, x in enumerate(crossings):
        for pos, lab in enumerate(x):
            slots.setdefault(lab, []).append((k, pos))
    incoming = {}
    stack = []

    def assign(slot, value):
        old = incoming.get(slot)
        if old is None:
            incoming[slot] = value
            stack.append(slot)
        elif old != value:
            raise InvalidInputError(f"inconsistent strand orientation at crossing {slot[0] + 1}")

    def propagate():
        while stack:
            k, pos = stack.pop()
            value = incoming[(k, pos)]
            assign((k, pos ^ 2), not value)
            lab = crossings[k][pos]
            for other in slots[lab]:
                if other != (k, pos):
                    assign(other, not value)

    for k in range(len(crossings)):
        assign((k, 0), True)
        assign((k, 2), False)
    propagate()
    for k, (a, b, c, d) in enumerate(crossings):
        if (k, 3) not in incoming:
            # strand never passes under: orient by increasing labels
            assign((k, 3), d == b + 1 or (b != d + 1 and d < b))
            propagate()
    return tuple(incoming[(k, 3)] for k in range(len(crossings)))


_PD_HEAD = re.compile(r"\s*PD\s*\[", re.I)
_PD_X = re.compile(r"\s*X\s*[\(\[]\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*[\)\]]\s*", re.I)


def parse_pd(text: str) -> PDCode:
    """Parse ``PD[X(a,b,c,d), ...]`` with an optional ``; components: (..), (..)`` suffix."""
    m = _PD_HEAD.match(text)
    if not m:
        raise ParseError("expected 'PD['", 0)
    pos = m.end()
    crossings = []
    while True:
        rest = text[pos:]
        if rest.lstrip().startswith("]"):
            pos += len(rest) - len(rest.lstrip()) + 1
            break
        m = _PD_X.match(text, pos)
        if not m:
            raise ParseError("expected X(a,b,c,d) or ']'", pos)
        crossings.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
        if text.startswith(",", pos):
            pos += 1
        elif not text[pos:].lstrip().startswith("]"):
            raise ParseError("expected ',' or ']'", pos)
    annotated = None
    tail = text[pos:].strip()
    if tail:
        am = re.fullmatch(r";?\s*components\s*:\s*(.*)", tail, re.S | re.I)
        if not am:
            raise ParseError("unexpected trailing text", pos)
        groups = re.findall(r"\(([^)]*)\)", am.group(1))
        if not groups:
            raise ParseError("empty component annotation", pos)
        try:
            annotated = [tuple(int(x) for x in g.replace(",", " ").split()) for g in groups]
        except ValueError:
            raise ParseError("component annotation must list integer labels", pos) from None
    return _build_pd(crossings, annotated)


def _build_pd(crossings, annotated=None) -> PDCode:
    crossings = tuple(tuple(x) for x in crossings)
    if not crossings:
        if annotated and any(annotated):
            raise InvalidInputError("component annotation given for an empty diagram")
        return PDCode((), ((),))
    counts = {}
    for x in crossings:
        for lab in x:
            if lab <= 0:
                raise InvalidInputError(f"arc label {lab} is not a positive integer")
            counts[lab] = counts.get(lab, 0) + 1
    bad = sorted(lab for lab, n in counts.items() if n != 2)
    if bad:
        raise InvalidInputError(f"arc labels must appear exactly twice; offending labels {bad}")
    uf = _UnionFind()
    for a, b, c, d in crossings:
        uf.union(a, c)
        uf.union(b, d)
    classes = {}
    for lab in counts:
        classes.setdefault(uf.find(lab), []).append(lab)
    comps = sorted((sorted(v) for v in classes.values()), key=lambda v: v[0])
    for comp in comps:
        if comp != list(range(comp[0], comp[0] + len(comp))):
            raise InvalidInputError(f"component labels {comp} are not a contiguous run")
    if annotated is not None:
        if sorted(sorted(g) for g in annotated) != comps:
            raise InvalidInputError("component annotation does not match the diagram's components")
        comps = [sorted(g) for g in annotated]
    pd = PDCode(crossings, tuple(tuple(c) for c in comps))
    orient = pd._orientation
    # put each component's labels in traversal order
    succ = {}
    for k, (a, b, c, d) in enumerate(crossings):
        succ[a] = c
        if orient[k]:
            succ[d] = b
        else:
            succ[b] = d
    ordered = []
    for comp in comps:
        start = min(comp)
        seq = [start]
        while succ[seq[-1]] != start:
            seq.append(succ[seq[-1]])
            if len(seq) > len(comp):
                raise InvalidInputError("component traversal does not close up")
        if sorted(seq) != sorted(comp):
            raise InvalidInputError("component traversal does not visit all of its labels")
        ordered.append(tuple(seq))
    return PDCode(crossings, tuple(ordered))


def _pd_from_events(signs, comps) -> PDCode:
    """Build a PD code from per-component passage sequences.

    ``signs[k]`` is the sign of crossing ``k``; ``comps`` lists, for each
    component, its cyclic sequence of ``(crossing, UNDER|OVER)`` events.
    Labels are assigned consecutively along each component.
    """
    label = 1
    ends = {}
    for events in comps:
        if not events:
            raise InvalidInputError("component without crossings in a multi-crossing diagram")
        n = len(events)
        labels = list(range(label, label + n))
        for i, ev in enumerate(events):
            ends.setdefault(ev, {})["in"] = labels[i - 1]
            ends[ev]["out"] = labels[i]
        label += n
    crossings = []
    for k in sorted(signs):
        u, o = ends[(k, UNDER)], ends[(k, OVER)]
        if signs[k] > 0:
            crossings.append((u["in"], o["out"], u["out"], o["in"]))
        else:
            crossings.append((u["in"], o["in"], u["out"], o["out"]))
    groups = []
    label = 1
    for events in comps:
        groups.append(tuple(range(label, label + len(events))))
        label += len(events)
    return _build_pd(crossings, groups)


def pd_from_braid(braid, strands: int, axis: bool = False) -> PDCode:
    """PD code of a braid closure; ``braid`` lists generators as signed 1-based ints.

    With ``axis=True`` an unknotted circle encircling all strands (the
    braid axis) is appended as the last component; it links the closure
    ``strands`` times.
    """
    braid = list(braid)
    if any(g == 0 or abs(g) >= strands for g in braid):
        raise InvalidInputError(f"braid generators must lie in 1..{strands - 1}")
    signs = {}
    top = {}
    offset = 0
    if axis:
        for k in range(strands):
            signs[k] = -1                  # axis over strand k
            signs[strands + k] = -1        # axis under strand k
            top[k] = [(k, UNDER), (strands + k, OVER)]
        offset = 2 * strands
    path = {}
    perm = {}
    for k in range(strands):
        pos = k
        ev = list(top.get(k, []))
        for c, g in enumerate(braid):
            i = abs(g) - 1
            if pos in (i, i + 1):
                left = pos == i
                over = (not left) if g > 0 else left
                ev.append((offset + c, OVER if over else UNDER))
                pos = i + 1 if left else i
        path[k] = ev
        perm[k] = pos
    for c, g in enumerate(braid):
        signs[offset + c] = 1 if g > 0 else -1
    comps = []
    seen = set()
    for k in range(strands):
        if k in seen:
            continue
        events = []
        j = k
        while j not in seen:
            seen.add(j)
            events.extend(path[j])
            j = perm[j]
        comps.append(events)
    if axis:
        row = [(k, OVER) for k in range(strands)]
        row += [(strands + k, UNDER) for k in reversed(range(strands))]
        comps.append(row)
    if not signs:
        return PDCode((), ((),))
    return _pd_from_events(signs, comps)


def sublink(pd: PDCode, keep) -> PDCode:
    """Diagram of the sublink made of components ``keep`` (ids are renumbered in order)."""
    keep = list(keep)
    unknown = [c for c in keep if not 0 <= c < pd.num_components]
    if unknown:
        raise InvalidInputError(f"unknown component ids {unknown}")
    kept_crossings = {
        k for k in range(len(pd.crossings))
        if all(c in keep for c in pd.passage_components(k))
    }
    events = pd.events()
    comps = [[ev for ev in events[c] if ev[0] in kept_crossings] for c in keep]
    if not kept_crossings:
        if len(keep) == 1:
            return PDCode((), ((),))
        raise InvalidInputError("sublink is a split union of round circles")
    renum = {k: i for i, k in enumerate(sorted(kept_crossings))}
    signs = {renum[k]: pd.sign(k) for k in kept_crossings}
    comps = [[(renum[k], s) for k, s in evs] for evs in comps]
    return _pd_from_events(signs, comps)


@dataclass(frozen=True)
class Presentation:
    """A finite group presentation with abelianization data.

    ``abelian_exponent[g]`` is the image of generator ``g`` in the free
    abelian group ``Z^num_components``; ``meridian_class[g]`` names the
    component a generator is a meridian of (``None`` if it is not one).
    """

    num_generators: int
    relators: tuple
    abelian_exponent: tuple
    meridian_class: tuple = None
    names: tuple = None
    num_components: int = 1

    def __post_init__(self):
        m = self.num_generators
        if len(self.abelian_exponent) != m:
            raise InvalidInputError("one abelian exponent vector per generator is required")
        if any(len(v) != self.num_components for v in self.abelian_exponent):
            raise InvalidInputError("abelian exponent vectors must have one entry per component")
        if self.meridian_class is None:
            object.__setattr__(self, "meridian_class", (None,) * m)
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(m)))
        for r in self.relators:
            if any(g >= m for g in r.generators()):
                raise InvalidInputError(f"relator {r} uses an unknown generator")
            if any(self.relator_abelian(r)):
                raise InvalidInputError(
                    f"relator {r.format(self.names)} does not die in the abelianization")

    def relator_abelian(self, w: Word):
        out = [0] * self.num_components
        for g, e in w.syllables:
            for i, v in enumerate(self.abelian_exponent[g]):
                out[i] += e * v
        return tuple(out)

    @property
    def deficiency(self):
        return self.num_generators - len(self.relators)

    def format(self):
        gens = " ".join(self.names)
        rels = ", ".join(r.format(self.names) for r in self.relators)
        text = f"gens: {gens}; rels: {rels}"
        if all(c is not None for c in self.meridian_class) and self.num_generators:
            cls = " ".join(f"{n}={c}" for n, c in zip(self.names, self.meridian_class))
            text += f"; classes: {cls}"
        return text

    def __str__(self):
        return self.format()


def wirtinger(pd: PDCode, allow_split: bool = False) -> Presentation:
    """Wirtinger presentation: one generator per over-arc, one relator per crossing, last dropped.

    At a positive crossing with over-arc ``o`` and under-arcs ``u_in -> u_out``
    the relator is ``x_out^-1 x_o x_in x_o^-1``; negative crossings conjugate
    by ``x_o^-1`` instead.
    """
    if not pd.crossings:
        ncomp = pd.num_components
        return Presentation(ncomp, (), tuple(tuple(int(i == c) for i in range(ncomp)) for c in range(ncomp)),
                            tuple(range(ncomp)), num_components=ncomp)
    if not allow_split:
        uf = _UnionFind()
        for x in pd.crossings:
            for lab in x[1:]:
                uf.union(x[0], lab)
        if len({uf.find(lab) for comp in pd.components for lab in comp}) > 1:
            raise InvalidInputError("diagram is disconnected (split); pass allow_split to keep it")
    arcs = _UnionFind()
    for a, b, c, d in pd.crossings:
        arcs.union(b, d)
    roots = sorted({arcs.find(lab) for comp in pd.components for lab in comp})
    index = {r: i for i, r in enumerate(roots)}
    gen = {lab: index[arcs.find(lab)] for comp in pd.components for lab in comp}
    relators = []
    for k, (a, b, c, d) in enumerate(pd.crossings):
        o, u_in, u_out = gen[b], gen[a], gen[c]
        s = pd.sign(k)
        relators.append(Word([(u_out, -1), (o, s), (u_in, 1), (o, -s)]))
    relators = relators[:-1]
    ncomp = pd.num_components
    comp_of = {index[arcs.find(lab)]: pd.component_of[lab] for comp in pd.components for lab in comp}
    classes = tuple(comp_of[g] for g in range(len(roots)))
    exps = tuple(tuple(int(i == c) for i in range(ncomp)) for c in classes)
    return Presentation(len(roots), tuple(relators), exps, classes, num_components=ncomp)


def linking_number(pd: PDCode, comp_a: int, comp_b: int) -> int:
    """Half the signed count of crossings between two components."""
    for c in (comp_a, comp_b):
        if not 0 <= c < pd.num_components:
            raise InvalidInputError(f"unknown component id {c}")
    if comp_a == comp_b:
        raise InvalidInputError("linking number needs two distinct components")
    total = 0
    for k in range(len(pd.crossings)):
        if set(pd.passage_components(k)) == {comp_a, comp_b}:
            total += pd.sign(k)
    if total % 2:
        raise InvalidInputError("odd count of mixed crossings; diagram is not closed")
    return total // 2


def torus_presentation(p: int, q: int) -> Presentation:
    """``<a, b | a^p b^-q>`` for the torus knot T(p, q)."""
    if p < 2 or q < 2:
        raise InvalidInputError("torus knot parameters must be at least 2")
    if gcd(p, q) != 1:
        raise InvalidInputError(f"T({p},{q}) is a link, not a knot: gcd is {gcd(p, q)}")
    return Presentation(2, (Word([(0, p), (1, -q)]),), ((q,), (p,)), (None, None), ("a", "b"))


_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_FACTOR = re.compile(rf"\s*({_NAME})\s*(?:\^\s*([+-]?\s*\d+)?)?\s*\*?")


def _parse_word(text, index, offset):
    syl = []
    pos = 0
    text_s = text.rstrip()
    if text_s.strip() in ("", "1"):
        return Word()
    while pos < len(text_s):
        m = _FACTOR.match(text_s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad word syntax near {text_s[pos:]!r}", offset + pos)
        name, exp = m.group(1), m.group(2)
        if "^" in m.group(0) and exp is None:
            raise ParseError(f"missing exponent after '{name}^'", offset + m.end())
        if name not in index:
            raise ParseError(f"unknown generator {name!r}", offset + m.start(1))
        e = 1 if exp is None else int(exp.replace(" ", ""))
        syl.append((index[name], e))
        pos = m.end()
    return Word(syl)


def parse_word(text: str, pres: Presentation) -> Word:
    """Parse a word such as ``x1^2 x2^-1`` in the generator names of ``pres``."""
    return _parse_word(text, {n: i for i, n in enumerate(pres.names)}, 0)


def parse_presentation(text: str) -> Presentation:
    """Parse ``gens: x y; rels: w1, w2; classes: x=0 y=0`` (``classes`` optional).

    Without ``classes`` the abelianization is computed by Smith normal form.
    """
    sections = {}
    offsets = {}
    pos = 0
    for part in text.split(";"):
        if part.strip():
            m = re.match(r"\s*(gens|rels|classes)\s*:", part, re.I)
            if not m:
                raise ParseError("expected 'gens:', 'rels:' or 'classes:'", pos)
            key = m.group(1).lower()
            if key in sections:
                raise ParseError(f"duplicate section {key!r}", pos)
            sections[key] = part[m.end():]
            offsets[key] = pos + m.end()
        pos += len(part) + 1
    if "gens" not in sections:
        raise ParseError("missing 'gens:' section", 0)
    names = sections["gens"].replace(",", " ").split()
    for n in names:
        if not re.fullmatch(_NAME, n):
            raise ParseError(f"bad generator name {n!r}", offsets["gens"])
    if len(set(names)) != len(names):
        raise ParseError("duplicate generator names", offsets["gens"])
    index = {n: i for i, n in enumerate(names)}
    relators = []
    body = sections.get("rels", "")
    off = offsets.get("rels", 0)
    for chunk in body.split(","):
        if chunk.strip():
            w = _parse_word(chunk, index, off)
            if w:
                relators.append(w)
        off += len(chunk) + 1
    m = len(names)
    if "classes" in sections:
        classes = [None] * m
        for tok in sections["classes"].replace(",", " ").split():
            cm = re.fullmatch(rf"({_NAME})\s*=\s*(\d+)", tok)
            if not cm or cm.group(1) not in index:
                raise ParseError(f"bad class assignment {tok!r}", offsets["classes"])
            classes[index[cm.group(1)]] = int(cm.group(2))
        if any(c is None for c in classes):
            raise ParseError("every generator needs a class", offsets["classes"])
        ncomp = max(classes) + 1
        if set(classes) != set(range(ncomp)):
            raise InvalidInputError("class ids must be 0..k-1 without gaps")
        exps = tuple(tuple(int(i == c) for i in range(ncomp)) for c in classes)
        return Presentation(m, tuple(relators), exps, tuple(classes), tuple(names), ncomp)
    vectors = [[w.exponent_sum(g) for g in range(m)] for w in relators]
    rank, _, exps = abelianization(m, vectors)
    if rank == 0:
        raise InvalidInputError("presentation has finite abelianization; no Z-action is available")
    classes = tuple(
        e.index(1) if sorted(e) == [0] * (rank - 1) + [1] else None
        for e in exps
    )
    return Presentation(m, tuple(relators), tuple(exps), classes, tuple(names), rank)
