import itertools

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from helpers import seed_rng
from knotperiod.catalog import catalog_get, catalog_list
from knotperiod.errors import InvalidInputError, ParseError
from knotperiod.freegroup import Word
from knotperiod.knotio import (
    linking_number,
    parse_pd,
    parse_presentation,
    parse_word,
    pd_from_braid,
    sublink,
    torus_presentation,
    wirtinger,
)
from knotperiod.smith import abelianization, smith_normal_form

TREFOIL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"
HOPF = "PD[X(1,3,2,4),X(3,1,4,2)]"


def colorings(pd, k):
    """Fox k-colorings of the over-arcs, by brute force over edge labels."""
    labels = sorted({x for c in pd.crossings for x in c})
    count = 0
    for colors in itertools.product(range(k), repeat=len(labels)):
        col = dict(zip(labels, colors))
        if all(col[b] == col[d] and (2 * col[b] - col[a] - col[c]) % k == 0
               for a, b, c, d in pd.crossings):
            count += 1
    return count


def relabel(pd_text, shift, n):
    """Rotate the labels of a one-component PD code by ``shift`` (mod ``n``)."""
    pd = parse_pd(pd_text)
    cross = ",".join("X(" + ",".join(str((x - 1 + shift) % n + 1) for x in c) + ")" for c in pd.crossings)
    return parse_pd(f"PD[{cross}]")


def test_parse_pd_examples():
    tre = parse_pd(TREFOIL)
    assert len(tre.crossings) == 3 and tre.num_components == 1
    assert colorings(tre, 3) == 9
    hopf = parse_pd(HOPF)
    assert hopf.num_components == 2
    assert {frozenset(c) for c in hopf.components} == {frozenset({1, 2}), frozenset({3, 4})}
    kink = parse_pd("PD[X(1,1,2,2)]")
    assert kink.num_components == 1


def test_parse_pd_errors():
    with pytest.raises(ParseError) as err:
        parse_pd("PD[X(1,4,2,5),X(3,6,4")
    assert err.value.pos is not None
    with pytest.raises(InvalidInputError):
        parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,7)]")
    with pytest.raises(InvalidInputError):
        parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]; components: (1,2,3), (4,5,6)")
    with pytest.raises(ParseError):
        parse_pd("X(1,2,3,4)")


def test_pd_roundtrip_text():
    for entry in catalog_list():
        if entry.is_pd:
            pd = entry.pd()
            assert parse_pd(str(pd)) == pd


def test_wirtinger_examples():
    tre = wirtinger(parse_pd(TREFOIL))
    assert tre.num_generators == 3 and len(tre.relators) == 2
    assert set(tre.meridian_class) == {0}
    kink = wirtinger(parse_pd("PD[X(1,1,2,2)]"))
    assert kink.deficiency == 1 and kink.num_generators == 1
    hopf = wirtinger(parse_pd(HOPF))
    assert hopf.num_generators == 2 and len(hopf.relators) == 1
    (rel,) = hopf.relators
    x, y = Word.gen(0), Word.gen(1)
    commutators = {x.inverse() * y * x * y.inverse(), y.inverse() * x * y * x.inverse(),
                   x * y * x.inverse() * y.inverse(), y * x * y.inverse() * x.inverse()}
    cyclic = {Word(rel.syllables[i:] + rel.syllables[:i]) for i in range(len(rel.syllables))}
    assert cyclic & commutators


def test_wirtinger_abelianization_is_free_of_rank_components():
    for entry in catalog_list():
        if not entry.is_pd:
            continue
        pres = entry.presentation()
        vectors = [[w.exponent_sum(g) for g in range(pres.num_generators)] for w in pres.relators]
        rank, torsion, _ = abelianization(pres.num_generators, vectors)
        assert rank == pres.num_components and torsion == []


def test_wirtinger_rejects_split_unless_asked():
    split = parse_pd("PD[X(1,1,2,2),X(3,3,4,4)]")
    assert linking_number(split, 0, 1) == 0
    with pytest.raises(InvalidInputError):
        wirtinger(split)
    assert wirtinger(split, allow_split=True).num_components == 2


def test_linking_numbers():
    hopf = parse_pd(HOPF)
    assert abs(linking_number(hopf, 0, 1)) == 1
    t24 = catalog_get("T(2,4)").pd()
    assert abs(linking_number(t24, 0, 1)) == 2
    for entry in ("hopf", "T(2,4)", "3_1_axis", "5_1_axis"):
        pd = catalog_get(entry).pd()
        assert linking_number(pd, 0, 1) == linking_number(pd, 1, 0)
    with pytest.raises(InvalidInputError):
        linking_number(hopf, 0, 2)
    with pytest.raises(InvalidInputError):
        linking_number(hopf, 0, 0)


def test_braid_closures():
    assert linking_number(pd_from_braid([1, 1, 1, 1], 2), 0, 1) in (2, -2)
    axis = pd_from_braid([1, 1, 1], 2, axis=True)
    assert axis.num_components == 2 and abs(linking_number(axis, 0, 1)) == 2
    assert colorings(sublink(axis, [0]), 3) == 9


def test_relabel_invariance():
    pd = parse_pd(TREFOIL)
    base = wirtinger(pd)
    for shift in range(6):
        other = relabel(TREFOIL, shift, 6)
        assert [other.sign(k) for k in range(3)] == [pd.sign(k) for k in range(3)]
        assert wirtinger(other).num_generators == base.num_generators
        assert colorings(other, 3) == 9


def test_crossing_signs():
    signs = parse_pd(TREFOIL).signs
    assert len(set(signs)) == 1
    pos = pd_from_braid([1, 1, 1], 2).signs
    neg = pd_from_braid([-1, -1, -1], 2).signs
    assert set(pos) == {-s for s in neg} and len(set(pos)) == 1
    t24 = pd_from_braid([1, 1, 1, 1], 2)
    assert linking_number(t24, 0, 1) == -linking_number(pd_from_braid([-1, -1, -1, -1], 2), 0, 1)


def test_torus_presentation_examples():
    p23 = torus_presentation(2, 3)
    assert p23.num_generators == 2
    assert p23.relators == (Word([(0, 2), (1, -3)]),)
    assert p23.abelian_exponent == ((3,), (2,))
    assert torus_presentation(2, 5).abelian_exponent == ((5,), (2,))
    with pytest.raises(InvalidInputError):
        torus_presentation(4, 6)


def test_parse_presentation_examples():
    tre = parse_presentation("gens: x y; rels: x y x y^-1 x^-1 y^-1")
    assert tre.names == ("x", "y") and tre.abelian_exponent == ((1,), (1,))
    unknot = parse_presentation("gens: x; rels:")
    assert unknot.relators == () and unknot.abelian_exponent == ((1,),)
    with pytest.raises(ParseError):
        parse_presentation("gens: x; rels: x^")
    with pytest.raises(InvalidInputError):
        parse_presentation("gens: x y; rels: x y; classes: x=0 y=0")
    torus = parse_presentation("gens: a b; rels: a^2 b^-3")
    assert torus.abelian_exponent == ((3,), (2,))
    assert parse_presentation(torus.format()).abelian_exponent == torus.abelian_exponent
    link = parse_presentation("gens: x y; rels: x y x^-1 y^-1; classes: x=0 y=1")
    assert link.num_components == 2


def test_parse_word():
    pres = parse_presentation("gens: x y; rels: x y x y^-1 x^-1 y^-1")
    assert parse_word("x^2 y^-1", pres) == Word([(0, 2), (1, -1)])
    assert parse_word("1", pres) == Word()
    with pytest.raises(ParseError):
        parse_word("z", pres)


def test_smith_normal_form_against_sympy():
    rng = seed_rng(50)
    for _ in range(150):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        a = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        d, v = smith_normal_form(a)
        ours = [x for x in d if x]
        ref = sympy_snf(Matrix(a))
        theirs = [abs(ref[i, i]) for i in range(min(rows, cols)) if ref[i, i]]
        assert sorted(ours) == sorted(theirs)
        assert abs(Matrix(v).det()) == 1
        av = Matrix(a) * Matrix(v)
        nonzero = sum(1 for x in d if x)
        # columns past the rank are killed by the column transform
        assert all(av[i, j] == 0 for i in range(rows) for j in range(nonzero, cols))
