import itertools
import json

import pytest
import sympy as sp

from helpers import T, from_sympy_poly, gf_monic, murasugi_oracle, random_poly, seed_rng, sympy_poly
from knotperiod.catalog import catalog_get
from knotperiod.errors import ComputationError, InvalidInputError
from knotperiod.knotio import parse_presentation, parse_word
from knotperiod.laurent import (
    LaurentPoly,
    canonicalize,
    cyclotomic_like,
    det_from_charpoly,
    equal_up_to_unit,
    parse_poly,
)
from knotperiod.obstruction import (
    CONSISTENT,
    EXCLUDED,
    MuraWitness,
    TwistedWitness,
    delta0_candidates,
    dump_report,
    monic_polys,
    murasugi_check,
    murasugi_verify,
    obstruction_report,
    twisted_search,
    twisted_verify,
)
from knotperiod.twisted import trivial_representation, twisted_alexander, validate_representation


def witnesses(delta, p, r=1, **kw):
    return {(w.lam, str(w.f)) for w in murasugi_check(delta, p, r, **kw)}


def test_murasugi_examples():
    assert witnesses(parse_poly("1 - t + t^2"), 3) == {(2, "1")}
    assert witnesses(parse_poly("1 - t + t^2"), 2) == {(3, "1")}
    assert witnesses(parse_poly("1 - 3*t + t^2"), 3) == set()
    for p, r in [(2, 1), (3, 2), (5, 1)]:
        assert (1, "1") in witnesses(LaurentPoly.constant(1), p, r)


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_1", "5_2", "6_1", "7_1"])
@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2)])
def test_murasugi_matches_oracle_on_catalog(name, p, r):
    delta = catalog_get(name).reference_poly()
    assert witnesses(delta, p, r) == murasugi_oracle(delta, p, r)


def test_murasugi_errors():
    with pytest.raises(InvalidInputError):
        murasugi_check(LaurentPoly.constant(3), 3, 1)
    with pytest.raises(InvalidInputError):
        murasugi_check(parse_poly("1 + t"), 4, 1)
    with pytest.raises(InvalidInputError):
        murasugi_check(parse_poly("1 + t"), 3, 0)
    with pytest.raises(InvalidInputError):
        murasugi_check(parse_poly("1 + t", 5), 3, 1)


def test_murasugi_lambda_cap():
    delta = catalog_get("3_1").reference_poly()
    assert witnesses(delta, 2, lambda_max=2) == set()
    assert witnesses(delta, 2, lambda_max=3) == {(3, "1")}


def test_witness_records():
    w = MuraWitness(2, LaurentPoly.constant(1, 3))
    assert w.verify(parse_poly("1 - t + t^2", 3), 3)
    assert w.as_dict() == {"lambda": 2, "f": "1", "f_symmetric": True}
    tw = TwistedWitness(2, parse_poly("t + 2", 3), parse_poly("t + 2", 3), LaurentPoly.constant(1, 3))
    assert tw.as_dict()["chi"] == "2 + x"
    assert equal_up_to_unit(tw.D, parse_poly("1 - t^2", 3))


def test_murasugi_verify_examples():
    unknot = catalog_get("unknot").presentation()
    tre = catalog_get("3_1").presentation()
    assert murasugi_verify(tre, unknot, 2, 3, 1)["equal"]
    assert murasugi_verify(catalog_get("5_1").presentation(), unknot, 2, 5, 1)["equal"]
    rep = murasugi_verify(tre, tre, 1, 2, 1)
    assert not rep["equal"] and rep["lhs"] == "1 + t + t^2"


def test_candidate_enumerations():
    for p, n in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 2)]:
        chis = list(monic_polys(p, n))
        assert len(chis) == p ** n - p ** (n - 1)
        assert all(c.leading_coeff == 1 and c.coeff(0) != 0 and c.max_exp == n for c in chis)
        d0 = delta0_candidates(p, n)
        assert len(d0) == 1 + sum(p ** k - p ** (k - 1) for k in range(1, n + 1))
        assert len(set(d0)) == len(d0)
    with pytest.raises(ValueError):
        list(monic_polys(2, 0))


def twisted_oracle(delta, p, n, lam_max):
    """Brute force over (lam, chi, d0, f) with f of degree at most deg(delta) + n, via sympy."""
    q = p
    target = sympy_poly(canonicalize(delta)).as_expr()
    out = set()
    fdeg = sp.Poly(target, T).degree() + n
    for lam in range(1, lam_max + 1):
        if lam % p == 0:
            continue
        for chi in monic_polys(p, n):
            D = sympy_poly(det_from_charpoly(chi, lam)).as_expr()
            for d0 in delta0_candidates(p, n):
                lhs = gf_monic(target * sympy_poly(d0).as_expr() ** (q - 1), p)
                for k in range(fdeg + 1):
                    for coeffs in itertools.product(range(p), repeat=k):
                        f = sum(c * T ** i for i, c in enumerate(coeffs)) + T ** k
                        if gf_monic(f ** q * D ** (q - 1), p) == lhs:
                            out.add((lam, str(chi), str(d0), str(from_sympy_poly(sp.Poly(f, T, modulus=p), p))))
    return out


def test_twisted_frozen_witness_set():
    delta = parse_poly("1 + t^2", 2)
    found, exhausted = twisted_search(delta, 2, 1, 1)
    assert exhausted
    got = {(w.lam, str(w.chi), str(w.delta0_candidate), str(w.f)) for w in found}
    assert got == {(1, "1 + t", "1 + t", "1 + t")}
    oracle = twisted_oracle(delta, 2, 1, lam_max=3)
    assert oracle == got


def test_twisted_search_examples():
    tre = parse_poly("1 - t + t^2", 3)
    found, _ = twisted_search(tre, 3, 1, 1)
    got = {(w.lam, str(w.chi), str(w.delta0_candidate), str(w.f)) for w in found}
    assert (2, "2 + t", "2 + t", "1") in got
    for n in (1, 2):
        found, _ = twisted_search(LaurentPoly.constant(1, 5), 5, 1, n)
        assert any(w.lam == 1 and equal_up_to_unit(w.D, w.delta0_candidate) and w.f == 1 for w in found)


def test_twisted_search_matches_oracle_small():
    rng = seed_rng(7)
    for _ in range(6):
        delta = random_poly(rng, 2, 0, 4)
        if delta.is_zero():
            continue
        found, _ = twisted_search(delta, 2, 1, 1, lambda_max=3)
        got = {(w.lam, str(w.chi), str(w.delta0_candidate), str(w.f)) for w in found}
        assert got == twisted_oracle(delta, 2, 1, 3)


def test_twisted_search_caps_and_degrees():
    delta = parse_poly("1 + t + t^3 + t^4", 3)
    found, exhausted = twisted_search(delta, 3, 1, 2, max_chi=2)
    assert not exhausted
    found, exhausted = twisted_search(delta, 3, 1, 2)
    assert exhausted
    for w in found:
        assert w.verify(delta, 3)
        assert delta.width == 3 * w.f.width + 2 * (w.D.width - w.delta0_candidate.width)
    with pytest.raises(InvalidInputError):
        twisted_search(delta, 3, 1, 0)
    with pytest.raises(InvalidInputError):
        twisted_search(LaurentPoly.constant(0, 3), 3, 1, 1)


def test_twisted_n1_slice_matches_classical():
    rng = seed_rng(11)
    for p in (2, 3):
        chi = parse_poly("t - 1", p)
        d0 = parse_poly("1 - t", p)
        checked = 0
        while checked < 30:
            delta = random_poly(rng, p, 0, 6)
            if delta.is_zero() or delta(1) == 0:
                continue
            checked += 1
            slice_, _ = twisted_search(delta, p, 1, 1, chis=[chi], delta0s=[d0])
            classical = murasugi_check(delta, p, 1)
            assert [(w.lam, w.f) for w in slice_] == [(w.lam, w.f) for w in classical]


def test_planted_witness_found():
    rng = seed_rng(3)
    for p, r in [(2, 1), (3, 1), (2, 2)]:
        q = p ** r
        for _ in range(20):
            f = random_poly(rng, p, 0, 3) + 1
            if f.is_zero() or f(1) == 0:
                continue
            f = canonicalize(f)
            if f.coeff(0) == 0:
                continue
            lam = rng.choice([k for k in range(1, 6) if k % p])
            delta = f ** q * cyclotomic_like(lam, p) ** (q - 1)
            assert MuraWitness(lam, f) in murasugi_check(delta, p, r)


def test_twisted_verify_examples():
    unknot = parse_presentation("gens: x; rels:")
    hopf = catalog_get("hopf").presentation()
    triv = trivial_representation(unknot, 3)
    rep = validate_representation(unknot, [((2,),)], 3)
    out = twisted_verify(unknot, triv, unknot, triv, parse_word("x", unknot), 1, 3, 1)
    assert out["equal"]
    link_rep = validate_representation(hopf, [((2,),), ((1,),)], 3)
    out = twisted_verify(unknot, rep, unknot, rep, parse_word("x", unknot), 1, 3, 1,
                         link_pres=hopf, link_rep=link_rep)
    assert out["equal"] and len(out["checks"]) == 3
    # hand Fox computation on the commutator relator: Delta_{L,rho} = 1 - 2t
    dl = twisted_alexander(hopf, link_rep)
    assert equal_up_to_unit(dl, parse_poly("1 - 2*t", 3))
    tre = catalog_get("3_1").presentation()
    lA = parse_word(f"{tre.names[0]}^2", tre)
    out = twisted_verify(tre, trivial_representation(tre, 3), unknot, triv, lA, 2, 3, 1)
    assert out["equal"]
    classical = murasugi_verify(tre, unknot, 2, 3, 1)
    assert out["delta_K"] == classical["lhs"]
    with pytest.raises(InvalidInputError):
        twisted_verify(tre, trivial_representation(tre, 3), unknot, triv, lA, 3, 3, 1)
    with pytest.raises(InvalidInputError):
        twisted_verify(unknot, rep, unknot, rep, parse_word("x", unknot), 1, 3, 1, link_pres=hopf)


def test_report_format():
    ws = murasugi_check(parse_poly("1 - t + t^2"), 3, 1)
    rep = obstruction_report("3_1", 3, 1, {"lambda_max": None}, ws)
    assert rep["verdict"] == CONSISTENT and rep["q"] == 3
    assert set(rep) == {"input", "p", "r", "q", "caps", "witnesses", "exhausted", "verdict"}
    assert obstruction_report("4_1", 3, 1, {}, [])["verdict"] == EXCLUDED
    text = dump_report(rep)
    assert dump_report(json.loads(text)) == text


def test_roundtrip_failure_is_loud(monkeypatch):
    import knotperiod.obstruction as ob
    monkeypatch.setattr(ob.MuraWitness, "verify", lambda self, d, q: False)
    with pytest.raises(ComputationError):
        murasugi_check(parse_poly("1 - t + t^2"), 3, 1)
