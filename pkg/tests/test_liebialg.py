import json
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biquant.liebialg import (
    AxiomError,
    LieBialgebra,
    abelian,
    abelian_with_cobracket,
    borel,
    build_double,
    check_axioms,
    dualize,
    flip,
    from_document,
    load_json,
    minus_part,
    restriction_report,
    t_invariance_witness,
    to_document,
)
from conftest import DATA, small

AXIOMS = ("antisymmetry", "jacobi", "co-antisymmetry", "co-jacobi", "cocycle")


def dense(L):
    d = L.dim
    B = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    C = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for (i, j, k), c in L.bracket.items():
        B[i][j][k] = c
    for (k, i, j), c in L.cobracket.items():
        C[k][i][j] = c
    return B, C


def oracle(L):
    """Axioms evaluated on dense arrays, independently of the library's sparse loops."""
    d = L.dim
    B, C = dense(L)
    R = range(d)
    out = {}
    out["antisymmetry"] = all(B[i][j][k] + B[j][i][k] == 0 for i, j, k in product(R, R, R))
    out["jacobi"] = all(
        sum(B[i][j][m] * B[m][k][l] + B[j][k][m] * B[m][i][l] + B[k][i][m] * B[m][j][l] for m in R) == 0
        for i, j, k, l in product(R, R, R, R)
    )
    out["co-antisymmetry"] = all(C[k][i][j] + C[k][j][i] == 0 for i, j, k in product(R, R, R))

    def dd(k, a, b, c):  # (delta (x) id) delta(x_k) at a (x) b (x) c
        return sum(C[k][m][c] * C[m][a][b] for m in R)

    out["co-jacobi"] = all(
        dd(k, a, b, c) + dd(k, c, a, b) + dd(k, b, c, a) == 0 for k, a, b, c in product(R, R, R, R)
    )

    def act(x, k, a, b):  # x . delta(x_k) at a (x) b
        return sum(B[x][m][a] * C[k][m][b] + B[x][m][b] * C[k][a][m] for m in R)

    out["cocycle"] = all(
        sum(B[i][j][m] * C[m][a][b] for m in R) - act(i, j, a, b) + act(j, i, a, b) == 0
        for i, j, a, b in product(R, R, R, R)
    )
    return out


def heisenberg():
    return load_json(DATA / "heisenberg_bad.json")


def test_abelian_passes():
    assert check_axioms(abelian(2)).ok


def test_borel_passes():
    rep = check_axioms(borel())
    assert rep.ok
    assert rep.lines() == [f"PASS {a}" for a in AXIOMS]


def test_cocycle_failure_witness():
    rep = check_axioms(heisenberg())
    assert [rep[a] for a in AXIOMS] == [True, True, True, True, False]
    assert rep.lines()[-1] == "FAIL cocycle at (1, 2)"


def test_cobracket_on_x1_is_a_bialgebra():
    # [x1, x2] = x2 with delta(x1) = x1 (x) x2 - x2 (x) x1 is a genuine Lie bialgebra
    L = LieBialgebra(2, {(0, 1, 1): 1, (1, 0, 1): -1}, {(0, 0, 1): 1, (0, 1, 0): -1})
    assert check_axioms(L).ok and all(oracle(L).values())


def test_dualize_examples():
    assert dualize(abelian(2)) == abelian(2)
    B = borel()
    assert dualize(dualize(B)) == B
    D = dualize(B)
    assert D.bracket == {(i, j, k): c for (k, i, j), c in B.cobracket.items()}
    assert D == load_json(DATA / "borel_dual.json")
    with pytest.raises(AxiomError):
        dualize(heisenberg())


def test_flip_examples():
    B = borel()
    assert flip(flip(B, "op"), "op") == B
    assert flip(abelian(3), "cop") == abelian(3)
    assert flip(dualize(B), "op") == dualize(flip(B, "cop"))
    with pytest.raises(ValueError):
        flip(B, "both")


def test_double_of_trivial():
    dd = build_double(abelian(1))
    assert dd.double == abelian(2)
    assert dd.r.render() == "x1 ⊗ y1"
    assert dd.t == dd.t.permute((1, 0))


def test_double_of_borel():
    dd = build_double(borel())
    D = dd.double
    assert D.dim == 4 and check_axioms(D).ok and all(oracle(D).values())
    assert restriction_report(dd).ok
    assert t_invariance_witness(dd) is None
    assert D.br(0, 3) == {3: Fraction(-1)}  # [x1, y2] = -y2
    for k in range(2):
        assert D.cobr(k) == borel().cobr(k)


def test_double_cobracket_formula():
    dd = build_double(borel())
    D, n = dd.double, 2
    for X in range(4):
        want = {}
        for i in range(n):
            for k, c in D.br(X, i).items():
                want[(k, n + i)] = want.get((k, n + i), 0) + c
            for k, c in D.br(X, n + i).items():
                want[(i, k)] = want.get((i, k), 0) + c
        assert D.cobr(X) == {key: c for key, c in want.items() if c}


def test_minus_part_is_dual_of_op():
    assert minus_part(borel()) == dualize(flip(borel(), "op"))


def test_json_roundtrip_and_errors(tmp_path):
    for name in ("borel", "borel_dual", "abelian2", "abelian_cobracket"):
        L = load_json(DATA / f"{name}.json")
        assert check_axioms(L).ok
        assert from_document(to_document(L)) == L
    assert load_json(DATA / "borel.json") == borel()
    assert load_json(DATA / "abelian_cobracket.json") == abelian_with_cobracket()
    bad = {"dim": 2, "bracket": [{"i": 1, "j": 2, "k": 2, "coeff": "1"}, {"i": 2, "j": 1, "k": 2, "coeff": "1"}]}
    with pytest.raises(ValueError):
        from_document(bad)
    with pytest.raises(ValueError):
        from_document({"dim": 2, "bracket": [{"i": 1, "j": 3, "k": 2, "coeff": "1"}]})
    with pytest.raises(ValueError):
        from_document({"dim": 2, "bracket": [{"i": 1, "j": 2, "coeff": "1"}]})
    p = tmp_path / "x.json"
    p.write_text(json.dumps({"dim": 1, "bracket": [], "cobracket": []}))
    assert load_json(p) == abelian(1)


coef = st.sampled_from([-1, 0, 1])


@st.composite
def random_structures(draw, d=2):
    br, co = {}, {}
    for i, j in product(range(d), range(d)):
        if i < j:
            for k in range(d):
                c = draw(coef)
                br[(i, j, k)], br[(j, i, k)] = c, -c
                e = draw(coef)
                co[(k, i, j)], co[(k, j, i)] = e, -e
    return LieBialgebra(d, br, co)


@given(st.integers(2, 3).flatmap(random_structures))
def test_checker_matches_oracle(L):
    rep = check_axioms(L)
    want = oracle(L)
    assert {a: rep[a] for a in AXIOMS} == want


@given(st.sampled_from([borel(), abelian_with_cobracket(), abelian(2)]), small, small)
def test_closure_under_dual_flip_double(L, a, b):
    L = LieBialgebra(L.dim, {k: a * c for k, c in L.bracket.items()}, {k: b * c for k, c in L.cobracket.items()})
    assert check_axioms(L).ok
    for M in (dualize(L), flip(L, "op"), flip(L, "cop")):
        assert check_axioms(M).ok
    dd = build_double(L)
    assert all(oracle(dd.double).values())
    assert restriction_report(dd).ok and t_invariance_witness(dd) is None
