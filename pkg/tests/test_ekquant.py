from fractions import Fraction
from itertools import combinations

import pytest

from biquant.coeff import H, UV, TruncSeries
from biquant.deltacalc import Delta_I, aprime_member, delta_I, place
from biquant.ekquant import (
    PhiMap,
    QuantizationBundle,
    UnsupportedOrder,
    VermaModule,
    VermaVector,
    biquant_square_check,
    choice_independence,
    decompose_plus,
    phi_inv,
    phi_iso,
    recombine,
    verma_act,
)
from biquant.envelope import EnvElement, TensorElement, env_coproduct, monomials
from biquant.liebialg import AxiomError, abelian, abelian_with_cobracket, borel, build_double, load_json
from conftest import DATA

PI_MINUS = {(1, 1): {0: 1, 1: -2}, (2, 0): {1: 3}}


@pytest.fixture(scope="module")
def borel2():
    return QuantizationBundle(borel(), 2)


@pytest.fixture(scope="module")
def borel3():
    return QuantizationBundle(borel(), 3)


def setup_double():
    dd = build_double(borel())
    Mp, Mm = VermaModule(dd, "+"), VermaModule(dd, "-")
    return dd, Mp, Mm, PhiMap(dd, Mp, Mm)


def test_verma_actions():
    dd, Mp, Mm, _ = setup_double()
    ualg = dd.r.algs[0]
    gen = lambda i: EnvElement.gen(ualg, i)
    y2 = verma_act(gen(3), Mp.vacuum())
    assert verma_act(gen(0), y2).render() == "-y2 1+"
    assert verma_act(gen(1), y2).render() == "y1 1+"
    assert not verma_act(gen(0), Mp.vacuum())
    assert not verma_act(gen(2), Mm.vacuum())
    assert verma_act(gen(0), Mm.vacuum()).render() == "x1 1-"
    assert Mp.vacuum().render() == "1+"
    with pytest.raises(ValueError):
        VermaModule(dd, "0")


def test_verma_is_a_module():
    dd, Mp, Mm, _ = setup_double()
    ualg = dd.r.algs[0]
    for M in (Mp, Mm):
        for a in monomials(4, 2):
            for b in monomials(4, 2):
                wa, wb = EnvElement.mono(ualg, a), EnvElement.mono(ualg, b)
                v = M.vacuum()
                assert verma_act(wa * wb, v) == verma_act(wa, verma_act(wb, v))


def test_phi_value_and_roundtrip():
    dd, Mp, Mm, phi = setup_double()
    ualg = dd.r.algs[0]
    w = EnvElement.mono(ualg, (1, 0, 0, 1))
    img = phi_iso(w, phi)
    want = TensorElement((Mp.alg, Mm.alg), {(((0, 0, 0, 1), (0, 0, 0, 0)), ()): -1, (((0, 0, 0, 1), (1, 0, 0, 0)), ()): 1})
    assert img == want
    for m in monomials(4, 3):
        w = EnvElement.mono(ualg, m)
        assert phi_inv(phi_iso(w, phi), phi, ualg) == w
    bad = TensorElement((Mp.alg, Mm.alg), {(((1, 0, 0, 0), (0, 0, 0, 0)), ()): 1})
    with pytest.raises(ValueError):
        phi_inv(bad, phi, ualg)


def test_phi_is_coproduct_on_vacua():
    dd, Mp, Mm, phi = setup_double()
    ualg = dd.r.algs[0]
    for m in monomials(4, 2):
        w = EnvElement.mono(ualg, m)
        D = env_coproduct(w)
        want = {}
        for ((a, b), e), c in D.terms.items():
            for p, cp in Mp.act_mono(ualg, a, Mp.one).items():
                for q, cq in Mm.act_mono(ualg, b, Mm.one).items():
                    want[((p, q), e)] = want.get(((p, q), e), 0) + c * cp * cq
        assert phi_iso(w, phi) == TensorElement((Mp.alg, Mm.alg), want)


def test_J_first_order(borel3):
    r = borel3.double.r.with_ring(H, (1,)).shift((1,))
    assert borel3.J.truncate((1,)) == TensorElement.one(r.algs, (1,), H) + r * Fraction(1, 2)


def test_trivial_J_second_order():
    B = QuantizationBundle(abelian(1), 2)
    r = B.double.r.with_ring(H, (2,))
    assert B.J.order_part((2,)) == (r * r * Fraction(1, 8)).order_part((0,))


@pytest.mark.parametrize("L", [borel(), abelian_with_cobracket()])
@pytest.mark.parametrize("N", [2, 3])
def test_twist_equation(L, N):
    # (id x Delta)(J) J23 = Phi (Delta x id)(J) J12 with Phi = exp(h^2/24 [t12, t23])
    B = QuantizationBundle(L, N)
    t = B.double.t.with_ring(H, (N,)).shift((1,))
    t12, t23 = place(t, (0, 1), 3), place(t, (1, 2), 3)
    Phi = TensorElement.one(t12.algs, (N,), H) + (t12 * t23 - t23 * t12) * Fraction(1, 24)
    J = B.J
    assert env_coproduct(J, 1) * place(J, (1, 2), 3) == Phi * env_coproduct(J, 0) * place(J, (0, 1), 3)


def test_yang_baxter(borel3):
    R = borel3.R
    R12, R13, R23 = (place(R, p, 3) for p in ((0, 1), (0, 2), (1, 2)))
    assert R12 * R13 * R23 == R23 * R13 * R12


def test_R_frozen(borel2):
    r = borel2.double.r
    assert borel2.R.order_part((1,)) == r
    assert borel2.R.order_part((2,)).render() == (
        "1/2 x2 ⊗ y2 - 1/2 x2 ⊗ y1*y2 + 1/2 x1^2 ⊗ y1^2 - 1/2 x1*x2 ⊗ y2 + x1*x2 ⊗ y1*y2 + 1/2 x2^2 ⊗ y2^2"
    )


def test_identity_report(borel3):
    rep = borel3.identity_report()
    assert rep.ok, rep.lines()
    assert len(rep.lines()) == 7


def test_twisted_inclusion_exclusion_and_product_rule(borel2):
    bialg = borel2.bialg_h
    samples = borel2.sample_elements()
    for a in samples:
        K = [0, 1, 2]
        want = None
        for k in range(4):
            for J in combinations(K, k):
                t = delta_I(a, J, 3, bialg)
                want = t if want is None else want + t
        assert Delta_I(a, K, 3, bialg) == want
    a, b = samples[0], samples[3]
    for K in ([0], [0, 1]):
        want = None
        for i in range(len(K) + 1):
            for I in combinations(K, i):
                for j in range(len(K) + 1):
                    for J in combinations(K, j):
                        if set(I) | set(J) == set(K):
                            t = delta_I(a, I, 2, bialg) * delta_I(b, J, 2, bialg)
                            want = t if want is None else want + t
        assert delta_I(a * b, K, 2, bialg) == want


def test_psi_frozen(borel2):
    assert borel2.psi_plus((0, 1)).render() == "(u + 1/2*u^2*v) x2\n(-1/2*u^2*v) x1*x2"
    assert borel2.psi_minus((0, 1)).render() == "(v + 1/2*u*v^2) y2\n(-1/2*u*v^2) y1*y2"
    assert borel2.psi_plus((1, 0)).render() == "(u) x1"
    assert borel2.pair_uv((0, 1), (0, 1)) == TruncSeries({(0, 0): 1, (1, 1): Fraction(1, 2)}, (2, 1))
    assert not borel2.pair_uv((0, 1), (1, 1))


def test_psi_errors(borel2):
    with pytest.raises(ValueError):
        borel2.psi_plus((1,))
    with pytest.raises(ValueError):
        borel2.psi_plus((2, 1))


def test_order_errors():
    with pytest.raises(UnsupportedOrder):
        QuantizationBundle(borel(), 4)
    with pytest.raises(UnsupportedOrder):
        QuantizationBundle(borel(), 0)
    with pytest.raises(AxiomError):
        QuantizationBundle(load_json(DATA / "heisenberg_bad.json"), 2)
    with pytest.raises(ValueError):
        biquant_square_check(borel(), 1)


def test_generators_are_members(borel2):
    for j in monomials(2, 2):
        assert aprime_member(borel2.psi_plus(j), 2, borel2.bialg_uv)
    y = EnvElement.gen(borel2.ualg, 2, cap=(2, 2), vars=UV)
    assert not aprime_member(y, 2, borel2.bialg_uv)


def test_decompose(borel2):
    gens = {j: borel2.psi_plus(j) for j in monomials(2, 2)}
    a = gens[(1, 0)] * gens[(0, 1)]
    coords = decompose_plus(a, borel2, gens)
    assert coords is not None
    assert recombine(coords, gens, borel2.ualg, borel2.cap_uv) == a
    assert decompose_plus(EnvElement.gen(borel2.ualg, 2, cap=(2, 2), vars=UV), borel2, gens) is None
    assert decompose_plus(EnvElement.gen(borel2.ualg, 0, cap=(2, 2), vars=UV), borel2, gens) is None


def test_choice_independence():
    rep, base, alt = choice_independence(borel(), 2, PI_MINUS)
    assert rep.ok, rep.lines()
    assert base.psi_plus((0, 1)) != alt.psi_plus((0, 1))


@pytest.mark.parametrize("L", [borel(), abelian_with_cobracket()])
def test_biquant_square(L):
    rep, B = biquant_square_check(L, 2)
    assert rep.ok, rep.lines()
    assert [line.split(" ", 2)[1] for line in rep.lines()] == ["(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)", "(vi)"]


def test_functional_value_is_counit_for_empty_sequence(borel2):
    b = borel2.psi_minus((0, 0))
    assert borel2.functional_value(b, []) == TruncSeries.const(1, (2, 2))


def test_verma_vector_equality():
    dd, Mp, _, _ = setup_double()
    assert Mp.vacuum() == VermaVector(Mp, EnvElement.unit_elem(Mp.alg))
