"""Closed forms for the abelian Lie bialgebra with zero cobracket, and a cross-check against the pipeline."""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .coeff import H, UV, TruncSeries
from .envelope import EnvElement, PBWAlgebra, TensorElement, env_coproduct, monomials


def _mfact(j):
    out = 1
    for a in j:
        out *= factorial(a)
    return out


@dataclass
class TrivialForms:
    d: int
    N: int
    alg: PBWAlgebra
    J: TensorElement
    R: TensorElement
    R_uv: TensorElement
    rho_plus: list
    rho_minus: list
    omega: EnvElement

    def psi_plus(self, j):
        return self._mono(tuple(j) + (0,) * self.d, (sum(j), 0))

    def psi_minus(self, k):
        return self._mono((0,) * self.d + tuple(k), (0, sum(k)))

    def _mono(self, m, e):
        return EnvElement.mono(self.alg, m, 1, (self.N, self.N), UV, e)

    def pairing(self, j, k):
        val = _mfact(j) if tuple(j) == tuple(k) else 0
        return TruncSeries.const(val, (self.N, self.N - sum(j)), UV)

    def member(self, a):
        """Every u^m v^n coefficient lies in S^0 + ... + S^m of g+."""
        d = self.d
        return all(not any(ms[0][d:]) and sum(ms[0]) <= e[0] for ms, e in a.terms)


def _exp(T):
    one = TensorElement.one(T.algs, T.cap, T.vars)
    out = one
    power = one
    for k in range(1, sum(T.cap) + 2):
        power = power * T * Fraction(1, k)
        if not power:
            break
        out = out + power
    return out


def trivial_closed_forms(d, N):
    if d < 1 or N < 0:
        raise ValueError("need d >= 1 and N >= 0")
    names = tuple(f"x{i + 1}" for i in range(d)) + tuple(f"y{i + 1}" for i in range(d))
    alg = PBWAlgebra(2 * d, None, names, commutative=True)
    unit = lambda g: tuple(1 if k == g else 0 for k in range(2 * d))
    r_h = TensorElement((alg, alg), {((unit(i), unit(d + i)), (1,)): Fraction(1) for i in range(d)}, (N,), H)
    r_uv = TensorElement((alg, alg), {((unit(i), unit(d + i)), (1, 1)): Fraction(1) for i in range(d)}, (N, N), UV)
    J = _exp(r_h * Fraction(1, 2))
    R = _exp(r_h)
    R_uv = _exp(r_uv)
    rho_plus = [EnvElement.mono(alg, unit(i), 1, (N, N), UV, (1, 1)) for i in range(d)]
    rho_minus = [EnvElement.mono(alg, unit(d + i), 1, (N, N), UV, (1, 1)) for i in range(d)]
    w = EnvElement(alg, {((tuple(a + b for a, b in zip(unit(i), unit(d + i))),), (1,)): Fraction(1, 2) for i in range(d)}, (N,), H)
    omega = _exp(w)
    omega = EnvElement(alg, omega.terms, (N,), H)
    return TrivialForms(d, N, alg, J, R, R_uv, rho_plus, rho_minus, omega)


def cross_check(d, N):
    """Compare the pipeline with the closed forms; returns (lines, ok)."""
    from .deltacalc import aprime_member, mu
    from .ekquant import QuantizationBundle
    from .liebialg import abelian

    T = trivial_closed_forms(d, N)
    B = QuantizationBundle(abelian(d), N)
    lines = []
    ok = True

    def record(name, good):
        nonlocal ok
        ok = ok and good
        lines.append(f"{'PASS' if good else 'FAIL'} {name}")

    record("J = exp(hr/2)", B.J == T.J)
    record("R = exp(hr)", B.R == T.R)
    record("R_uv = exp(uv r)", B.R_uv == T.R_uv)
    record("omega = mu(J) = exp(h/2 sum x_i y_i)", mu(B.J) == T.omega)
    gens = [B.generator(i) for i in range(2 * d)]
    record("Delta_h is the standard coproduct", all(B.coproduct_h(g) == env_coproduct(g) for g in gens))
    record("rho+(f_x) = uv x", all(B.rho_plus(B.f_functional(i)) == T.rho_plus[i] for i in range(d)))
    record("rho-(g_y) = uv y", all(B.rho_minus(B.g_functional(i)) == T.rho_minus[i] for i in range(d)))
    idx = monomials(d, N)
    record("psi+(u^|j| x_j) = u^|j| x_j", all(B.psi_plus(j) == T.psi_plus(j) for j in idx))
    record("psi-(v^|k| y_k) = v^|k| y_k", all(B.psi_minus(k) == T.psi_minus(k) for k in idx))
    record("pairing = delta_jk j!", all(B.pair_uv(j, k) == T.pairing(j, k) for j in idx for k in idx))
    agree = True
    for j in idx:
        for m in range(N + 1):
            for n in range(N + 1):
                a = EnvElement.mono(B.ualg, tuple(j) + (0,) * d, 1, (N, N), UV, (m, n))
                if aprime_member(a, N, B.bialg_uv) != T.member(a):
                    agree = False
    record("membership predicate agrees on capped monomials", agree)
    return lines, ok
