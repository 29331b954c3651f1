"""Iterated coproducts, the maps delta^n and Drinfeld-subalgebra membership."""

from fractions import Fraction
from itertools import combinations

from .envelope import TensorElement, env_coproduct, monomials
from .linalg import rank


class StandardBialgebra:
    """Coproduct x -> x (x) 1 + 1 (x) x on PBW monomials; counit picks the constant term."""

    def __init__(self, alg):
        self.alg = alg

    def coproduct_leg(self, T, leg=0):
        return env_coproduct(T, leg)

    def coproduct(self, a):
        return env_coproduct(a, 0)


class TwistedBialgebra(StandardBialgebra):
    """Coproduct a -> J^-1 Delta(a) J for an invertible 2-tensor J."""

    def __init__(self, alg, J):
        super().__init__(alg)
        self.J = J
        self.Jinv = J.inverse()
        self._placed = {}

    def _place(self, X, leg, arity, key):
        hit = self._placed.get((key, leg, arity))
        if hit is None:
            hit = place(X, (leg, leg + 1), arity)
            self._placed[(key, leg, arity)] = hit
        return hit

    def coproduct_leg(self, T, leg=0):
        D = env_coproduct(T, leg)
        k = D.arity
        return self._place(self.Jinv, leg, k, "inv") * D * self._place(self.J, leg, k, "J")


def place(X, legs, arity):
    """Embed X into an arity-``arity`` tensor with X's legs at positions ``legs`` and units elsewhere."""
    alg = X.algs[0]
    out = {}
    for (ms, e), c in X.terms.items():
        full = [alg.one] * arity
        for p, m in zip(legs, ms):
            full[p] = m
        out[(tuple(full), e)] = c
    return TensorElement((alg,) * arity, out, X.cap, X.vars)


def iterated_coproduct(a, n, bialg=None):
    """Delta^n for n >= 1, built as (Delta (x) id^(n-2)) Delta^(n-1)."""
    bialg = bialg or StandardBialgebra(a.alg)
    if n < 1:
        raise ValueError("iterated_coproduct needs n >= 1")
    T = a
    for _ in range(n - 1):
        T = bialg.coproduct_leg(T, 0)
    return T


def counit_value(a):
    """epsilon(a) as a TruncSeries."""
    return a.contract(0, lambda m: Fraction(1) if not any(m) else Fraction(0))


def delta_n(a, n, bialg=None):
    """delta^n = (id - eps)^(x)n o Delta^n; delta^0 is the counit."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return counit_value(a)
    T = iterated_coproduct(a, n, bialg)
    # (id - eps 1) kills the unit monomial and fixes every other PBW monomial
    return T.filter(lambda ms, e: all(any(m) for m in ms))


def Delta_I(a, I, width, bialg=None):
    """j_I o Delta^|I| as an element of A^(x)width."""
    I = sorted(I)
    if not I:
        eps = counit_value(a)
        one = TensorElement.one((a.alg,) * width, a.cap, a.vars)
        return one * eps
    T = iterated_coproduct(a, len(I), bialg)
    return place(T, I, width)


def delta_I(a, I, width, bialg=None):
    """delta_I = sum over J in I of (-1)^(|I|-|J|) Delta_J."""
    I = sorted(I)
    out = None
    for k in range(len(I) + 1):
        for J in combinations(I, k):
            term = Delta_I(a, J, width, bialg) * ((-1) ** (len(I) - k))
            out = term if out is None else out + term
    return out


def delta_subword(w, n, alg, cap=(), vars=()):
    """delta^n on a monomial of S(g): ordered splittings of its letters into n nonempty subwords."""
    letters = [g for g in range(len(w)) for _ in range(w[g])]
    out = {}
    for labels in _surjections(len(letters), n):
        parts = [[0] * len(w) for _ in range(n)]
        for letter, lab in zip(letters, labels):
            parts[lab][letter] += 1
        key = (tuple(tuple(p) for p in parts), (0,) * len(vars))
        out[key] = out.get(key, 0) + 1
    return TensorElement((alg,) * n, {k: Fraction(c) for k, c in out.items()}, cap, vars)


def _surjections(k, n):
    """All maps {0..k-1} -> {0..n-1} hitting every label."""
    if n == 0:
        if k == 0:
            yield ()
        return

    def rec(i, acc, used):
        if i == k:
            if len(used) == n:
                yield tuple(acc)
            return
        if n - len(used) > k - i:
            return
        for lab in range(n):
            acc.append(lab)
            yield from rec(i + 1, acc, used | {lab})
            acc.pop()

    yield from rec(0, [], frozenset())


def aprime_member(a, max_n, bialg=None, var="u"):
    """delta^n(a) divisible by u^n for 1 <= n <= max_n."""
    i = a.vars.index(var)
    if max_n > a.cap[i]:
        raise ValueError(f"max_n={max_n} exceeds the {var}-cap {a.cap[i]}: undecidable at this truncation")
    for n in range(1, max_n + 1):
        e = [0] * len(a.vars)
        e[i] = n
        if not delta_n(a, n, bialg).divisible_by(tuple(e)):
            return False
    return True


def mu(T):
    """Multiply all legs together."""
    alg = T.algs[0]
    out = None
    for (ms, e), c in T.terms.items():
        prod = {ms[0]: Fraction(1)}
        for m in ms[1:]:
            nxt = {}
            for p, c1 in prod.items():
                for q, c2 in alg.mono_mul(p, m).items():
                    nxt[q] = nxt.get(q, 0) + c1 * c2
            prod = nxt
        piece = TensorElement((alg,), {((p,), e): c * v for p, v in prod.items()}, T.cap, T.vars)
        out = piece if out is None else out + piece
    return out if out is not None else TensorElement((alg,), {}, T.cap, T.vars)


def kernel_check(alg, n):
    """delta^n kills exactly U^(n-1): zero on degrees < n, injective on degrees n..n+1."""
    from .envelope import EnvElement

    if n < 1:
        raise ValueError("n must be positive")
    for m in monomials(alg.dim, n - 1):
        if delta_n(EnvElement.mono(alg, m), n):
            return False
    vecs = []
    for m in monomials(alg.dim, n + 1, n):
        D = delta_n(EnvElement.mono(alg, m), n)
        vecs.append({k: c for k, c in D.terms.items()})
    return rank(vecs) == len(vecs)


def subword_norm(w, n):
    """||w||: the number of ordered splittings of the letters of w into n nonempty subwords."""
    k = sum(w)
    return sum(1 for _ in _surjections(k, n))
