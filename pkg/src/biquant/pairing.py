"""The factorial pairing, the pairing of S(g+)[[v]] with V_v(g-), Gram matrices and dual reconstruction."""

from fractions import Fraction
from math import factorial

from .cbh import generator_coproduct
from .coeff import TruncSeries
from .envelope import EnvElement, PBWAlgebra, TensorElement, monomials
from .liebialg import minus_part

V = ("v",)


def mfact(j):
    out = 1
    for a in j:
        out *= factorial(a)
    return out


def pair0(a, b):
    """Bilinear extension of (x_j, y_k) = delta_jk j!."""
    total = Fraction(0)
    bt = {m[0]: c for (m, _), c in b.terms.items()}
    for (m, _), c in a.terms.items():
        d = bt.get(m[0])
        if d:
            total += c * d * mfact(m[0])
    return total


class EvPairing:
    """(a, b)'_v for a in S(g+)[[v]] and b in V_v(g-), computed by peeling factors v*y off b."""

    def __init__(self, L, N_v):
        if N_v < 0:
            raise ValueError("v-cap must be nonnegative")
        self.L = L
        self.N_v = N_v
        self.sym = PBWAlgebra.symmetric(L)
        self.minus = PBWAlgebra.from_lie(minus_part(L))
        self.cap = (N_v,)
        self._gens = [generator_coproduct(L, k, N_v, self.sym) for k in range(L.dim)]
        self._cop = {}
        self._memo = {}

    def zero(self):
        return TruncSeries({}, self.cap, V)

    def coproduct_mono(self, m):
        hit = self._cop.get(m)
        if hit is None:
            hit = TensorElement.one((self.sym, self.sym), self.cap, V)
            for k, e in enumerate(m):
                for _ in range(e):
                    hit = hit * self._gens[k]
            self._cop[m] = hit
        return hit

    def pair_sequence(self, j, seq):
        """(x^j, (v y_seq[0]) (v y_seq[1]) ...)'_v."""
        key = (j, seq)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not seq:
            out = TruncSeries.const(1 if not any(j) else 0, self.cap, V)
        elif sum(j) > len(seq) or sum(j) == 0:
            # more letters than factors, or the counit against a positive-degree element
            out = self.zero()
        else:
            first, rest = seq[0], seq[1:]
            unit = tuple(1 if i == first else 0 for i in range(self.L.dim))
            out = self.zero()
            for (ms, e), c in self.coproduct_mono(j).terms.items():
                if ms[0] != unit:
                    continue
                tail = self.pair_sequence(ms[1], rest)
                if tail:
                    out = out + TruncSeries({e: c}, self.cap, V) * tail
        self._memo[key] = out
        return out

    def pair_monomials(self, j, k):
        """(x_j, v^|k| y_k)'_v with y_k = y_1^k_1 ... y_d^k_d."""
        j, k = tuple(j), tuple(k)
        if sum(k) - sum(j) > self.N_v:
            raise ValueError(f"v-cap {self.N_v} is too small to resolve (x_{j}, v^{sum(k)} y_{k})")
        seq = tuple(i for i in range(len(k)) for _ in range(k[i]))
        return self.pair_sequence(j, seq)

    def pair(self, a, b):
        """a over S(g+) with v-series coefficients; b over U(g-) with terms v^m y_k, m >= |k|."""
        out = self.zero()
        A = _as_v(a, self.cap)
        B = _as_v(b, self.cap)
        for (mb, eb), cb in B.terms.items():
            k = mb[0]
            shift = eb[0] - sum(k)
            if shift < 0:
                raise ValueError("second argument is not in V_v(g-)")
            for (ma, ea), ca in A.terms.items():
                p = ea[0] + shift
                if p > self.N_v or sum(ma[0]) > sum(k):
                    continue
                val = self.pair_monomials(ma[0], k)
                if val:
                    out = out + TruncSeries({(p,): ca * cb}, self.cap, V) * val
        return out


def _as_v(x, cap):
    if x.vars == V:
        return x.truncate(cap)
    if x.vars == ():
        return x.with_ring(V, cap)
    raise ValueError("expected v-series coefficients")


def pair_ev_vv(a, b, L, N_v):
    return EvPairing(L, N_v).pair(a, b)


def gram_matrix(L, D, N_v, pairing=None):
    if D > N_v:
        raise ValueError(f"degree bound {D} exceeds the v-cap {N_v}: entries cannot be resolved")
    P = pairing or EvPairing(L, N_v)
    idx = monomials(L.dim, D)
    return idx, {(j, k): P.pair_monomials(j, k) for j in idx for k in idx}


class GramReport:
    def __init__(self, indices, matrix, N_v):
        self.indices = indices
        self.matrix = matrix
        self.N_v = N_v
        self.entries = []

    def add(self, name, witness):
        self.entries.append((name, witness is None, witness))

    @property
    def ok(self):
        return all(p for _, p, _ in self.entries)

    def lines(self):
        return [f"PASS {n}" if p else f"FAIL {n} at {w}" for n, p, w in self.entries]

    def table(self):
        return render_gram(self.indices, self.matrix)


def gram_triangularity(L, D, N_v):
    idx, G = gram_matrix(L, D, N_v)
    rep = GramReport(idx, G, N_v)
    upper = diag = lower = None
    for j in idx:
        for k in idx:
            g = G[(j, k)]
            if sum(j) > sum(k):
                if g:
                    upper = upper or (j, k)
            elif sum(j) == sum(k):
                want = mfact(j) if j == k else 0
                if g != TruncSeries.const(want, (N_v,), V):
                    diag = diag or (j, k)
            else:
                if not g.divisible_by((sum(k) - sum(j),)):
                    lower = lower or (j, k)
    rep.add("zero block |j| > |k|", upper)
    rep.add("factorial diagonal |j| = |k|", diag)
    rep.add("v-divisibility |j| < |k|", lower)
    # nondegeneracy at v = 0, degree by degree
    bad = None
    for deg in range(D + 1):
        block = [j for j in idx if sum(j) == deg]
        for j in block:
            row = [G[(j, k)].constant() for k in block]
            if sum(1 for x in row if x) != 1:
                bad = bad or j
    rep.add("nondegenerate at v = 0", bad)
    return rep


def _fmt_index(j):
    return "(" + ",".join(str(a) for a in j) + ")"


def render_gram(indices, matrix):
    heads = [_fmt_index(k) for k in indices]
    cells = [[matrix[(j, k)].render() for k in indices] for j in indices]
    width = max([len(h) for h in heads] + [len(c) for row in cells for c in row] + [len("j \\ k")])
    lines = [" | ".join(["j \\ k".ljust(width)] + [h.ljust(width) for h in heads]).rstrip()]
    for j, row in zip(indices, cells):
        lines.append(" | ".join([_fmt_index(j).ljust(width)] + [c.ljust(width) for c in row]).rstrip())
    return lines


def gram_row(a, L, D, N_v, pairing=None):
    """k -> (a, v^|k| y_k)'_v for |k| <= D."""
    P = pairing or EvPairing(L, N_v)
    A = _as_v(a, P.cap)
    out = {}
    for k in monomials(L.dim, D):
        val = P.zero()
        for (ma, ea), c in A.terms.items():
            if sum(ma[0]) <= sum(k):
                val = val + TruncSeries({ea: c}, P.cap, V) * P.pair_monomials(ma[0], k)
        out[k] = val
    return out


def dual_reconstruct(values, L, D, N_v, pairing=None):
    """Find a in S(g+)[[v]] whose pairing with v^|k| y_k matches values[k] for |k| <= D."""
    P = pairing or EvPairing(L, N_v)
    idx = monomials(L.dim, D)
    G = {(j, k): P.pair_monomials(j, k) for j in idx for k in idx if sum(j) <= sum(k)}
    f = {k: values.get(k, TruncSeries({}, (N_v,), V)).recap((N_v,)) for k in idx}
    result = {}
    for s in range(N_v + 1):
        cap = (N_v - s,)
        coeff = {j: f[j] * Fraction(1, mfact(j)) for j in idx}
        for j, c in coeff.items():
            for (p,), x in c.coeffs.items():
                if p + s <= N_v:
                    key = (j, (p + s,))
                    result[key] = result.get(key, 0) + x
        residual = {}
        for k in idx:
            r = f[k]
            for j in idx:
                if sum(j) <= sum(k) and coeff[j]:
                    r = r - coeff[j] * G[(j, k)].recap(cap)
            residual[k] = r
        if s == N_v:
            if any(residual.values()):
                raise ValueError("values are not the pairing row of an element of S(g+)[[v]] at this truncation")
            break
        for k, r in residual.items():
            if not r.divisible_by((1,)):
                raise ValueError(f"residual at {k} is not divisible by v: not in the topological dual")
        f = {k: r.divide((1,)) for k, r in residual.items()}
    terms = {((j,), e): c for (j, e), c in result.items() if c}
    return EnvElement(P.sym, terms, (N_v,), V)
