"""Campbell-Hausdorff series, its v-rescaling and the coproduct it induces on S(g)[[v]]."""

from fractions import Fraction
from functools import lru_cache

from .coeff import TruncSeries, fmt_rat
from .envelope import PBWAlgebra, TensorElement
from .linalg import solve_combination

LETTERS = ("X", "Y")


# ---- free associative algebra: {word tuple: Fraction} ---------------------------


def fa_add(a, b, scale=1):
    out = dict(a)
    for w, c in b.items():
        v = out.get(w, 0) + scale * c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def fa_mul(a, b, N):
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            if len(wa) + len(wb) > N:
                continue
            w = wa + wb
            v = out.get(w, 0) + ca * cb
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def fa_scale(a, c):
    return {w: c * v for w, v in a.items() if c * v}


def fa_exp(a, N):
    """exp of a series without constant term, through degree N."""
    out = {(): Fraction(1)}
    power = {(): Fraction(1)}
    for k in range(1, N + 1):
        power = fa_scale(fa_mul(power, a, N), Fraction(1, k))
        if not power:
            break
        out = fa_add(out, power)
    return out


def fa_log(a, N):
    """log of a series with constant term 1, through degree N."""
    z = dict(a)
    if z.get((), 0) != 1:
        raise ValueError("log needs constant term 1")
    del z[()]
    out = {}
    power = {(): Fraction(1)}
    for k in range(1, N + 1):
        power = fa_mul(power, z, N)
        if not power:
            break
        out = fa_add(out, power, Fraction((-1) ** (k + 1), k))
    return out


def fa_homogeneous(a, n):
    return {w: c for w, c in a.items() if len(w) == n}


def log_exp_product(N, letters=LETTERS):
    """log(e^X e^Y) in the free associative algebra, through degree N."""
    X = {(letters[0],): Fraction(1)}
    Y = {(letters[1],): Fraction(1)}
    return fa_log(fa_mul(fa_exp(X, N), fa_exp(Y, N), N), N)


# ---- Lie words ------------------------------------------------------------------
# A Lie word is a letter (str) or a pair (left, right) meaning [left, right].


def lie_degree(w):
    if isinstance(w, str):
        return 1
    return lie_degree(w[0]) + lie_degree(w[1])


def lie_leaves(w):
    if isinstance(w, str):
        return (w,)
    return lie_leaves(w[0]) + lie_leaves(w[1])


def lie_render(w):
    if isinstance(w, str):
        return w
    return f"[{lie_render(w[0])},{lie_render(w[1])}]"


def expand(w, subst=None, N=None):
    """Associative expansion of a Lie word; leaves may be substituted by series."""
    if isinstance(w, str):
        if subst is None:
            return {(w,): Fraction(1)}
        return dict(subst[w])
    N = N if N is not None else lie_degree(w) if subst is None else 10**9
    a = expand(w[0], subst, N)
    b = expand(w[1], subst, N)
    return fa_add(fa_mul(a, b, N), fa_mul(b, a, N), -1)


def right_normed(seq):
    w = seq[-1]
    for a in reversed(seq[:-1]):
        w = (a, w)
    return w


def lyndon_words(n, letters=LETTERS):
    """Lyndon words of length n over the ordered alphabet (Duval's algorithm)."""
    k = len(letters)
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            out.append(tuple(letters[i] for i in w))
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def standard_bracketing(word):
    """[b(u), b(v)] with v the longest proper Lyndon suffix."""
    if len(word) == 1:
        return word[0]
    for i in range(1, len(word)):
        v = word[i:]
        if _is_lyndon(v):
            return (standard_bracketing(word[:i]), standard_bracketing(v))
    raise ValueError("not a Lyndon word")


def _is_lyndon(w):
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def lie_basis(n, letters=LETTERS):
    """The Lyndon basis of the degree-n part of the free Lie algebra."""
    return tuple(standard_bracketing(w) for w in lyndon_words(n, letters))


def to_lie(poly, n, letters=LETTERS):
    """Express a homogeneous Lie polynomial of degree n in the Lyndon basis."""
    basis = lie_basis(n, letters)
    coeffs = solve_combination(poly, [expand(w) for w in basis])
    if coeffs is None:
        raise ValueError(f"degree-{n} component is not a Lie polynomial")
    return {w: c for w, c in zip(basis, coeffs) if c}


class LieSeries:
    """Graded sum of Lie words, coefficients Fractions (or TruncSeries after rescaling)."""

    def __init__(self, terms, order, letters=LETTERS):
        self.terms = {w: c for w, c in terms.items() if c}
        self.order = order
        self.letters = letters

    def degree_part(self, n):
        return {w: c for w, c in self.terms.items() if lie_degree(w) == n}

    def coefficient(self, w):
        return self.terms.get(w, Fraction(0))

    def expand(self, subst=None, N=None):
        """Associative expansion; only valid for Fraction coefficients."""
        N = N if N is not None else self.order
        out = {}
        for w, c in self.terms.items():
            out = fa_add(out, expand(w, subst, N), c)
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: (lie_degree(wc[0]), _word_rank(wc[0], self.letters)))

    def lines(self):
        out = []
        for w, c in self.sorted_terms():
            coef = c.render() if isinstance(c, TruncSeries) else fmt_rat(c)
            out.append(f"{lie_degree(w)}  {coef} {lie_render(w)}")
        return out


def _word_rank(w, letters):
    return tuple(letters.index(a) for a in lie_leaves(w))


def bch(N):
    if N < 1:
        raise ValueError("order must be at least 1")
    full = log_exp_product(N)
    terms = {}
    for n in range(1, N + 1):
        terms.update(to_lie(fa_homogeneous(full, n), n))
    return LieSeries(terms, N)


def bch_reexpansion_residual(N):
    """log(e^X e^Y) minus the re-expanded Lie form, through degree N."""
    return fa_add(log_exp_product(N), bch(N).expand(), -1)


def mu_v(N):
    """Each degree-n word of bch(N) scaled by v^(n-1)."""
    S = bch(N)
    cap = (N - 1,)
    terms = {w: TruncSeries({(lie_degree(w) - 1,): c}, cap, ("v",)) for w, c in S.terms.items()}
    return LieSeries(terms, N)


def bch_associativity_residual(N):
    """mu(mu(X,Y),Z) - mu(X,mu(Y,Z)) in the free associative algebra on X, Y, Z, through degree N."""
    S = bch(N)
    X = {("X",): Fraction(1)}
    Y = {("Y",): Fraction(1)}
    Z = {("Z",): Fraction(1)}
    XY = S.expand({"X": X, "Y": Y}, N)
    YZ = S.expand({"X": Y, "Y": Z}, N)
    left = S.expand({"X": XY, "Y": Z}, N)
    right = S.expand({"X": X, "Y": YZ}, N)
    return fa_add(left, right, -1)


# ---- the coproduct of E_v(g) ------------------------------------------------------


def dualize_word(L, k, w):
    """The functional x_k o w on g* x g*, as {((letter, index), ...) in leaf order: coeff}."""
    if isinstance(w, str):
        return {((w, k),): Fraction(1)}
    out = {}
    for (a, b), c in L.cobr(k).items():
        left = dualize_word(L, a, w[0])
        right = dualize_word(L, b, w[1])
        for ka, ca in left.items():
            for kb, cb in right.items():
                key = ka + kb
                v = out.get(key, 0) + c * ca * cb
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


def generator_coproduct(L, k, N_v, sym=None):
    """Delta'(x_k) on S(g) (x) S(g) with v-series coefficients through v^N_v."""
    sym = sym or PBWAlgebra.symmetric(L)
    S = bch(N_v + 1)
    d = L.dim
    out = {}
    for w, c in S.terms.items():
        p = lie_degree(w) - 1
        for leaves, coef in dualize_word(L, k, w).items():
            first = [0] * d
            second = [0] * d
            for letter, idx in leaves:
                (first if letter == "X" else second)[idx] += 1
            key = ((tuple(first), tuple(second)), (p,))
            v = out.get(key, 0) + c * coef
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return TensorElement((sym, sym), out, (N_v,), ("v",))


def ev_coproduct(a, L, N_v):
    """Delta' on an element of S(g)[[v]], as the algebra-morphism extension of the generator formula."""
    sym = a.alg
    gens = [generator_coproduct(L, k, N_v, sym) for k in range(L.dim)]
    cache = {}

    def on_mono(m):
        hit = cache.get(m)
        if hit is None:
            hit = TensorElement.one((sym, sym), (N_v,), ("v",))
            for k, e in enumerate(m):
                for _ in range(e):
                    hit = hit * gens[k]
            cache[m] = hit
        return hit

    A = a if a.vars == ("v",) else a.with_ring(("v",), (N_v,))
    if A.cap != (N_v,):
        A = A.truncate((N_v,))
    out = TensorElement((sym, sym), {}, (N_v,), ("v",))
    for (ms, e), c in A.terms.items():
        out = out + on_mono(ms[0]).shift(e) * c
    return out
