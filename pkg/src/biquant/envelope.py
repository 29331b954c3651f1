"""PBW straightening, tensor powers of enveloping algebras and the symmetric bi-Poisson bialgebra."""

from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial

from .coeff import UV, TruncSeries, _within, fmt_rat, killed_positions, render_terms

PLAIN = ()


def _acc(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class PBWAlgebra:
    """U(g) in a PBW basis: monomials are exponent tuples over the generators.

    ``order`` lists generator indices in normal order (default: index order);
    exponent tuples are always indexed by the original generator index.
    """

    def __init__(self, dim, br=None, names=None, order=None, lie=None, commutative=False):
        self.dim = dim
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(dim))
        self.order = tuple(order) if order is not None else tuple(range(dim))
        if sorted(self.order) != list(range(dim)):
            raise ValueError("order must be a permutation of the generators")
        self.rank = [0] * dim
        for p, g in enumerate(self.order):
            self.rank[g] = p
        self._br = [[dict() for _ in range(dim)] for _ in range(dim)]
        if br is not None and not commutative:
            for i in range(dim):
                for j in range(dim):
                    self._br[i][j] = dict(br(i, j))
        self.lie = lie
        self.commutative = commutative or all(not self._br[i][j] for i in range(dim) for j in range(dim))
        self.one = (0,) * dim
        self._left = {}
        self._mul = {}

    @classmethod
    def from_lie(cls, L, order=None):
        return cls(L.dim, L.br, L.names, order=order, lie=L)

    @classmethod
    def symmetric(cls, L):
        """S(g) realized as the enveloping algebra of the abelianized g; keeps g for the Poisson bracket."""
        return cls(L.dim, None, L.names, lie=L, commutative=True)

    def reordered(self, order):
        return PBWAlgebra(self.dim, lambda i, j: self._br[i][j], self.names, order, self.lie, self.commutative)

    def bracket(self, i, j):
        return self._br[i][j]

    def unit(self, i):
        e = [0] * self.dim
        e[i] = 1
        return tuple(e)

    def degree(self, m):
        return sum(m)

    def first(self, m):
        for g in self.order:
            if m[g]:
                return g
        return None

    def letters(self, m):
        """Generators of a monomial in normal order, with repetition."""
        return [g for g in self.order for _ in range(m[g])]

    def left_gen(self, i, m):
        """x_i * m straightened, as {monomial: coeff}."""
        key = (i, m)
        hit = self._left.get(key)
        if hit is not None:
            return hit
        j = self.first(m)
        if j is None or self.rank[i] <= self.rank[j] or self.commutative:
            e = list(m)
            e[i] += 1
            out = {tuple(e): Fraction(1)}
        else:
            e = list(m)
            e[j] -= 1
            rest = tuple(e)
            out = {}
            for m2, c in self.left_gen(i, rest).items():
                for m3, c3 in self.left_gen(j, m2).items():
                    _acc(out, m3, c * c3)
            for k, b in self._br[i][j].items():
                for m2, c in self.left_gen(k, rest).items():
                    _acc(out, m2, b * c)
        self._left[key] = out
        return out

    def mono_mul(self, a, b):
        key = (a, b)
        hit = self._mul.get(key)
        if hit is not None:
            return hit
        if self.commutative:
            out = {tuple(x + y for x, y in zip(a, b)): Fraction(1)}
        else:
            out = {b: Fraction(1)}
            for g in reversed(self.letters(a)):
                nxt = {}
                for m, c in out.items():
                    for m2, c2 in self.left_gen(g, m).items():
                        _acc(nxt, m2, c * c2)
                out = nxt
        self._mul[key] = out
        return out

    def word(self, gens):
        """Product of generators in the given (arbitrary) order."""
        out = {self.one: Fraction(1)}
        for g in reversed(list(gens)):
            nxt = {}
            for m, c in out.items():
                for m2, c2 in self.left_gen(g, m).items():
                    _acc(nxt, m2, c * c2)
            out = nxt
        return out

    def render_mono(self, m):
        parts = []
        for g in self.order:
            k = m[g]
            if k == 1:
                parts.append(self.names[g])
            elif k > 1:
                parts.append(f"{self.names[g]}^{k}")
        return "*".join(parts) if parts else "1"

    def mono_sort_key(self, m):
        return (sum(m), tuple(-m[g] for g in self.order))


def monomials(dim, max_degree, min_degree=0):
    """All exponent tuples of total degree in [min_degree, max_degree], graded lexicographic."""
    out = []
    for deg in range(min_degree, max_degree + 1):
        out.extend(_monos_of_degree(dim, deg))
    return out


def _monos_of_degree(dim, deg):
    if dim == 0:
        return [()] if deg == 0 else []
    out = []
    for a in range(deg, -1, -1):
        for rest in _monos_of_degree(dim - 1, deg - a):
            out.append((a,) + rest)
    return out


class TensorElement:
    """Finite sum of k-fold tensors of PBW monomials with truncated-series coefficients.

    ``terms`` maps ``(monos, exps)`` to a nonzero Fraction, where ``monos`` is a
    k-tuple of exponent tuples and ``exps`` the exponent of the scalar variables.
    """

    __slots__ = ("algs", "vars", "cap", "terms")

    def __init__(self, algs, terms=None, cap=(), vars=PLAIN):
        self.algs = tuple(algs)
        self.vars = tuple(vars)
        self.cap = tuple(cap)
        if len(self.cap) != len(self.vars):
            raise ValueError("cap and variables differ in length")
        clean = {}
        for (monos, e), c in (terms or {}).items():
            if c and _within(e, self.cap):
                clean[(monos, e)] = c
        self.terms = clean

    # -- construction --------------------------------------------------------

    @classmethod
    def one(cls, algs, cap=(), vars=PLAIN):
        algs = tuple(algs)
        return cls(algs, {(tuple(a.one for a in algs), (0,) * len(vars)): Fraction(1)}, cap, vars)

    @classmethod
    def from_pairs(cls, alg, rows, arity=2):
        """Plain tensor from rows (word_1, ..., word_k, coeff), each word a sequence of generator indices."""
        algs = (alg,) * arity
        out = cls(algs)
        for row in rows:
            words, c = row[:-1], Fraction(row[-1])
            pieces = [alg.word(w) for w in words]
            terms = {}
            for combo in product(*[list(p.items()) for p in pieces]):
                coef = c
                for _, cc in combo:
                    coef *= cc
                _acc(terms, (tuple(m for m, _ in combo), ()), coef)
            out = out + cls(algs, terms)
        return out

    @classmethod
    def from_monomials(cls, algs, mapping, cap=(), vars=PLAIN):
        """From {monos: coeff} with scalar coefficients, or {monos: TruncSeries}."""
        terms = {}
        for monos, c in mapping.items():
            if isinstance(c, TruncSeries):
                for e, v in c.coeffs.items():
                    _acc(terms, (monos, e), v)
            else:
                _acc(terms, (monos, (0,) * len(vars)), Fraction(c))
        return cls(algs, terms, cap, vars)

    def _like(self, terms, algs=None, cap=None):
        return TensorElement(algs or self.algs, terms, self.cap if cap is None else cap, self.vars)

    # -- basic structure -----------------------------------------------------

    @property
    def arity(self):
        return len(self.algs)

    @property
    def alg(self):
        return self.algs[0]

    def with_ring(self, vars, cap):
        """Embed into another scalar ring; plain tensors are lifted as constants."""
        vars, cap = tuple(vars), tuple(cap)
        if self.vars == vars:
            return TensorElement(self.algs, self.terms, cap, vars)
        if self.vars == PLAIN:
            z = (0,) * len(vars)
            return TensorElement(self.algs, {(m, z): c for (m, _), c in self.terms.items()}, cap, vars)
        raise ValueError(f"cannot move from ring {self.vars} to {vars}")

    def _compatible(self, other):
        if self.vars != other.vars or self.cap != other.cap:
            if other.vars == PLAIN:
                return other.with_ring(self.vars, self.cap)
            raise ValueError(f"ring mismatch {self.vars}{self.cap} vs {other.vars}{other.cap}")
        if len(self.algs) != len(other.algs):
            raise ValueError("arity mismatch")
        return other

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            if other == 0:
                return self
            other = TensorElement.one(self.algs, self.cap, self.vars) * other
        other = self._compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return self._mul(other)
        if isinstance(other, TruncSeries):
            return self.scale_series(other)
        c = Fraction(other)
        if not c:
            return self._like({})
        return self._like({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, TruncSeries):
            return self.scale_series(other)
        return self * other

    def scale_series(self, s):
        if s.vars != self.vars:
            raise ValueError("series ring mismatch")
        out = {}
        for (m, e), c in self.terms.items():
            for f, d in s.coeffs.items():
                g = tuple(a + b for a, b in zip(e, f))
                if _within(g, self.cap):
                    _acc(out, (m, g), c * d)
        return self._like(out)

    def grouped(self):
        """{monos: {exps: coeff}}."""
        out = {}
        for (m, e), c in self.terms.items():
            out.setdefault(m, {})[e] = c
        return out

    def _mul(self, other):
        other = self._compatible(other)
        algs = self.algs
        cap = self.cap
        A = self.grouped()
        B = other.grouped()
        out = {}
        for ma, sa in A.items():
            for mb, sb in B.items():
                ser = {}
                for ea, ca in sa.items():
                    for eb, cb in sb.items():
                        e = tuple(x + y for x, y in zip(ea, eb))
                        if _within(e, cap):
                            _acc(ser, e, ca * cb)
                if not ser:
                    continue
                legs = [list(alg.mono_mul(a, b).items()) for alg, a, b in zip(algs, ma, mb)]
                for combo in product(*legs):
                    coef = Fraction(1)
                    for _, c in combo:
                        coef *= c
                    key = tuple(m for m, _ in combo)
                    for e, c in ser.items():
                        _acc(out, (key, e), coef * c)
        return self._like(out)

    def __pow__(self, n):
        out = TensorElement.one(self.algs, self.cap, self.vars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            if other.vars != self.vars or other.cap != self.cap:
                try:
                    other = self._compatible(other)
                except ValueError:
                    return False
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return f"TensorElement(arity={self.arity}, {self.render()})"

    def __str__(self):
        return self.render()

    # -- coefficient access --------------------------------------------------

    def coefficient(self, monos):
        monos = tuple(monos)
        return TruncSeries({e: c for (m, e), c in self.terms.items() if m == monos}, self.cap, self.vars)

    def series_terms(self):
        return {m: TruncSeries(s, self.cap, self.vars) for m, s in self.grouped().items()}

    def constant_term(self):
        z = (0,) * len(self.vars)
        one = tuple(a.one for a in self.algs)
        return self.terms.get((one, z), Fraction(0))

    def max_degree(self):
        return max((sum(sum(m) for m in ms) for ms, _ in self.terms), default=0)

    def order_part(self, e):
        """Plain tensor of the coefficient of the scalar monomial e."""
        e = tuple(e)
        return TensorElement(self.algs, {(m, ()): c for (m, f), c in self.terms.items() if f == e})

    # -- scalar-ring operations ----------------------------------------------

    def truncate(self, cap):
        return TensorElement(self.algs, self.terms, cap, self.vars)

    def project(self, mode):
        idx = killed_positions(self.vars, mode)
        return self._like({(m, e): c for (m, e), c in self.terms.items() if all(e[i] == 0 for i in idx)})

    def divisible_by(self, e):
        return all(_within(e, f) for (_, f) in self.terms)

    def divide(self, e):
        e = tuple(e)
        if not self.divisible_by(e):
            raise ArithmeticError("element is not divisible by the requested monomial")
        cap = tuple(a - b for a, b in zip(self.cap, e))
        return TensorElement(
            self.algs, {(m, tuple(a - b for a, b in zip(f, e))): c for (m, f), c in self.terms.items()}, cap, self.vars
        )

    def shift(self, e):
        e = tuple(e)
        return self._like({(m, tuple(a + b for a, b in zip(f, e))): c for (m, f), c in self.terms.items()})

    def inflate(self, cap=None):
        """h -> uv on an h-series tensor."""
        if self.vars != ("h",):
            raise ValueError("inflate expects h-series coefficients")
        N = self.cap[0]
        cap = cap or (N, N)
        return TensorElement(self.algs, {(m, (n, n)): c for (m, (n,)), c in self.terms.items()}, cap, UV)

    # -- leg operations ------------------------------------------------------

    def permute(self, perm):
        """New leg i is old leg perm[i]."""
        perm = tuple(perm)
        algs = tuple(self.algs[p] for p in perm)
        return self._like({(tuple(m[p] for p in perm), e): c for (m, e), c in self.terms.items()}, algs)

    def tensor(self, other):
        other = self._compatible_ring(other)
        out = {}
        for (ma, ea), ca in self.terms.items():
            for (mb, eb), cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if _within(e, self.cap):
                    _acc(out, (ma + mb, e), ca * cb)
        return TensorElement(self.algs + other.algs, out, self.cap, self.vars)

    def _compatible_ring(self, other):
        if other.vars == self.vars and other.cap == self.cap:
            return other
        if other.vars == PLAIN:
            return other.with_ring(self.vars, self.cap)
        raise ValueError("ring mismatch")

    def map_leg(self, leg, fn, alg=None):
        """Apply a linear map mono -> {mono: coeff} to one leg."""
        algs = list(self.algs)
        if alg is not None:
            algs[leg] = alg
        cache = {}
        out = {}
        for (ms, e), c in self.terms.items():
            m = ms[leg]
            img = cache.get(m)
            if img is None:
                img = cache[m] = fn(m)
            for m2, c2 in img.items():
                _acc(out, (ms[:leg] + (m2,) + ms[leg + 1:], e), c * c2)
        return TensorElement(algs, out, self.cap, self.vars)

    def split_leg(self, leg, fn):
        """Apply a linear map mono -> {(mono1, mono2): coeff} to one leg, doubling it."""
        algs = self.algs[:leg] + (self.algs[leg], self.algs[leg]) + self.algs[leg + 1:]
        cache = {}
        out = {}
        for (ms, e), c in self.terms.items():
            m = ms[leg]
            img = cache.get(m)
            if img is None:
                img = cache[m] = fn(m)
            for (a, b), c2 in img.items():
                _acc(out, (ms[:leg] + (a, b) + ms[leg + 1:], e), c * c2)
        return TensorElement(algs, out, self.cap, self.vars)

    def contract(self, leg, fn):
        """Apply a linear functional mono -> Fraction to one leg. Arity-1 input yields a TruncSeries."""
        out = {}
        for (ms, e), c in self.terms.items():
            v = fn(ms[leg])
            if v:
                _acc(out, (ms[:leg] + ms[leg + 1:], e), c * v)
        if self.arity == 1:
            return TruncSeries({e: c for ((), e), c in out.items()}, self.cap, self.vars)
        algs = self.algs[:leg] + self.algs[leg + 1:]
        return TensorElement(algs, out, self.cap, self.vars)

    def filter(self, pred):
        return self._like({k: c for k, c in self.terms.items() if pred(k[0], k[1])})

    # -- inverses and exponentials ------------------------------------------

    def inverse(self):
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("element has no invertible constant term")
        one = TensorElement.one(self.algs, self.cap, self.vars)
        t = self * (1 / c0) - one
        z = (0,) * len(self.vars)
        if any(e == z for (_, e) in t.terms):
            raise ZeroDivisionError("inverse requires the order-zero part to be a scalar")
        out = one
        power = one
        for _ in range(sum(self.cap) + 1):
            power = power * (-t)
            if not power:
                break
            out = out + power
        return out * (1 / c0)

    def exp(self):
        z = (0,) * len(self.vars)
        if any(e == z for (_, e) in self.terms):
            raise ValueError("exp requires positive order in the scalar variables")
        one = TensorElement.one(self.algs, self.cap, self.vars)
        out = one
        power = one
        for k in range(1, sum(self.cap) + 2):
            power = power * self * Fraction(1, k)
            if not power:
                break
            out = out + power
        return out

    # -- rendering -------------------------------------------------------------

    def render(self, sep=" ⊗ ", suffix=None):
        """Canonical text; ``suffix`` replaces the unit monomial and is appended to all others."""
        if not self.terms:
            return "0"
        groups = self.grouped()
        keys = sorted(groups, key=lambda ms: tuple(a.mono_sort_key(m) for a, m in zip(self.algs, ms)))
        parts = []
        for ms in keys:
            body = sep.join(a.render_mono(m) for a, m in zip(self.algs, ms))
            if suffix:
                body = suffix if body == "1" else f"{body} {suffix}"
            s = groups[ms]
            if self.vars == PLAIN:
                c = s[()]
                mag = abs(c)
                text = body if mag == 1 else f"{fmt_rat(mag)} {body}"
                if not parts:
                    parts.append(f"-{text}" if c < 0 else text)
                else:
                    parts.append(f"{'-' if c < 0 else '+'} {text}")
            else:
                parts.append(f"({render_terms(s, self.vars)}) {body}")
        return "\n".join(parts) if self.vars != PLAIN else " ".join(parts)


class EnvElement(TensorElement):
    """Arity-one TensorElement."""

    __slots__ = ()

    def __init__(self, alg, terms=None, cap=(), vars=PLAIN):
        if isinstance(alg, tuple):
            alg = alg[0]
        TensorElement.__init__(self, (alg,), terms, cap, vars)

    def _like(self, terms, algs=None, cap=None):
        if algs is not None and len(algs) != 1:
            return TensorElement(algs, terms, self.cap if cap is None else cap, self.vars)
        return EnvElement((algs or self.algs)[0], terms, self.cap if cap is None else cap, self.vars)

    @classmethod
    def from_terms(cls, alg, mapping, cap=(), vars=PLAIN):
        t = TensorElement.from_monomials((alg,), {(m,): c for m, c in mapping.items()}, cap, vars)
        return cls(alg, t.terms, cap, vars)

    @classmethod
    def gen(cls, alg, i, coeff=1, cap=(), vars=PLAIN, exps=None):
        e = tuple(exps) if exps is not None else (0,) * len(vars)
        return cls(alg, {((alg.unit(i),), e): Fraction(coeff)}, cap, vars)

    @classmethod
    def unit_elem(cls, alg, cap=(), vars=PLAIN):
        return cls(alg, {((alg.one,), (0,) * len(vars)): Fraction(1)}, cap, vars)

    @classmethod
    def mono(cls, alg, m, coeff=1, cap=(), vars=PLAIN, exps=None):
        e = tuple(exps) if exps is not None else (0,) * len(vars)
        return cls(alg, {((tuple(m),), e): Fraction(coeff)}, cap, vars)

    def as_env(self):
        return self

    def items(self):
        """(mono, exps, coeff) triples."""
        return [(m[0], e, c) for (m, e), c in self.terms.items()]


def as_env(t):
    if isinstance(t, EnvElement):
        return t
    if t.arity != 1:
        raise ValueError("not an arity-one element")
    return EnvElement(t.algs[0], t.terms, t.cap, t.vars)


def pbw_product(a, b):
    if a.algs != b.algs:
        raise ValueError("elements live in different algebras")
    return a * b


# ---- coproduct and counit -----------------------------------------------------


def mono_coproduct(m):
    """Delta(x^m) = sum_b prod binom(m_i, b_i) x^b (x) x^(m-b)."""
    out = {}
    for b in product(*[range(k + 1) for k in m]):
        c = 1
        for k, j in zip(m, b):
            c *= comb(k, j)
        out[(b, tuple(k - j for k, j in zip(m, b)))] = Fraction(c)
    return out


def env_coproduct(a, leg=0):
    """Standard coproduct applied to one leg (an arity-k element becomes arity k+1)."""
    return a.split_leg(leg, mono_coproduct)


def counit_mono(m):
    return Fraction(1) if not any(m) else Fraction(0)


def counit(a, leg=0):
    return a.contract(leg, counit_mono)


# ---- filtration and V_u --------------------------------------------------------


def filtration_degree(a):
    return max((sum(m[0]) for (m, _) in a.terms), default=0)


def vu_member(a, var="u"):
    """Each u^m coefficient lies in U^m(g)."""
    i = a.vars.index(var)
    return all(sum(sum(m) for m in ms) <= e[i] for (ms, e) in a.terms)


def top_symbol(a, sym_alg, var="u"):
    """q_u: the u^m coefficient goes to its degree-m symbol, as an element of S(g) with u set to 0."""
    if not vu_member(a, var):
        raise ValueError("element is not in V_u(g)")
    i = a.vars.index(var)
    out = {}
    for (ms, e), c in a.terms.items():
        if all(sum(m) == e[i] for m in ms):
            f = e[:i] + (0,) + e[i + 1:]
            _acc(out, (ms, f), c)
    return TensorElement((sym_alg,) * a.arity, out, a.cap, a.vars)


# ---- symmetrization ------------------------------------------------------------


def symmetrize(s, ualg):
    """eta: S(g) -> U(g), averaging over all orderings of each monomial."""

    def eta(m):
        letters = [g for g in range(len(m)) for _ in range(m[g])]
        n = len(letters)
        out = {}
        seen = {}
        for p in permutations(letters):
            seen[p] = seen.get(p, 0) + 1
        for word, mult in seen.items():
            for m2, c in ualg.word(word).items():
                _acc(out, m2, c * mult)
        f = Fraction(1, factorial(n))
        return {k: v * f for k, v in out.items()}

    return as_env(s.map_leg(0, eta, ualg)) if s.arity == 1 else s.map_leg(0, eta, ualg)


# ---- bi-Poisson structure of S(g) ------------------------------------------------


def _sub(m, i):
    e = list(m)
    e[i] -= 1
    return tuple(e)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def poisson_monos(L, a, b):
    """{x^a, x^b} in S(g) by bi-Leibniz."""
    out = {}
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            base = _add(_sub(a, i), _sub(b, j))
            for k, c in L.br(i, j).items():
                e = list(base)
                e[k] += 1
                _acc(out, tuple(e), c * ai * bj)
    return out


def sg_poisson_bracket(a, b):
    alg = a.alg
    L = alg.lie
    out = {}
    for (ma, ea), ca in a.terms.items():
        for (mb, eb), cb in b.terms.items():
            e = _add(ea, eb)
            if not _within(e, a.cap):
                continue
            for m, c in poisson_monos(L, ma[0], mb[0]).items():
                _acc(out, ((m,), e), ca * cb * c)
    return EnvElement(alg, out, a.cap, a.vars)


def tensor_poisson_bracket(A, B):
    """{a (x) a', b (x) b'} = ab (x) {a', b'} + {a, b} (x) a'b' on S(g) (x) S(g)."""
    L = A.algs[0].lie
    out = {}
    for ((a, a2), ea), ca in A.terms.items():
        for ((b, b2), eb), cb in B.terms.items():
            e = _add(ea, eb)
            if not _within(e, A.cap):
                continue
            c0 = ca * cb
            for m, c in poisson_monos(L, a2, b2).items():
                _acc(out, ((_add(a, b), m), e), c0 * c)
            for m, c in poisson_monos(L, a, b).items():
                _acc(out, ((m, _add(a2, b2)), e), c0 * c)
    return TensorElement(A.algs, out, A.cap, A.vars)


def _sym_cobracket_mono(L, m, cache):
    hit = cache.get(m)
    if hit is not None:
        return hit
    out = {}
    i = next((k for k, v in enumerate(m) if v), None)
    if i is None:
        cache[m] = out
        return out
    rest = _sub(m, i)
    if not any(rest):
        for (a, b), c in L.cobr(i).items():
            key = (tuple(1 if k == a else 0 for k in range(len(m))), tuple(1 if k == b else 0 for k in range(len(m))))
            _acc(out, key, c)
        cache[m] = out
        return out
    # delta(x_i rest) = delta(x_i) Delta(rest) + Delta(x_i) delta(rest)
    xi = tuple(1 if k == i else 0 for k in range(len(m)))
    dx = _sym_cobracket_mono(L, xi, cache)
    drest = _sym_cobracket_mono(L, rest, cache)
    for (a, b), c in dx.items():
        for (p, q), d in mono_coproduct(rest).items():
            _acc(out, (_add(a, p), _add(b, q)), c * d)
    for (p, q), d in drest.items():
        _acc(out, (_add(xi, p), q), d)
        _acc(out, (p, _add(xi, q)), d)
    cache[m] = out
    return out


def sg_poisson_cobracket(a):
    alg = a.alg
    L = alg.lie
    cache = {}
    return a.split_leg(0, lambda m: _sym_cobracket_mono(L, m, cache))
