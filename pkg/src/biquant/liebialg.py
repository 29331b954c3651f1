"""Finite-dimensional Lie bialgebras given by structure constants."""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .coeff import fmt_rat, rat


class AxiomError(ValueError):
    pass


def _clean(d):
    return {k: rat(v) for k, v in d.items() if rat(v)}


def _acc(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class LieBialgebra:
    """Structure constants over Fractions, 0-based indices.

    ``bracket[(i, j, k)]`` is the coefficient of x_k in [x_i, x_j];
    ``cobracket[(k, i, j)]`` is the coefficient of x_i (x) x_j in delta(x_k).
    """

    def __init__(self, dim, bracket=None, cobracket=None, names=None):
        self.dim = int(dim)
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        self.bracket = _clean(bracket or {})
        self.cobracket = _clean(cobracket or {})
        for key in list(self.bracket) + list(self.cobracket):
            if any(not 0 <= a < self.dim for a in key):
                raise ValueError(f"index out of range in {key}")
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(self.dim))
        if len(self.names) != self.dim:
            raise ValueError("wrong number of basis names")
        self._br = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j, k), c in self.bracket.items():
            self._br[i][j][k] = c
        self._co = [{} for _ in range(self.dim)]
        for (k, i, j), c in self.cobracket.items():
            self._co[k][(i, j)] = c

    def br(self, i, j):
        """[x_i, x_j] as {k: coeff}."""
        return self._br[i][j]

    def cobr(self, k):
        """delta(x_k) as {(i, j): coeff}."""
        return self._co[k]

    def bracket_vec(self, a, b):
        out = {}
        for i, ca in a.items():
            for j, cb in b.items():
                for k, c in self._br[i][j].items():
                    _acc(out, k, ca * cb * c)
        return out

    def cobracket_vec(self, a):
        out = {}
        for k, ca in a.items():
            for ij, c in self._co[k].items():
                _acc(out, ij, ca * c)
        return out

    def ad_tensor(self, i, tensor):
        """x_i acting on an element of g^(x)n given as {index tuple: coeff}."""
        out = {}
        for key, c in tensor.items():
            for pos, a in enumerate(key):
                for k, b in self._br[i][a].items():
                    _acc(out, key[:pos] + (k,) + key[pos + 1:], c * b)
        return out

    def key(self):
        return (self.dim, frozenset(self.bracket.items()), frozenset(self.cobracket.items()))

    def __eq__(self, other):
        return isinstance(other, LieBialgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"LieBialgebra(dim={self.dim}, bracket={len(self.bracket)} terms, cobracket={len(self.cobracket)} terms)"

    def is_abelian(self):
        return not self.bracket

    def has_zero_cobracket(self):
        return not self.cobracket


@dataclass
class AxiomReport:
    entries: list = field(default_factory=list)  # (name, passed, witness)

    def add(self, name, witness):
        self.entries.append((name, witness is None, witness))

    @property
    def ok(self):
        return all(p for _, p, _ in self.entries)

    def __getitem__(self, name):
        for n, p, _ in self.entries:
            if n == name:
                return p
        raise KeyError(name)

    def lines(self):
        out = []
        for name, passed, witness in self.entries:
            if passed:
                out.append(f"PASS {name}")
            else:
                out.append(f"FAIL {name} at {witness}")
        return out


def _first_failure(items):
    for witness, residual in items:
        if residual:
            return witness
    return None


def check_axioms(L):
    d = L.dim
    rng = range(d)
    rep = AxiomReport()

    def antisym():
        for i, j in product(rng, rng):
            r = dict(L.br(i, j))
            for k, c in L.br(j, i).items():
                _acc(r, k, c)
            yield (i + 1, j + 1), r

    def jacobi():
        for i, j, k in product(rng, rng, rng):
            r = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                for key, val in L.bracket_vec({a: 1}, L.br(b, c)).items():
                    _acc(r, key, val)
            yield (i + 1, j + 1, k + 1), r

    def coantisym():
        for k in rng:
            r = dict(L.cobr(k))
            for (i, j), c in L.cobr(k).items():
                _acc(r, (j, i), c)
            yield (k + 1,), r

    def cojacobi():
        for k in rng:
            first = {}
            for (i, j), c in L.cobr(k).items():
                for (a, b), e in L.cobr(i).items():
                    _acc(first, (a, b, j), c * e)
            r = {}
            for (a, b, c), val in first.items():
                # tau(x (x) y (x) z) = y (x) z (x) x
                _acc(r, (a, b, c), val)
                _acc(r, (b, c, a), val)
                _acc(r, (c, a, b), val)
            yield (k + 1,), r

    def cocycle():
        for i, j in product(rng, rng):
            r = L.cobracket_vec(L.br(i, j))
            for key, c in L.ad_tensor(i, L.cobr(j)).items():
                _acc(r, key, -c)
            for key, c in L.ad_tensor(j, L.cobr(i)).items():
                _acc(r, key, c)
            yield (i + 1, j + 1), r

    rep.add("antisymmetry", _first_failure(antisym()))
    rep.add("jacobi", _first_failure(jacobi()))
    rep.add("co-antisymmetry", _first_failure(coantisym()))
    rep.add("co-jacobi", _first_failure(cojacobi()))
    rep.add("cocycle", _first_failure(cocycle()))
    return rep


def require_axioms(L):
    rep = check_axioms(L)
    if not rep.ok:
        bad = ", ".join(line for line in rep.lines() if line.startswith("FAIL"))
        raise AxiomError(f"not a Lie bialgebra: {bad}")
    return L


def dualize(L):
    require_axioms(L)
    bracket = {(i, j, k): c for (k, i, j), c in L.cobracket.items()}
    cobracket = {(k, i, j): c for (i, j, k), c in L.bracket.items()}
    names = tuple(f"{n}*" for n in L.names)
    return LieBialgebra(L.dim, bracket, cobracket, names)


def flip(L, which):
    if which == "op":
        return LieBialgebra(L.dim, {k: -c for k, c in L.bracket.items()}, L.cobracket, L.names)
    if which == "cop":
        return LieBialgebra(L.dim, L.bracket, {k: -c for k, c in L.cobracket.items()}, L.names)
    raise ValueError(f"flip expects 'op' or 'cop', got {which!r}")


def minus_part(L):
    """The Lie bialgebra dual to L with opposite bracket, as a standalone object."""
    return dualize(flip(L, "op"))


@dataclass
class DoubleData:
    plus: LieBialgebra
    double: LieBialgebra
    r: object  # TensorElement over U(d)^(x)2
    t: object
    plus_indices: range
    minus_indices: range

    @property
    def d(self):
        return self.plus.dim

    def x(self, i):
        return i

    def y(self, i):
        return self.plus.dim + i


def double_structure(L):
    """Bracket and cobracket constants of the double, before any checks."""
    n = L.dim
    br = {}
    for (i, j, k), c in L.bracket.items():
        br[(i, j, k)] = c
    for (k, a, b), c in L.cobracket.items():
        br[(n + a, n + b, n + k)] = br.get((n + a, n + b, n + k), 0) + c
    # [x_i, y_j] = sum_b f_i^{jb} x_b - sum_k c_{ik}^j y_k
    mixed = {}
    for (i, a, b), c in L.cobracket.items():
        _acc(mixed, (i, n + a, b), c)
    for (i, k, j), c in L.bracket.items():
        _acc(mixed, (i, n + j, n + k), -c)
    for (p, q, k), c in mixed.items():
        _acc(br, (p, q, k), c)
        _acc(br, (q, p, k), -c)
    D = LieBialgebra(2 * n, br, {}, L.names + tuple(f"y{i + 1}" for i in range(n)))
    # delta(X) = sum_i [X, x_i] (x) y_i + x_i (x) [X, y_i]
    co = {}
    for X in range(2 * n):
        for i in range(n):
            for k, c in D.br(X, i).items():
                _acc(co, (X, k, n + i), c)
            for k, c in D.br(X, n + i).items():
                _acc(co, (X, i, k), c)
    return LieBialgebra(2 * n, br, co, D.names)


def build_double(L):
    from .envelope import PBWAlgebra, TensorElement

    require_axioms(L)
    n = L.dim
    D = double_structure(L)
    alg = PBWAlgebra.from_lie(D)
    r = TensorElement.from_pairs(alg, [((i,), (n + i,), 1) for i in range(n)])
    t = r + r.permute((1, 0))
    return DoubleData(L, D, r, t, range(0, n), range(n, 2 * n))


def restriction_report(dd):
    """Check that g+ and g- sit inside the double as sub-bialgebras."""
    L, D, n = dd.plus, dd.double, dd.plus.dim
    M = minus_part(L)
    rep = AxiomReport()
    bad = None
    for i, j in product(range(n), range(n)):
        if D.br(i, j) != L.br(i, j):
            bad = bad or ("bracket", i + 1, j + 1)
        shifted = {n + k: c for k, c in M.br(i, j).items()}
        if D.br(n + i, n + j) != shifted:
            bad = bad or ("minus bracket", i + 1, j + 1)
    rep.add("subalgebras", bad)
    bad = None
    for k in range(n):
        if D.cobr(k) != L.cobr(k):
            bad = bad or ("plus", k + 1)
        shifted = {(n + a, n + b): c for (a, b), c in M.cobr(k).items()}
        if D.cobr(n + k) != shifted:
            bad = bad or ("minus", k + 1)
    rep.add("sub-coalgebras", bad)
    return rep


def t_invariance_witness(dd):
    """First basis X with [X (x) 1 + 1 (x) X, t] != 0, or None."""
    D, n = dd.double, dd.plus.dim
    t = {}
    for i in range(n):
        t[(i, n + i)] = Fraction(1)
        t[(n + i, i)] = Fraction(1)
    for X in range(D.dim):
        if D.ad_tensor(X, t):
            return X + 1
    return None


# ---- JSON documents -------------------------------------------------------


def _read_table(entries, keys, dim, what):
    table = {}
    for ent in entries:
        try:
            idx = tuple(int(ent[k]) - 1 for k in keys)
            c = rat(str(ent["coeff"]))
        except (KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"malformed {what} entry {ent!r}") from exc
        if any(not 0 <= a < dim for a in idx):
            raise ValueError(f"{what} index out of range in {ent!r}")
        if idx in table and table[idx] != c:
            raise ValueError(f"contradictory {what} entries for {tuple(a + 1 for a in idx)}")
        table[idx] = c
    return table


def _antisymmetrize(table, swap, what):
    out = dict(table)
    for idx, c in table.items():
        other = swap(idx)
        if other == idx:
            if c:
                raise ValueError(f"{what} entry {tuple(a + 1 for a in idx)} must vanish")
            continue
        if other in table and table[other] != -c:
            raise ValueError(f"contradictory {what} entries for {tuple(a + 1 for a in idx)}")
        out[other] = -c
    return out


def from_document(doc):
    dim = int(doc["dim"])
    br = _read_table(doc.get("bracket", []), ("i", "j", "k"), dim, "bracket")
    co = _read_table(doc.get("cobracket", []), ("k", "i", "j"), dim, "cobracket")
    br = _antisymmetrize(br, lambda t: (t[1], t[0], t[2]), "bracket")
    co = _antisymmetrize(co, lambda t: (t[0], t[2], t[1]), "cobracket")
    return LieBialgebra(dim, br, co, doc.get("names"))


def load_json(path):
    with open(path) as fh:
        return from_document(json.load(fh))


def to_document(L):
    bracket = [
        {"i": i + 1, "j": j + 1, "k": k + 1, "coeff": fmt_rat(c)}
        for (i, j, k), c in sorted(L.bracket.items())
        if i < j
    ]
    cobracket = [
        {"k": k + 1, "i": i + 1, "j": j + 1, "coeff": fmt_rat(c)}
        for (k, i, j), c in sorted(L.cobracket.items())
        if i < j
    ]
    return {"dim": L.dim, "names": list(L.names), "bracket": bracket, "cobracket": cobracket}


def dump_json(L):
    return json.dumps(to_document(L), indent=2)


# ---- stock examples ---------------------------------------------------------


def abelian(d, names=None):
    return LieBialgebra(d, {}, {}, names)


def borel():
    """Two-dimensional: [x1, x2] = x2, delta(x2) = x1 (x) x2 - x2 (x) x1."""
    return LieBialgebra(
        2,
        {(0, 1, 1): 1, (1, 0, 1): -1},
        {(1, 0, 1): 1, (1, 1, 0): -1},
    )


def abelian_with_cobracket():
    """Abelian bracket with delta(x2) = x1 (x) x2 - x2 (x) x1."""
    return LieBialgebra(2, {}, {(1, 0, 1): 1, (1, 1, 0): -1})
