"""An even group-like associator through degree 3, solved from the hexagon and pentagon equations.

Hexagons are written in the three-strand algebra of infinitesimal braids, which is the
free algebra on A = t12, B = t23 tensored with the central element t12 + t13 + t23; the
central factors cancel, leaving identities in the free algebra on A, B.
The pentagon lives in the four-strand algebra, handled as the free algebra on the six
t_ij modulo the degree-2 infinitesimal braid relations.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .cbh import LieSeries, expand, fa_add, fa_exp, fa_homogeneous, fa_mul, fa_scale, lie_degree
from .linalg import Echelon

MAX_ORDER = 3
AB = ("A", "B")
BRACKET_AB = ("A", "B")


class UnsupportedOrder(ValueError):
    pass


def _lin(**parts):
    """Linear combination of letters: {(letter,): coeff}."""
    return {(k,): Fraction(v) for k, v in parts.items() if v}


def _lie_eval(exponent, P, Q, N):
    """The exponent Lie series with A -> P, B -> Q (associative polynomials)."""
    out = {}
    for w, c in exponent.items():
        out = fa_add(out, expand(w, {"A": P, "B": Q}, N), c)
    return out


def phi_series(exponent, P, Q, N, inverse=False):
    """Phi(P, Q) = exp(exponent(P, Q)) in the free associative algebra, through degree N."""
    e = _lie_eval(exponent, P, Q, N)
    if inverse:
        e = fa_scale(e, -1)
    return fa_exp(e, N)


def _prod(N, *factors):
    out = {(): Fraction(1)}
    for f in factors:
        out = fa_mul(out, f, N)
    return out


def hexagon_residuals(exponent, N):
    A = _lin(A=1)
    B = _lin(B=1)
    mAB = _lin(A=-1, B=-1)
    e = lambda x, s: fa_exp(fa_scale(x, Fraction(s)), N)
    # first hexagon, braiding sigma exp(t/2)
    lhs = _prod(N, phi_series(exponent, B, mAB, N), e(B, Fraction(-1, 2)), phi_series(exponent, A, B, N))
    rhs = _prod(N, e(fa_add(A, B), Fraction(-1, 2)), phi_series(exponent, A, mAB, N), e(A, Fraction(1, 2)))
    h1 = fa_add(lhs, rhs, -1)
    # second hexagon
    lhs = _prod(
        N,
        phi_series(exponent, mAB, A, N, inverse=True),
        e(A, Fraction(-1, 2)),
        phi_series(exponent, A, B, N, inverse=True),
    )
    rhs = _prod(
        N,
        e(fa_add(A, B), Fraction(-1, 2)),
        phi_series(exponent, mAB, B, N, inverse=True),
        e(B, Fraction(1, 2)),
    )
    h2 = fa_add(lhs, rhs, -1)
    return h1, h2


STRANDS4 = ("12", "13", "14", "23", "24", "34")


def _t(*names):
    return {(n,): Fraction(1) for n in names}


def braid_relations():
    """Degree-2 relations of the four-strand infinitesimal braid algebra."""
    rels = []
    comm = lambda a, b: fa_add(fa_mul(a, b, 2), fa_mul(b, a, 2), -1)
    for a, b in combinations(STRANDS4, 2):
        if not set(a) & set(b):
            rels.append(comm(_t(a), _t(b)))
    for i, j, k in combinations("1234", 3):
        ij, ik, jk = i + j, i + k, j + k
        rels.append(comm(_t(ij), _t(ik, jk)))
        rels.append(comm(_t(ik), _t(ij, jk)))
        rels.append(comm(_t(jk), _t(ij, ik)))
    return rels


def ideal_echelon(n):
    """Degree-n component of the two-sided ideal generated by the braid relations."""
    ech = Echelon()
    rels = braid_relations()
    for left in range(n - 1):
        right = n - 2 - left
        for u in product(STRANDS4, repeat=left):
            for w in product(STRANDS4, repeat=right):
                for r in rels:
                    vec = {u + word + w: c for word, c in r.items()}
                    ech.add(vec)
    return ech


def pentagon_residual(exponent, N):
    P = lambda *a: _t(*a)
    phi = lambda x, y: phi_series(exponent, x, y, N)
    lhs = _prod(N, phi(P("12"), P("23", "24")), phi(P("13", "23"), P("34")))
    rhs = _prod(N, phi(P("23"), P("34")), phi(P("12", "13"), P("24", "34")), phi(P("12"), P("23")))
    return fa_add(lhs, rhs, -1)


def reduce_mod_braids(poly, N, cache={}):
    out = {}
    for n in range(2, N + 1):
        part = fa_homogeneous(poly, n)
        if not part:
            continue
        if n not in cache:
            cache[n] = ideal_echelon(n)
        out.update(cache[n].reduce(part))
    for n in (0, 1):
        out.update(fa_homogeneous(poly, n))
    return out


@dataclass
class AssociatorTable:
    exponent: LieSeries
    order: int
    residuals: dict = field(default_factory=dict)

    @property
    def coefficient(self):
        return self.exponent.coefficient(BRACKET_AB)

    def words(self, N=None, inverse=False):
        """Phi (or its inverse) as {word over 'A','B': coeff} through degree N."""
        N = self.order if N is None else N
        return phi_series(self.exponent.terms, _lin(A=1), _lin(B=1), N, inverse)

    @property
    def ok(self):
        return all(not r for r in self.residuals.values())


def _solve_linear(r0, r1):
    """c with r0 + c r1 = 0 coordinatewise, or None if inconsistent."""
    c = None
    for w in set(r0) | set(r1):
        a, b = r0.get(w, 0), r1.get(w, 0)
        if b == 0:
            if a != 0:
                return None
            continue
        cand = -a / b
        if c is None:
            c = cand
        elif c != cand:
            return None
    return c


def solve_degree2():
    """Solve both hexagons in degree 2 for c in exp(c [A, B])."""
    base = {}
    unit = {BRACKET_AB: Fraction(1)}
    sols = []
    for k in range(2):
        r0 = fa_homogeneous(hexagon_residuals(base, 2)[k], 2)
        r1 = fa_add(fa_homogeneous(hexagon_residuals(unit, 2)[k], 2), r0, -1)
        sols.append(_solve_linear(r0, r1))
    if sols[0] is None or sols[0] != sols[1]:
        raise ArithmeticError(f"hexagon equations admit no common degree-2 solution: {sols}")
    return sols[0]


def associator(N=MAX_ORDER):
    if N > MAX_ORDER:
        raise UnsupportedOrder(f"associator data is only available through degree {MAX_ORDER}, got {N}")
    if N < 1:
        raise UnsupportedOrder("order must be at least 1")
    c = solve_degree2()
    terms = {BRACKET_AB: c} if N >= 2 else {}
    # odd degrees vanish for an even associator; degree 3 is therefore empty
    exponent = LieSeries(terms, N, AB)
    h1, h2 = hexagon_residuals(exponent.terms, N)
    pent = reduce_mod_braids(pentagon_residual(exponent.terms, N), N)
    return AssociatorTable(exponent, N, {"hexagon 1": h1, "hexagon 2": h2, "pentagon": pent})


def is_even(table):
    return all(lie_degree(w) % 2 == 0 for w in table.exponent.terms)
