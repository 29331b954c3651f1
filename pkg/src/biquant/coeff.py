"""Exact rationals and truncated power series in one or two commuting variables."""

from fractions import Fraction

UV = ("u", "v")
H = ("h",)


def rat(x):
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def fmt_rat(q):
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class CapMismatch(ValueError):
    pass


class NotInvertible(ZeroDivisionError):
    pass


def _within(e, cap):
    for a, b in zip(e, cap):
        if a > b:
            return False
    return True


def mul_terms(a, b, cap):
    """Truncated Cauchy product of two {exponents: Fraction} dicts."""
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if not _within(e, cap):
                continue
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def term_order(e):
    return (sum(e), e)


def render_monomial(e, vars):
    parts = []
    for name, k in zip(vars, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render_terms(terms, vars):
    """Canonical text: terms by total degree, then by degree in the first variable."""
    if not terms:
        return "0"
    out = []
    for e in sorted(terms, key=term_order):
        c = terms[e]
        mono = render_monomial(e, vars)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = fmt_rat(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{fmt_rat(mag)}*{mono}"
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


class TruncSeries:
    """Power series with exact coefficients, truncated above a per-variable cap.

    ``coeffs`` maps exponent tuples to nonzero Fractions. Univariate series in h
    use ``vars=("h",)``; bivariate ones use ``("u", "v")``.
    """

    __slots__ = ("coeffs", "cap", "vars")

    def __init__(self, coeffs=None, cap=(0, 0), vars=UV):
        cap = tuple(cap)
        if len(cap) != len(vars):
            raise ValueError("cap and variables differ in length")
        self.cap = cap
        self.vars = tuple(vars)
        clean = {}
        for e, c in (coeffs or {}).items():
            e = tuple(e)
            c = rat(c)
            if c and _within(e, cap):
                clean[e] = c
        self.coeffs = clean

    @classmethod
    def const(cls, c, cap=(0, 0), vars=UV):
        return cls({(0,) * len(vars): c}, cap, vars)

    @classmethod
    def monomial(cls, e, c=1, cap=(0, 0), vars=UV):
        return cls({tuple(e): c}, cap, vars)

    def _like(self, coeffs):
        return TruncSeries(coeffs, self.cap, self.vars)

    def _check(self, other):
        if self.cap != other.cap or self.vars != other.vars:
            raise CapMismatch(f"incompatible truncations {self.vars}{self.cap} and {other.vars}{other.cap}")

    def _lift(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        return TruncSeries.const(rat(other), self.cap, self.vars)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            c = rat(other)
            return self._like({e: c * a for e, a in self.coeffs.items()})
        self._check(other)
        return self._like(mul_terms(self.coeffs, other.coeffs, self.cap))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = TruncSeries.const(1, self.cap, self.vars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.vars == other.vars and self.cap == other.cap and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == TruncSeries.const(other, self.cap, self.vars)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, self.cap, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"TruncSeries({self.render()}, cap={self.cap})"

    def __str__(self):
        return self.render()

    def render(self):
        return render_terms(self.coeffs, self.vars)

    def constant(self):
        return self.coeffs.get((0,) * len(self.vars), Fraction(0))

    def __getitem__(self, e):
        return self.coeffs.get(tuple(e), Fraction(0))

    def invert(self):
        return series_invert(self)

    def recap(self, cap):
        return TruncSeries(self.coeffs, cap, self.vars)

    def divisible_by(self, e):
        return all(_within(e, k) for k in self.coeffs)

    def divide(self, e):
        """Exact division by the monomial with exponents ``e``; the cap shrinks accordingly."""
        if not self.divisible_by(e):
            raise ArithmeticError(f"{self.render()} is not divisible by {render_monomial(e, self.vars)}")
        cap = tuple(a - b for a, b in zip(self.cap, e))
        return TruncSeries({tuple(a - b for a, b in zip(k, e)): c for k, c in self.coeffs.items()}, cap, self.vars)


def series_mul(a, b):
    return a * b


def series_invert(a):
    c0 = a.constant()
    if not c0:
        raise NotInvertible("constant term is zero")
    # 1/a = (1/c0) * sum (-t)^k with t = a/c0 - 1 nilpotent at truncation
    t = a * (1 / c0) - 1
    total = sum(a.cap) + 1
    out = TruncSeries.const(1, a.cap, a.vars)
    power = TruncSeries.const(1, a.cap, a.vars)
    for _ in range(total):
        power = power * (-t)
        if not power:
            break
        out = out + power
    return out * (1 / c0)


def inflate(a, cap=None):
    """Send h to uv."""
    if a.vars != H:
        raise ValueError("inflate expects a series in h")
    if cap is None:
        cap = (a.cap[0], a.cap[0])
    return TruncSeries({(n, n): c for (n,), c in a.coeffs.items()}, cap, UV)


_MODES = {"u": ("u",), "v": ("v",), "both": ("u", "v")}


def killed_positions(vars, mode):
    try:
        names = _MODES[mode]
    except KeyError:
        raise ValueError(f"unknown projection mode {mode!r}") from None
    idx = tuple(i for i, name in enumerate(vars) if name in names)
    if not idx:
        raise ValueError(f"no variable to kill for mode {mode!r} in {vars}")
    return idx


def quotient_project(a, mode):
    """Kill the variables named by ``mode`` ("u", "v" or "both")."""
    killed = killed_positions(a.vars, mode)
    return a._like({e: c for e, c in a.coeffs.items() if all(e[i] == 0 for i in killed)})
