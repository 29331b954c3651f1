"""Exact Gaussian elimination on sparse rational vectors."""

from fractions import Fraction


class Echelon:
    """Incrementally built row-echelon basis of a span of sparse vectors ({key: Fraction})."""

    def __init__(self):
        self.rows = {}  # pivot key -> normalized row

    def reduce(self, vec):
        v = {k: Fraction(c) for k, c in vec.items() if c}
        changed = True
        while changed:
            changed = False
            for p in [k for k in v if k in self.rows]:
                c = v.get(p)
                if not c:
                    continue
                for k, r in self.rows[p].items():
                    nv = v.get(k, 0) - c * r
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
                changed = True
        return v

    def add(self, vec):
        """Insert vec; return True if it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        plain = [k for k in v if not _is_tag(k)]
        p = min(plain or v, key=repr)
        c = v[p]
        row = {k: x / c for k, x in v.items()}
        for q, r in self.rows.items():
            f = r.get(p)
            if f:
                for k, x in row.items():
                    nv = r.get(k, 0) - f * x
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        self.rows[p] = row
        return True

    def __len__(self):
        return len(self.rows)


def _is_tag(k):
    return isinstance(k, tuple) and len(k) == 2 and k[0] == "__tag__"


def rank(vectors):
    e = Echelon()
    return sum(1 for v in vectors if e.add(v))


def solve_combination(target, vectors):
    """Coefficients c with sum c_i vectors[i] = target, or None if target is outside the span."""
    # augment each vector with a tag coordinate recording its index
    e = Echelon()
    for i, v in enumerate(vectors):
        aug = dict(v)
        aug[("__tag__", i)] = Fraction(1)
        e.add(aug)
    red = e.reduce(target)
    if any(not _is_tag(k) for k in red):
        return None
    out = [Fraction(0)] * len(vectors)
    for (_, i), c in red.items():
        out[i] = -c
    return out
