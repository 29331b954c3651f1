from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from biquant.coeff import TruncSeries

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def series(draw, cap=(3, 3), vars=("u", "v"), const=None):
    exps = st.tuples(*[st.integers(0, c) for c in cap])
    coeffs = draw(st.dictionaries(exps, small, max_size=6))
    if const is not None:
        coeffs[(0,) * len(cap)] = Fraction(const)
    return TruncSeries(coeffs, cap, vars)


@st.composite
def invertible_series(draw, cap=(3, 3)):
    s = draw(series(cap))
    c = draw(small.filter(bool))
    return s - TruncSeries.const(s.constant(), cap) + TruncSeries.const(c, cap)


from pathlib import Path

import biquant

DATA = Path(biquant.__file__).parent / "data"
