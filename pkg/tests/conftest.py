from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from motent import TruncatedSeries, WittElement
from motent.series import RING_Q, RING_QZ, Poly

settings.register_profile("motent", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("motent")

small_q = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))
small_poly = st.lists(small_q, min_size=0, max_size=3).map(Poly)


@st.composite
def witt_elements(draw, trunc=8, ring=RING_Q):
    elem = small_q if ring == RING_Q else small_poly
    cs = [Fraction(1) if ring == RING_Q else Poly([1])] + draw(st.lists(elem, min_size=trunc, max_size=trunc))
    return WittElement(TruncatedSeries.from_coeffs(cs, trunc, ring))


@st.composite
def series(draw, trunc=8, ring=RING_Q, unit=False):
    elem = small_q if ring == RING_Q else small_poly
    cs = draw(st.lists(elem, min_size=trunc + 1, max_size=trunc + 1))
    if unit:
        cs[0] = Fraction(1) if ring == RING_Q else Poly([1])
    return TruncatedSeries.from_coeffs(cs, trunc, ring)


__all__ = ["small_q", "small_poly", "witt_elements", "series", "RING_QZ"]
