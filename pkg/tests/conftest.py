import math

import numpy as np
from hypothesis import settings, strategies as st

from hardysharp.profile import PowerLogPiece, RadialProfile

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def compact_profiles(draw, max_pieces=4, a_lo=-0.4, a_hi=2.0, r_lo=0.05, r_hi=6.0):
    """Positive power pieces on consecutive intervals inside ``(r_lo, r_hi)``."""
    k = draw(st.integers(1, max_pieces))
    cuts = sorted(draw(st.lists(st.floats(r_lo, r_hi), min_size=k + 1, max_size=k + 1,
                                unique=True)))
    pieces = []
    for lo, hi in zip(cuts, cuts[1:]):
        if hi - lo < 1e-3:
            continue
        c = draw(st.floats(0.1, 5.0))
        a = draw(st.floats(a_lo, a_hi))
        pieces.append(PowerLogPiece(c, a, 0, lo, hi))
    if not pieces:
        pieces = [PowerLogPiece(1.0, 0.0, 0, r_lo, r_hi)]
    return RadialProfile.from_pieces(pieces)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def assert_close(a, b, tol):
    assert rel(a, b) <= tol, (a, b, rel(a, b))


PI = math.pi


ACCEPTANCE_LINES = []


def report(criterion, passed, detail):
    line = f"ACCEPTANCE {criterion}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
