"""Adaptive Simpson integration on a finite interval.

This is the package's independent numerical route: every closed-form
integral elsewhere in the library is checked against this integrator,
never the other way around, so it deliberately shares no code with the
closed forms it validates.
"""

from __future__ import annotations

from typing import Callable

from .errors import DomainError, QuadratureError

DEFAULT_TOL = 1e-12
DEFAULT_MAX_DEPTH = 60


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    *,
    tol: float = DEFAULT_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> float:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Classic recursive bisection with Richardson extrapolation: a panel is
    accepted when refining it moves the Simpson estimate by at most
    ``15 * tol``, and the extrapolated value is returned.  Each half
    inherits half the budget, so the accepted panels sum to within ``tol``
    overall.

    Raises:
        QuadratureError: if some panel still fails its acceptance test
            after ``max_depth`` bisections.
    """
    if a == b:
        return 0.0
    if not a < b:
        raise DomainError(f"a <= b violated (got a={a!r}, b={b!r})")
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    return _refine(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _refine(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    err = left + right - whole
    # NaN fails this comparison and falls through to the depth check.
    if abs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    if depth <= 0:
        raise QuadratureError(
            f"tolerance {tol:g} not reached on [{a:g}, {b:g}]; depth budget exhausted"
        )
    half = 0.5 * tol
    return _refine(f, a, m, fa, flm, fm, left, half, depth - 1) + _refine(
        f, m, b, fm, frm, fb, right, half, depth - 1
    )
