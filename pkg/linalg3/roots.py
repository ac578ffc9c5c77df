"""
Real roots of a monic cubic inside caller-supplied brackets.

Each bracket is shrunk by bisection, then polished with a few guarded
Newton steps that must stay inside the bracket and reduce |p|.
"""

import math

from config.settings import Config
from utils.errors import InvalidInput, NoSignChange
from utils.logger import log


def _validate_brackets(brackets):
    checked = []
    for lo, hi in brackets:
        lo, hi = float(lo), float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
            raise InvalidInput(f"invalid bracket ({lo!r}, {hi!r})")
        checked.append((lo, hi))
    if len(checked) != 3:
        raise InvalidInput(f"expected three brackets, got {len(checked)}")
    ordered = sorted(checked)
    for (_, hi), (lo, _) in zip(ordered, ordered[1:]):
        if hi > lo:
            raise InvalidInput("brackets overlap")
    return ordered


def bisect_root(evaluate, lo, hi):
    """
    Shrink a sign-changing bracket to ``BISECTION_WIDTH`` (relative).

    Returns:
        tuple: (lo, hi) of the final bracket
    """
    f_lo = evaluate(lo)
    f_hi = evaluate(hi)
    if not f_lo * f_hi < 0.0:
        raise NoSignChange(f"p({lo!r}) = {f_lo!r} and p({hi!r}) = {f_hi!r} share a sign")

    for _ in range(Config.BISECTION_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if hi - lo <= Config.BISECTION_WIDTH * max(1.0, abs(mid)):
            break
        f_mid = evaluate(mid)
        if f_mid == 0.0:
            return mid, mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return lo, hi


def solve_bracketed_cubic(cubic, brackets, evaluate=None):
    """
    Locate one root of ``cubic`` in each of three disjoint brackets.

    Args:
        cubic (MonicCubic): The polynomial (its derivative drives Newton)
        brackets (iterable): Three (lo, hi) pairs with a sign change across each
        evaluate (callable, optional): Numerically better evaluation of the
            same polynomial, e.g. a factored form

    Returns:
        tuple: Three roots, ascending
    """
    evaluate = evaluate or cubic
    roots = []
    for lo, hi in _validate_brackets(brackets):
        lo, hi = bisect_root(evaluate, lo, hi)
        x = 0.5 * (lo + hi)
        fx = evaluate(x)
        for _ in range(Config.NEWTON_MAX_STEPS):
            slope = cubic.derivative(x)
            if fx == 0.0 or slope == 0.0:
                break
            candidate = x - fx / slope
            if not lo <= candidate <= hi:
                break
            f_candidate = evaluate(candidate)
            if abs(f_candidate) >= abs(fx):
                break
            x, fx = candidate, f_candidate
        roots.append(x)

    log.debug(f"Cubic roots {roots}")
    return tuple(roots)
