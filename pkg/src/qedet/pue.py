"""Undetected-error probabilities over the depolarizing channel.

A weight distribution determines the probability that an error lands in the
dual of the code but outside the code itself, which is exactly the event the
detection measurement cannot see:

    P_ue = sum_i (dual_weights[i] - weights[i]) (p/3)^i (1-p)^(n-i).

The subspace-uniform functional for unrestricted codes equals K/(K+1) times
this, and the completely-entangled-state functional equals it outright, so
all three protocol modes share one evaluation path.  An exact-rational mode
is available for tests; floating evaluation uses compensated summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .gf4 import AdditiveCode, dual
from .enumerators import EnumeratorPair

MODES = ("stabilizer", "nonstabilizer", "composite", "moments")


def _check_p(p) -> None:
    if not 0 <= p <= 0.75:
        raise ValueError(f"depolarizing probability {p} outside [0, 3/4]")


def _poly_eval(diffs, n: int, base_x, base_y, exact: bool):
    """sum_i diffs[i] * base_y^i * base_x^(n-i), with exact Fractions on request."""
    if exact:
        bx, by = Fraction(base_x), Fraction(base_y)
        return sum(
            Fraction(d) * by**i * bx ** (n - i)
            for i, d in enumerate(diffs) if d
        ) or Fraction(0)
    return math.fsum(
        d * base_y**i * base_x ** (n - i)
        for i, d in enumerate(diffs) if d
    )


def pue_stabilizer(pair: EnumeratorPair, p, *, exact: bool = False):
    """Undetected-error probability of the plain detection protocol."""
    _check_p(p)
    diffs = [bp - b for b, bp in zip(pair.weights, pair.dual_weights)]
    if exact:
        pf = Fraction(p)
        return _poly_eval(diffs, pair.n, 1 - pf, pf / 3, True)
    return _poly_eval(diffs, pair.n, 1 - p, p / 3, False)


def pue_nonstabilizer(pair: EnumeratorPair, p, *, exact: bool = False):
    """Subspace-uniform functional; exactly K/(K+1) times the stabilizer value."""
    base = pue_stabilizer(pair, p, exact=exact)
    if exact:
        return Fraction(pair.dim, pair.dim + 1) * base
    return pair.dim / (pair.dim + 1) * base


def pue_composite(pair: EnumeratorPair, p, *, exact: bool = False):
    """Undetected-error probability when completely entangled states are sent.

    Coincides with the stabilizer-protocol value.
    """
    return pue_stabilizer(pair, p, exact=exact)


def pue_via_moments(pair: EnumeratorPair, p, *, exact: bool = False):
    """Same probability expressed through binomial moments.

    From B(x, y) = M(x - y, y) the dual moments enter with positive sign:
    sum_w (dual_moments[w] - moments[w]) (p/3)^w (1 - 4p/3)^(n-w).
    """
    _check_p(p)
    diffs = [mp - m for m, mp in zip(pair.moments, pair.dual_moments)]
    if exact:
        pf = Fraction(p)
        return _poly_eval(diffs, pair.n, 1 - 4 * pf / 3, pf / 3, True)
    return _poly_eval(diffs, pair.n, 1 - 4 * p / 3, p / 3, False)


def pue_classical(counts, q: int, p, *, exact: bool = False):
    """Classical undetected-error probability of a distance distribution.

    counts is the distance distribution of a length-n code over a q-ary
    alphabet used on the symmetric channel with symbol error probability p.
    """
    n = len(counts) - 1
    if not 0 <= p <= (q - 1) / q:
        raise ValueError(f"symbol error probability {p} outside [0, (q-1)/q]")
    diffs = [0] + [int(c) for c in counts[1:]]
    if exact:
        pf = Fraction(p)
        return _poly_eval(diffs, n, 1 - pf, pf / (q - 1), True)
    return _poly_eval(diffs, n, 1 - p, p / (q - 1), False)


def pue_stabilizer_direct(code: AdditiveCode, p) -> float:
    """Reference evaluation summing Pr(E) over dual words outside the code.

    Enumerates the dual element by element instead of using the weight
    distributions; used to cross-check the polynomial form.
    """
    _check_p(p)
    return math.fsum(
        (p / 3) ** w.weight * (1 - p) ** (code.n - w.weight)
        for w in dual(code).codewords()
        if not code.contains(w)
    )


@dataclass(frozen=True)
class PueResult:
    code: str
    mode: str
    p: float
    value: float


_MODE_FUNCS = {
    "stabilizer": pue_stabilizer,
    "nonstabilizer": pue_nonstabilizer,
    "composite": pue_composite,
    "moments": pue_via_moments,
}


def sweep(pair: EnumeratorPair, p_grid, modes, code: str = "") -> list[PueResult]:
    """Evaluate the requested modes on a probability grid, one row per (p, mode)."""
    rows = []
    for p in p_grid:
        for mode in modes:
            try:
                fn = _MODE_FUNCS[mode]
            except KeyError:
                raise ValueError(f"unknown mode {mode!r}") from None
            rows.append(PueResult(code, mode, float(p), float(fn(pair, p))))
    return rows


def sweep_csv(rows) -> str:
    """CSV rendering with shortest round-trip float formatting."""
    lines = ["p,mode,pue"]
    lines.extend(f"{row.p!r},{row.mode},{row.value!r}" for row in rows)
    return "\n".join(lines) + "\n"
