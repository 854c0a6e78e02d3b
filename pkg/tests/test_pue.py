"""Closed-form undetected-error probabilities and their cross identities."""

from __future__ import annotations

from fractions import Fraction

import pytest

from qedet.catalog import get_code
from qedet.enumerators import stabilizer_enumerators
from qedet.pue import (PueResult, pue_classical, pue_composite,
                       pue_nonstabilizer, pue_stabilizer,
                       pue_stabilizer_direct, pue_via_moments, sweep,
                       sweep_csv)

CATALOG_NAMES = ("trivial-n1", "bell", "c422", "five13")
GRID = [i * 0.75 / 19 for i in range(20)]


@pytest.fixture(scope="module")
def pairs():
    return {name: stabilizer_enumerators(get_code(name)) for name in CATALOG_NAMES}


def test_p_zero_gives_zero(pairs):
    for pair in pairs.values():
        assert pue_stabilizer(pair, 0.0) == 0.0
        assert pue_nonstabilizer(pair, 0.0) == 0.0
        assert pue_via_moments(pair, 0.0) == 0.0


def test_p_out_of_range(pairs):
    for bad in (-0.01, 0.76, 1.0):
        with pytest.raises(ValueError):
            pue_stabilizer(pairs["c422"], bad)


def test_trivial_code_identity(pairs):
    # A code that detects nothing has undetected-error probability exactly p.
    for p in GRID:
        assert pue_stabilizer(pairs["trivial-n1"], Fraction(p), exact=True) == Fraction(p)
        assert pue_stabilizer(pairs["trivial-n1"], p) == pytest.approx(p, rel=1e-15)


def test_five13_frozen_value(pairs):
    # (dual - code) weights are (0,0,0,30,0,18); at p = 1/10 the exact value
    # is 30 (1/30)^3 (9/10)^2 + 18 (1/30)^5 = 76/84375.
    exact = pue_stabilizer(pairs["five13"], Fraction(1, 10), exact=True)
    assert exact == Fraction(76, 84375)
    assert pue_stabilizer(pairs["five13"], 0.1) == pytest.approx(76 / 84375, rel=1e-14)


def test_nonstabilizer_ratio_is_dim_over_dim_plus_one(pairs):
    for name, pair in pairs.items():
        k = pair.dim
        for p in GRID[1:]:
            s = pue_stabilizer(pair, p)
            ns = pue_nonstabilizer(pair, p)
            if s > 0:
                assert ns / s == pytest.approx(k / (k + 1), rel=1e-15)


def test_composite_equals_stabilizer(pairs):
    for pair in pairs.values():
        for p in [i * 0.075 for i in range(11)]:
            assert pue_composite(pair, p) == pue_stabilizer(pair, p)


def test_moments_form_matches_on_dense_grid(pairs):
    for pair in pairs.values():
        for p in GRID:
            a = pue_via_moments(pair, p)
            b = pue_stabilizer(pair, p)
            assert a == pytest.approx(b, rel=1e-12, abs=1e-300)


def test_moments_form_exact_rational(pairs):
    for pair in pairs.values():
        for p in (Fraction(1, 10), Fraction(3, 4), Fraction(0)):
            assert pue_via_moments(pair, p, exact=True) == \
                pue_stabilizer(pair, p, exact=True)


def test_moments_form_at_three_quarters_collapses(pairs):
    # (1 - 4p/3) vanishes at p = 3/4, leaving only the top term.
    pair = pairs["c422"]
    diffs = [mp - m for m, mp in zip(pair.moments, pair.dual_moments)]
    expected = diffs[pair.n] * (0.75 / 3) ** pair.n
    assert pue_via_moments(pair, 0.75) == pytest.approx(expected, rel=1e-14)


def test_values_are_probabilities(pairs):
    for pair in pairs.values():
        for p in GRID:
            for fn in (pue_stabilizer, pue_nonstabilizer, pue_via_moments):
                val = fn(pair, p)
                assert -1e-15 <= val <= 1.0


def test_direct_coset_sum_matches_polynomial(pairs):
    for name in CATALOG_NAMES:
        code = get_code(name)
        pair = pairs[name]
        for p in GRID:
            direct = pue_stabilizer_direct(code, p)
            poly = pue_stabilizer(pair, p)
            assert direct == pytest.approx(poly, rel=1e-12, abs=1e-300)


def test_classical_repetition_code():
    # Binary length-3 repetition code: only the all-ones word goes undetected.
    assert pue_classical((1, 0, 0, 1), 2, 0.1) == pytest.approx(0.001, rel=1e-15)


def test_classical_zero_distribution():
    assert pue_classical((1, 0, 0, 0), 2, 0.3) == 0.0


def test_classical_gf4_view_of_c422(pairs):
    # The additive code of c422, read as a classical quaternary code, has its
    # own undetected-error probability, unrelated to the quantum value.
    code_weights = pairs["c422"].weights
    classical = pue_classical(code_weights, 4, 0.1)
    expected = 3 * (0.1 / 3) ** 4  # three weight-4 words
    assert classical == pytest.approx(expected, rel=1e-14)
    assert classical != pytest.approx(pue_stabilizer(pairs["c422"], 0.1))


def test_classical_range_check():
    with pytest.raises(ValueError):
        pue_classical((1, 0, 0, 1), 2, 0.6)  # above (q-1)/q = 1/2


def test_sweep_rows_and_order(pairs):
    rows = sweep(pairs["c422"], [0.0, 0.25, 0.5, 0.75], ["composite"], code="c422")
    assert len(rows) == 4
    assert [r.p for r in rows] == [0.0, 0.25, 0.5, 0.75]
    assert all(r.mode == "composite" for r in rows)


def test_sweep_empty_grid(pairs):
    assert sweep(pairs["c422"], [], ["stabilizer"]) == []


def test_sweep_unknown_mode(pairs):
    with pytest.raises(ValueError):
        sweep(pairs["c422"], [0.1], ["bogus"])


def test_sweep_csv_round_trip(pairs):
    rows = sweep(pairs["five13"], GRID, ["stabilizer", "nonstabilizer"], code="five13")
    text = sweep_csv(rows)
    lines = text.strip().splitlines()
    assert lines[0] == "p,mode,pue"
    parsed = []
    for line in lines[1:]:
        p, mode, value = line.split(",")
        parsed.append(PueResult("five13", mode, float(p), float(value)))
    assert parsed == rows  # shortest round-trip floats survive exactly
