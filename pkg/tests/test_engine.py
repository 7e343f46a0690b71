import math

import numpy as np
import pytest

from runsrules import engine
from runsrules.automaton import build_automaton
from runsrules.engine import (
    CannotSignalError,
    arl,
    chain_for,
    chain_from,
    percentile,
    percentiles,
    sd,
    sir,
    summarize,
    survival,
    survival_curve,
)
from runsrules.gauss import normal_cdf
from runsrules.published import TABLE1_LIMITS, TABLE1_SCHEMES
from runsrules.rules import Kind, SchemeSpec, parse_scheme

# 2 * Phi(-3) from a 40-digit mpmath evaluation
P_OUT_3SIGMA = 0.0026997960632601890533


def scheme(name, limit=None):
    s = parse_scheme(name)
    return s.with_limit(limit) if limit is not None else s


def table_tol(value):
    return max(0.05, 0.005 * value)


def geometric(limit, shift):
    p = normal_cdf(-limit - shift) + normal_cdf(-limit + shift)
    return p


def test_chain_for_one_of_one():
    c = chain_for(scheme("1/1", 3.0), 0.0)
    assert c.Q.shape == (1, 1)
    assert c.Q[0, 0] == pytest.approx(1 - P_OUT_3SIGMA, abs=1e-15)
    assert c.absorb == pytest.approx([P_OUT_3SIGMA], abs=1e-15)


def test_chain_dimension_mismatch():
    with pytest.raises(ValueError):
        chain_from(build_automaton(scheme("2/3")), [0.5, 0.5])


def test_degenerate_distribution_cannot_signal():
    a = build_automaton(scheme("2/3"))
    c = chain_from(a, [0.0, 1.0, 0.0, 0.0])
    assert not c.absorb.any()
    assert not c.can_signal
    for stat in (arl, sd, sir):
        with pytest.raises(CannotSignalError):
            stat(c)
    assert survival(c, 50) == 1.0


@pytest.mark.parametrize("name", TABLE1_SCHEMES)
def test_rows_are_stochastic(name):
    c = chain_for(scheme(name, float(TABLE1_LIMITS[name])), 0.0)
    rows = np.asarray(c.Q.sum(axis=1)).ravel() + c.absorb
    assert np.allclose(rows, 1.0, atol=1e-12, rtol=0)
    assert c.Q.min() >= 0 and c.absorb.min() >= 0


@pytest.mark.parametrize(
    "name, limit, shift, expected_arl, expected_sd",
    [
        ("1/1", 3.0, 0.0, 370.40, 369.90),
        ("2/2", 1.781, 1.0, 25.78, 24.42),
        ("M-3/5", 1.358, 0.4, 102.82, 99.83),
        ("M-4/5", 0.949, 4.0, 4.00, 0.07),
    ],
)
def test_published_arl_and_sd(name, limit, shift, expected_arl, expected_sd):
    c = chain_for(scheme(name, limit), shift)
    assert abs(arl(c) - expected_arl) <= table_tol(expected_arl)
    assert abs(sd(c) - expected_sd) <= table_tol(expected_sd)


@pytest.mark.parametrize("limit", [0.5, 1.0, 2.0, 3.0, 3.5])
@pytest.mark.parametrize("shift", [0.0, 0.3, -1.1, 2.5])
def test_one_of_one_matches_geometric_distribution(limit, shift):
    c = chain_for(scheme("1/1", limit), shift)
    p = geometric(limit, shift)
    assert arl(c) == pytest.approx(1 / p, rel=1e-9)
    assert sd(c) == pytest.approx(math.sqrt(1 - p) / p, rel=1e-9)
    assert survival(c, 3) == pytest.approx((1 - p) ** 3, rel=1e-9)
    for level, n in percentiles(c, [0.05, 0.25, 0.5, 0.75, 0.95]).items():
        assert n == math.ceil(math.log1p(-level) / math.log1p(-p))


def test_survival_examples():
    c = chain_for(scheme("1/1", 3.0), 0.0)
    assert survival(c, 0) == 1.0
    assert survival(c, 1) == pytest.approx(1 - P_OUT_3SIGMA, abs=1e-12)
    with pytest.raises(ValueError):
        survival(c, -1)
    m25 = chain_for(scheme("M-2/5", 1.91), 0.0)
    assert survival(m25, 256) >= 0.5 > survival(m25, 257)


def test_survival_is_nonincreasing():
    curve = survival_curve(chain_for(scheme("M-2/4", 1.897), 0.6), 400)
    assert curve[0] == 1.0
    assert np.all(np.diff(curve) <= 0)
    assert survival(chain_for(scheme("M-2/4", 1.897), 0.6), 400) == pytest.approx(curve[-1], rel=1e-12)


def test_percentile_examples():
    # the published 1105 uses the unrounded limit; 1.91 itself moves it by one
    assert abs(percentile(chain_for(scheme("M-2/5", 1.91), 0.0), 0.95) - 1105) <= 1
    m35 = chain_for(scheme("M-3/5", 1.358), 4.0)
    assert list(percentiles(m35, [0.05, 0.25, 0.5, 0.75, 0.95]).values()) == [3] * 5
    # ceil(ln 0.5 / ln(1 - 0.0026998)) = 257
    assert percentile(chain_for(scheme("1/1", 3.0), 0.0), 0.5) == 257


def test_percentile_level_validation():
    c = chain_for(scheme("1/1", 3.0), 0.0)
    for bad in (0.0, 1.0, -0.2):
        with pytest.raises(ValueError):
            percentile(c, bad)


def test_sir_examples():
    assert sir(chain_for(scheme("M-2/5", 1.57098), 0.0)) == 50.5
    assert sir(chain_for(scheme("M-3/5", 1.04853), 2.4)) == 0.0


def test_summarize_examples():
    s = summarize(scheme("M-2/5", 1.91), 0.6)
    assert abs(s.arl - 58.85) <= table_tol(58.85)
    assert list(s.percentiles.values()) == [5, 18, 41, 81, 172]
    assert s.sir == (81 - 18) / 2
    one = summarize(scheme("1/1", 3.0), 0.0)
    assert round(one.arl, 2) == 370.40
    assert round(one.sd, 2) == 369.90
    assert one.arl >= 1 and one.sd >= 0
    assert list(one.percentiles.values()) == sorted(one.percentiles.values())


@pytest.mark.parametrize("r", range(1, 6))
@pytest.mark.parametrize("shift", [0.0, 0.7, 1.9])
def test_modified_r_of_r_is_basic_r_of_r(r, shift):
    a = summarize(SchemeSpec(Kind.BASIC, r, r, limit=1.1), shift)
    b = summarize(SchemeSpec(Kind.MODIFIED, r, r, limit=1.1), shift)
    assert a == b


@pytest.mark.parametrize("name", TABLE1_SCHEMES)
@pytest.mark.parametrize("shift", [0.0, 1.0, 2.0])
def test_arl_equals_sum_of_survival(name, shift):
    c = chain_for(scheme(name, float(TABLE1_LIMITS[name])), shift)
    n = 64
    while True:
        curve = survival_curve(c, n)
        if curve[-1] < 1e-12:
            break
        n *= 2
    total = curve.sum()
    ratio = curve[-1] / curve[-2]
    total += curve[-1] * ratio / (1 - ratio)
    assert total == pytest.approx(arl(c), rel=1e-6)


@pytest.mark.parametrize("name", ["2/3", "M-2/4", "M-4/5", "5/5", "C1234"])
@pytest.mark.parametrize("shift", [0.25, 1.0, 2.6])
def test_shift_symmetry(name, shift):
    s = scheme(name) if name == "C1234" else scheme(name, 1.3)
    up, down = summarize(s, shift), summarize(s, -shift)
    assert up.percentiles == down.percentiles
    # mirrored chains order their states differently; agreement is to roundoff
    assert up.arl == pytest.approx(down.arl, rel=1e-10)
    assert up.sd == pytest.approx(down.sd, rel=1e-10)


@pytest.mark.parametrize("r, m", [(r, m) for m in range(2, 6) for r in range(1, m)])
def test_modified_dominates_basic_at_equal_limits(r, m):
    for limit in (0.6, 1.2, 1.9, 2.6):
        for shift in np.arange(0.0, 3.01, 0.5):
            basic = arl(chain_for(SchemeSpec(Kind.BASIC, r, m, limit=limit), shift))
            modified = arl(chain_for(SchemeSpec(Kind.MODIFIED, r, m, limit=limit), shift))
            assert modified >= basic * (1 - 1e-12)


@pytest.mark.parametrize("name", TABLE1_SCHEMES)
def test_arl_strictly_decreasing_in_shift(name):
    s = scheme(name, float(TABLE1_LIMITS[name]))
    values = [arl(chain_for(s, d)) for d in np.arange(0.0, 3.01, 0.2)]
    assert all(b < a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("name", [n for n in TABLE1_SCHEMES if n != "1/1"])
def test_large_shift_floor(name):
    s = scheme(name, float(TABLE1_LIMITS[name]))
    value = arl(chain_for(s, 6.0))
    assert s.r <= value <= s.r + 0.001


def test_large_shift_floor_one_of_one():
    # with 3-sigma limits a 6-sigma shift still leaves Phi(-3) inside the limits
    value = arl(chain_for(scheme("1/1", 3.0), 6.0))
    assert value == pytest.approx(1 / (1 - normal_cdf(-3.0) + normal_cdf(-9.0)), rel=1e-12)
    assert 1.001 < value < 1.0014
    assert arl(chain_for(scheme("1/1", 3.0), 12.0)) < 1.001


def test_dense_and_sparse_solvers_agree(monkeypatch):
    s = scheme("C1234")
    dense = chain_for(s, 0.4)
    expected = (arl(dense), sd(dense))
    monkeypatch.setattr(engine, "DENSE_LIMIT", 0)
    sparse = chain_for(s, 0.4)
    assert (arl(sparse), sd(sparse)) == pytest.approx(expected, rel=1e-10)


def test_summarize_without_levels():
    s = summarize(scheme("2/3", 1.929), 1.0, levels=())
    assert s.percentiles == {} and s.sir is None


MC_PANEL = [
    ("2/2", 1.781, 0.4),
    ("3/3", 1.2, 1.0),
    ("5/5", 0.568, 0.6),
    ("M-2/3", 1.866, 1.2),
    ("2/3", 1.929, 0.8),
    ("M-3/4", 1.312, 1.4),
    ("3/4", 1.393, 0.4),
    ("M-2/5", 1.91, 2.0),
    ("M-4/5", 0.949, 1.0),
    ("C1234", None, 0.6),
]


@pytest.mark.slow
def test_monte_carlo_agreement_panel(mc_estimate):
    misses = []
    for name, limit, shift in MC_PANEL:
        est = mc_estimate(name, limit, shift)
        exact = arl(chain_for(scheme(name, limit), shift))
        z = (est.mean - exact) / est.standard_error
        print(f"{name:6s} shift {shift:.1f}: exact {exact:.3f} simulated {est.mean:.3f} z {z:+.2f}")
        if abs(z) > 3:
            misses.append((name, shift, z))
    assert not misses
