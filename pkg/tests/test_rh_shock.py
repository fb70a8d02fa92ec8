import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from ncrs.core import InvalidFamily, LaxViolation, NotApplicable, RiemannData, State, ZeroVelocityJump
from ncrs.dlm_paths import PathKind, builtin_path
from ncrs.rh_shock import (
    CURVE_COLUMNS,
    Family,
    Kind,
    ShockCurveSpec,
    k_limit_report,
    rarefaction_possible,
    rh_residual,
    sample_shock_curves,
    shock_curve_sigma,
    shock_speed,
    sigma_quadratic_roots,
    volpert_shock_exists,
    write_curves_csv,
)

PHI, TILDE = PathKind.PHI_EXAMPLE, PathKind.PHI_TILDE_EXAMPLE
LEAD = {PHI: 4.0, TILDE: 2.0}
vals = st.floats(min_value=-20, max_value=20, allow_nan=False)


@pytest.mark.parametrize(
    "left, right, s",
    [((2, 0), (0, -1), 0.5), ((1, 3.3), (-1, 3.3), 0.0), ((2, 1), (0, 0), 0.5)],
)
def test_shock_speed_examples(left, right, s):
    d = RiemannData(State(*left), State(*right))
    assert shock_speed(d) == s
    assert shock_speed(RiemannData(State(*left), State(*right), 1.0)) == s


def test_shock_speed_zero_jump():
    with pytest.raises(ZeroVelocityJump):
        shock_speed(RiemannData.from_values(1, 0, 1, 2))


def test_residual_on_curve_example():
    d = RiemannData.from_values(2, 0, 0, -1)
    r = rh_residual(builtin_path(PHI), d, 0.5)
    assert r.row1 == pytest.approx(0, abs=1e-15) and r.row2 == pytest.approx(0, abs=1e-15)


@given(vals, vals, vals, vals)
def test_straight_line_second_row(uL, sL, uR, sR):
    assume(abs(uL - uR) > 1e-3)
    d = RiemannData.from_values(uL, sL, uR, sR)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        r = rh_residual(builtin_path(PathKind.STRAIGHT_LINE), d, shock_speed(d))
    ds, du = sR - sL, uR - uL
    want = ds * ds / du
    assert r.row2 == pytest.approx(want, rel=1e-10, abs=1e-10)
    assert r.row1 == pytest.approx(0, abs=1e-10 * max(1, uL * uL, uR * uR, abs(sL), abs(sR)))


@pytest.mark.parametrize("kind", list(PathKind))
def test_constant_data_zero_residual(kind):
    d = RiemannData.from_values(1.5, -2, 1.5, -2, k=0.7)
    r = rh_residual(builtin_path(kind), d, 3.0)
    assert r.row1 == 0 and r.row2 == 0


def test_residual_warns_for_non_lax():
    with pytest.warns(UserWarning, match="Lax"):
        rh_residual(builtin_path(PHI), RiemannData.from_values(0, 0, 1, 1), 0.5)


@pytest.mark.parametrize(
    "k, kind, fam, expected",
    [
        (0.0, PHI, Family.S1, -1.0),
        (0.0, TILDE, Family.S1, -2.0),
        (1.0, PHI, Family.S1, (-1 + math.sqrt(17)) / 2),
        (1.0, PHI, Family.S2, (-1 - math.sqrt(17)) / 2),
        (1.0, TILDE, Family.S1, -1 + math.sqrt(5)),
        (1.0, TILDE, Family.S2, -1 - math.sqrt(5)),
    ],
)
def test_curve_examples(k, kind, fam, expected):
    got = shock_curve_sigma(ShockCurveSpec(k, kind, fam, State(2, 0)), 0.0)
    assert got == pytest.approx(expected, rel=1e-15)


def test_curve_contracts():
    with pytest.raises(LaxViolation):
        shock_curve_sigma(ShockCurveSpec(0.0, PHI, Family.S1, State(2, 0)), 2.0)
    with pytest.raises(InvalidFamily):
        ShockCurveSpec(0.0, PHI, Family.S2, State(2, 0))
    with pytest.raises(InvalidFamily):
        ShockCurveSpec(1.0, PathKind.STRAIGHT_LINE, Family.S1, State(2, 0))
    with pytest.raises(ValueError):
        ShockCurveSpec(-1.0, PHI, Family.S1, State(2, 0))


def test_roots_contract():
    with pytest.raises(ZeroVelocityJump):
        sigma_quadratic_roots(0.0, 1.0, PHI)
    with pytest.raises(ValueError):
        sigma_quadratic_roots(-2.0, 0.0, PHI)


@given(
    st.sampled_from([PHI, TILDE]),
    st.floats(min_value=1e-3, max_value=10),
    st.floats(min_value=-6, max_value=1),
)
def test_roots_vieta_and_order(kind, adu, logk):
    du, k = -adu, adu * 10.0 ** logk
    s1, s2 = sigma_quadratic_roots(du, k, kind)
    assert s1 > 0 > s2
    assert s1 * s2 == pytest.approx(-k * k * du * du, rel=1e-13)
    assert s1 + s2 == pytest.approx(-du * du / LEAD[kind], rel=1e-13)


@given(
    st.sampled_from([PHI, TILDE]),
    st.sampled_from([0.0, 0.25, 1.0, 3.0]),
    vals, vals, st.floats(min_value=0.01, max_value=10),
)
def test_curve_points_satisfy_rh(kind, k, uL, sL, gap):
    left = State(uL, sL)
    u = uL - gap
    fams = [Family.S1] if k == 0 else [Family.S1, Family.S2]
    for fam in fams:
        sig = shock_curve_sigma(ShockCurveSpec(k, kind, fam, left), u)
        d = RiemannData(left, State(u, sig), k)
        r = rh_residual(builtin_path(kind), d, shock_speed(d))
        scale = max(1.0, abs(uL) * gap, abs(sig - sL), k * k * gap) * max(1.0, abs(uL))
        assert r.max_abs() <= 1e-12 * scale


@pytest.mark.parametrize("kind, coef", [(PHI, 4.0), (TILDE, 2.0)])
def test_k_limit_report(kind, coef):
    rep = k_limit_report(State(2, 0), 0.0, kind, [1e-1, 1e-2, 1e-3, 1e-4])
    assert abs(rep.slope - 2.0) <= 0.05
    assert abs(rep.extra["s1_slope"] - 2.0) <= 0.05
    # leading Taylor term of the distance is coef * k^2 for du = -2
    assert rep.errors[-1] / 1e-8 == pytest.approx(coef, rel=1e-3)
    assert rep.extra["s1_jumps"][-1] / 1e-8 == pytest.approx(coef, rel=1e-3)
    assert rep.extra["sigma_limit"] == -4.0 / coef


def test_k_limit_rejects_zero_k():
    with pytest.raises(ValueError):
        k_limit_report(State(2, 0), 0.0, PHI, [1e-1, 0.0])


@given(st.sampled_from([PHI, TILDE]), st.floats(min_value=0.1, max_value=5))
def test_s2_approaches_limit_from_below(kind, gap):
    left = State(1.0, 0.5)
    u = left.u - gap
    lim = shock_curve_sigma(ShockCurveSpec(0.0, kind, Family.S1, left), u)
    vals_ = [shock_curve_sigma(ShockCurveSpec(k, kind, Family.S2, left), u) for k in (1.0, 0.3, 0.1, 0.03, 0.01)]
    assert all(v < lim for v in vals_)
    assert all(b > a for a, b in zip(vals_, vals_[1:]))


@pytest.mark.parametrize(
    "left, right, kind, speed",
    [
        ((2, 1), (0, 0), Kind.NO_SHOCK, None),
        ((2, 5), (0, 5), Kind.BURGERS_SHOCK, 1.0),
        ((0, 5), (2, 5), Kind.NOT_A_SHOCK, None),
        ((1, 1), (1, 1), Kind.CONSTANT_STATE, None),
    ],
)
def test_volpert_examples(left, right, kind, speed):
    c = volpert_shock_exists(RiemannData(State(*left), State(*right)))
    assert c.kind is kind and c.speed == speed
    if kind is Kind.NO_SHOCK:
        assert c.witness["sigma_jump"] == -1


@given(vals, vals, vals, vals)
def test_volpert_relations_have_no_solution(uL, sL, uR, sR):
    assume(sL != sR)
    # second relation pins s to the mean; the first then leaves -[sigma] != 0
    s = 0.5 * (uL + uR)
    first = -s * (uR - uL) + 0.5 * (uR * uR - uL * uL) - (sR - sL)
    assert first == pytest.approx(-(sR - sL), abs=1e-9 * max(1, uL * uL, uR * uR))
    assert volpert_shock_exists(RiemannData.from_values(uL, sL, uR, sR)).kind is Kind.NO_SHOCK


def test_rarefaction():
    assert rarefaction_possible(RiemannData.from_values(0, 1, 2, 0)).kind is Kind.IMPOSSIBLE
    assert rarefaction_possible(RiemannData.from_values(0, 5, 2, 5)).kind is Kind.TRIVIAL_CONSTANT_SIGMA
    with pytest.raises(NotApplicable):
        rarefaction_possible(RiemannData.from_values(0, 5, 2, 5, k=1))


def test_curve_sampler(tmp_path):
    rows = sample_shock_curves(State(2, 0), [0.0, 0.5, 1.0], [PHI], np.linspace(-2, 1.5, 8))
    assert len(rows) == 8 * 5
    assert {r[2] for r in rows if r[3] == 0.0} == {"S1"}
    limit = [r for r in rows if r[3] == 0.0]
    assert all(r[1] == -0.25 * (r[0] - 2) ** 2 for r in limit)
    f = tmp_path / "c.csv"
    write_curves_csv(f, rows)
    lines = f.read_text().splitlines()
    assert lines[0] == ",".join(CURVE_COLUMNS)
    assert len(lines) == 41
