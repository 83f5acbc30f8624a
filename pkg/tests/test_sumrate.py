import pytest
from hypothesis import given, settings

from gicregion import two_user
from gicregion.region2 import rate_bits, sum_rate
from gicregion.sumrate import (
    RegionLabel,
    classify_point,
    grid_oracle_max,
    maximize_sum_rate,
    r_star,
)

from .conftest import channels, positive_cap

# 30-digit mpmath values of the corner sum rates.
LOG2_3_8571 = 1.94753258010586443692  # log2(1 + 4/1.4): a = 0.1, full power
HALF_LOG2_5 = 1.16096404744368117394  # single user at pbar = 4
LOG2_1_8 = 0.847996906554950015037  # a = 1, full power
HALF_LOG2_15 = 1.95344529780425926466  # 0.5 log2 3 + 0.5 log2 5


def test_weak_interference_full_power():
    sol = maximize_sum_rate(two_user(0.1, 0.1, 4, 4))
    assert sol.best_u == (4, 4)
    assert sol.best_value == pytest.approx(LOG2_3_8571, rel=1e-14)
    assert sol.region_label is RegionLabel.A
    assert sol.r_star == pytest.approx(HALF_LOG2_5, rel=1e-14)


def test_strong_interference_single_user():
    sol = maximize_sum_rate(two_user(1, 1, 4, 4))
    assert sol.best_u == (4, 0)  # tie with (0, 4) broken in favor of user 1
    assert sol.best_value == pytest.approx(HALF_LOG2_5, rel=1e-14)
    assert sol.region_label is RegionLabel.B
    full = next(c for c in sol.corner_table if c.name == "full_power")
    assert full.value == pytest.approx(LOG2_1_8, rel=1e-14)


def test_no_interference():
    sol = maximize_sum_rate(two_user(0, 0, 2, 4))
    assert sol.best_u == (2, 4)
    assert sol.best_value == pytest.approx(HALF_LOG2_15, rel=1e-14)
    assert sol.region_label is RegionLabel.A


def test_corner_table_order_and_values():
    ch = two_user(0.3, 0.8, 2, 5)
    sol = maximize_sum_rate(ch)
    assert [c.name for c in sol.corner_table] == ["full_power", "user1_only", "user2_only"]
    for c in sol.corner_table:
        assert c.value == sum_rate(ch, c.u)
    assert sol.best_value == max(c.value for c in sol.corner_table)


def test_single_user_tie_break_prefers_user_one():
    sol = maximize_sum_rate(two_user(5, 5, 3, 3))
    assert sol.best_u == (3, 0)


def test_full_power_wins_exact_ties():
    # silent user 2: full power and user-1-only coincide
    sol = maximize_sum_rate(two_user(0.5, 0.5, 3, 0))
    assert sol.best_name == "full_power"


def test_classify():
    ch = two_user(0.1, 0.1, 4, 4)
    rs = r_star(ch)
    assert classify_point(ch, (0, 0)) is RegionLabel.B
    assert classify_point(ch, (rs / 2, rs / 2)) is RegionLabel.ON_SEPARATOR
    assert classify_point(ch, (rs, 0)) is RegionLabel.ON_SEPARATOR
    assert classify_point(ch, (rs / 2, rs / 2 + 1e-8)) is RegionLabel.A
    assert classify_point(ch, (rs / 2, rs / 2 - 1e-8)) is RegionLabel.B
    m = 0.973766290052932218  # 0.5 log2(1 + 4/1.4), both users at full power
    assert classify_point(ch, (m, m)) is RegionLabel.A


def test_on_separator_label():
    # silent user 2 puts M on the separator exactly
    assert maximize_sum_rate(two_user(0.5, 0.5, 3, 0)).region_label is RegionLabel.ON_SEPARATOR


def test_grid_oracle_no_interference():
    for res in (2, 3, 17):
        u, _ = grid_oracle_max(two_user(0, 0, 2, 5), res)
        assert u == (2, 5)


def test_grid_oracle_matches_corner():
    ch = two_user(0.1, 0.1, 4, 4)
    u, v = grid_oracle_max(ch, 101)
    assert abs(v - maximize_sum_rate(ch).best_value) <= 1e-12
    assert u == (4, 4)


def test_grid_oracle_strong():
    u, v = grid_oracle_max(two_user(1, 1, 4, 4), 101)
    assert u in ((4, 0), (0, 4))
    assert v == pytest.approx(HALF_LOG2_5, rel=1e-14)


def test_grid_oracle_rejects_small_grid():
    with pytest.raises(ValueError):
        grid_oracle_max(two_user(1, 1, 4, 4), 1)


@settings(max_examples=200, deadline=None)
@given(channels(caps=positive_cap))
def test_no_interior_point_beats_best_corner(ch):
    sol = maximize_sum_rate(ch)
    _, v = grid_oracle_max(ch, 41)
    assert v <= sol.best_value + 1e-9


@given(channels(caps=positive_cap))
def test_closed_form(ch):
    sol = maximize_sum_rate(ch)
    assert sol.best_value == max(sol.r_star, sum(sol.m_point))
    assert sol.r_star == max(rate_bits(ch.pbar[0]), rate_bits(ch.pbar[1]))


@given(channels(caps=positive_cap))
def test_label_consistency(ch):
    sol = maximize_sum_rate(ch)
    p1, p2 = ch.pbar
    if sol.region_label is RegionLabel.A:
        assert sol.best_u == (p1, p2)
    elif sol.region_label is RegionLabel.B:
        assert sol.best_u in ((p1, 0), (0, p2))


@given(channels(caps=positive_cap))
def test_swap_symmetry(ch):
    sol, swapped = maximize_sum_rate(ch), maximize_sum_rate(ch.swap())
    assert swapped.best_value == pytest.approx(sol.best_value, rel=1e-14)
    assert swapped.region_label is sol.region_label
    if sol.best_name == "full_power":
        assert swapped.best_name == "full_power"
    else:
        # a tie between the single-user corners resolves to user 1 both ways
        values = {c.name: c.value for c in sol.corner_table}
        if values["user1_only"] != values["user2_only"]:
            expect = {"user1_only": "user2_only", "user2_only": "user1_only"}[sol.best_name]
            assert swapped.best_name == expect
