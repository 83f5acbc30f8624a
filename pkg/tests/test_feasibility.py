import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gicregion import InfeasibleSinr, NormalizedChannel, SingularTransform, region2, region3
from gicregion.feasibility import build_matrix_n, is_feasible, sinr_to_snr_n, snr_to_sinr_n

from .conftest import channels, positive_cap


def random_channel(rng, n):
    a = rng.uniform(0, 2, (n, n))
    np.fill_diagonal(a, 0)
    return NormalizedChannel(a, rng.uniform(0.1, 10, n))


def test_matrix():
    ch = NormalizedChannel(np.full((4, 4), 0.5), [1, 1, 1, 1])
    A = build_matrix_n(ch, np.ones(4))
    assert np.array_equal(np.diag(A), np.ones(4))
    assert np.all(A[~np.eye(4, dtype=bool)] == -0.5)


def test_forward_matches_two_and_three_user():
    rng = np.random.default_rng(3)
    for n, fwd in ((2, region2.snr_to_sinr), (3, region3.snr_to_sinr3)):
        ch = random_channel(rng, n)
        u = rng.random(n) * ch.pbar
        np.testing.assert_allclose(snr_to_sinr_n(ch, u), np.array(fwd(ch, u), dtype=float), rtol=1e-15)


@pytest.mark.parametrize("n", [2, 3])
def test_closed_forms_match_lu(n):
    rng = np.random.default_rng(n)
    for _ in range(200):
        ch = random_channel(rng, n)
        s = snr_to_sinr_n(ch, rng.random(n) * ch.pbar)
        np.testing.assert_allclose(
            sinr_to_snr_n(ch, s), sinr_to_snr_n(ch, s, method="lu"), rtol=1e-10, atol=1e-14
        )


@pytest.mark.parametrize("n", [4, 5, 7])
def test_roundtrip_n(n):
    rng = np.random.default_rng(n)
    ch = random_channel(rng, n)
    u = rng.random((500, n)) * ch.pbar
    back = sinr_to_snr_n(ch, snr_to_sinr_n(ch, u))
    np.testing.assert_allclose(back, u, rtol=1e-9, atol=1e-12)


def test_images_feasible_and_dominated():
    rng = np.random.default_rng(0)
    for n in (4, 5):
        for _ in range(20):
            ch = random_channel(rng, n)
            u = rng.random((100, n)) * ch.pbar
            s = snr_to_sinr_n(ch, u)
            assert np.all(is_feasible(ch, s, tol=1e-9))
            assert np.all(s <= u)


def test_outside_points_rejected():
    ch = NormalizedChannel(np.full((4, 4), 0.2) - 0.2 * np.eye(4), [2, 2, 2, 2])
    # full-power SINR on every user exceeds what the caps allow
    assert not is_feasible(ch, np.full(4, 2.0))
    s_full = snr_to_sinr_n(ch, np.full(4, 2.0))
    assert is_feasible(ch, s_full, tol=1e-12)
    assert not is_feasible(ch, s_full * 1.001)


def test_errors():
    ch = NormalizedChannel(np.ones((4, 4)) - np.eye(4), [1, 1, 1, 1])
    with pytest.raises(SingularTransform):
        sinr_to_snr_n(ch, np.full(4, 1 / 3))
    assert not is_feasible(ch, np.full(4, 1 / 3))
    # two strongly coupled pairs: each pair determinant is negative, their
    # product positive, and the solved powers negative
    pairs = NormalizedChannel([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], [1, 1, 1, 1])
    assert np.linalg.det(build_matrix_n(pairs, np.full(4, 2.0))) > 0
    with pytest.raises(InfeasibleSinr):
        sinr_to_snr_n(pairs, np.full(4, 2.0))
    assert not is_feasible(pairs, np.full(4, 2.0))
    with pytest.raises(ValueError):
        sinr_to_snr_n(ch, [1, 2, 3])
    with pytest.raises(ValueError):
        sinr_to_snr_n(ch, np.zeros(4), method="qr")


def test_batch_with_singular_rows():
    ch = NormalizedChannel(np.ones((4, 4)) - np.eye(4), [1, 1, 1, 1])
    s = np.array([np.full(4, 1 / 3), np.full(4, 0.01)])
    assert list(is_feasible(ch, s)) == [False, True]


@settings(max_examples=100)
@given(channels(n=2, caps=positive_cap), st.floats(0, 1), st.floats(0, 1))
def test_two_user_membership_agrees(ch, x, y):
    s = (1.3 * x * ch.pbar[0], 1.3 * y * ch.pbar[1])
    assert bool(is_feasible(ch, s)) == bool(region2.contains(ch, s))
    assert bool(is_feasible(ch, s, method="lu")) == bool(region2.contains(ch, s)) or np.isclose(
        s[0], region2.phi1(ch, s[1]), rtol=1e-12
    ) or np.isclose(s[1], region2.phi2(ch, s[0]), rtol=1e-12)
