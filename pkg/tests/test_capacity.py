"""Capacities, error exponents and α-NML prediction."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from alphainfo import capacity
from alphainfo.capacity import ExponentKind
from alphainfo.errors import NotSymmetric
from alphainfo.gallery import bsc_channel, bsc_sibson_mi
from alphainfo.prob_core import random_channel, random_instance
from alphainfo.renyi import renyi_divergence
from alphainfo.sibson import shannon_mi, sibson_mi

TYPO = [[0.5, 0.5, 0.0], [0.0, 0.5, 0.5], [0.5, 0.0, 0.5]]
Z_CHANNEL = [[1.0, 0.0], [0.5, 0.5]]


@pytest.mark.parametrize("alpha", [0, 0.5, 1, 2, math.inf])
def test_identity_channel(alpha: float) -> None:
    result = capacity.sibson_capacity(np.eye(2), alpha)

    assert result.value == pytest.approx(math.log(2.0), abs=1e-8)
    assert result.optimal_input.probs.tolist() == pytest.approx([0.5, 0.5], abs=1e-6)
    assert float(result) == result.value


@pytest.mark.parametrize("alpha", [0.5, 2.0, 5.0])
def test_bsc_capacity(alpha: float) -> None:
    channel = bsc_channel(0.1)
    exact = bsc_sibson_mi(0.1, alpha)

    assert capacity.sibson_capacity(channel, alpha).value == pytest.approx(
        exact, abs=1e-8
    )
    assert capacity.symmetric_capacity(channel, alpha) == pytest.approx(
        exact, abs=1e-12
    )


def test_shannon_capacity() -> None:
    eps = 0.1
    binary_entropy = -eps * math.log(eps) - (1 - eps) * math.log(1 - eps)
    result = capacity.shannon_capacity(bsc_channel(eps))

    assert result.value == pytest.approx(math.log(2.0) - binary_entropy, abs=1e-8)
    assert result.gap <= 1e-8
    assert capacity.sibson_capacity(bsc_channel(eps), 1).value == result.value


@pytest.mark.parametrize("alpha", [0.5, 2.0, 5.0])
@pytest.mark.parametrize("seed", range(5))
def test_capacity_certificates(alpha: float, seed: int) -> None:
    rows = random_channel(seed, 3, 3).rows
    result = capacity.sibson_capacity(rows, alpha, tol=1e-6)

    p = result.optimal_input.probs
    achieved = sibson_mi(p[:, None] * rows, alpha).value
    assert result.value - result.gap <= achieved + 1e-9
    assert achieved <= result.value + 1e-9
    radius = max(
        renyi_divergence(row, result.optimal_output, alpha) for row in rows
    )
    assert radius <= result.value + 1e-9
    assert result.gap <= 1e-6


@pytest.mark.parametrize("alpha", [0.5, 2.0])
def test_related_capacities_agree(alpha: float) -> None:
    rows = random_channel(11, 3, 3).rows
    sibson = capacity.sibson_capacity(rows, alpha, tol=1e-9).value

    assert capacity.arimoto_capacity(rows, alpha, tol=1e-9).value == pytest.approx(
        sibson, abs=1e-5
    )
    assert capacity.csiszar_capacity(rows, alpha, tol=1e-6).value == pytest.approx(
        sibson, abs=1e-5
    )


def test_lapidoth_pfister_capacity() -> None:
    rows = [[0.6, 0.3, 0.1], [0.1, 0.6, 0.3], [0.3, 0.1, 0.6]]
    sibson = capacity.sibson_capacity(rows, 2.0, tol=1e-9).value

    result = capacity.lapidoth_pfister_capacity(rows, 2.0, tol=1e-9)
    assert result.value == pytest.approx(sibson, abs=1e-5)
    with pytest.raises(ValueError, match="alpha in"):
        capacity.lapidoth_pfister_capacity(rows, 0.5)


def test_capacity_order_errors() -> None:
    with pytest.raises(ValueError, match="order 0"):
        capacity.arimoto_capacity(np.eye(2), 0)
    with pytest.raises(ValueError, match="finite positive order"):
        capacity.csiszar_capacity(np.eye(2), math.inf)


@pytest.mark.parametrize(
    "channel, expected",
    [
        (TYPO, math.log(1.5)),
        (np.eye(4), math.log(4.0)),
        ([[0.5, 0.5], [0.25, 0.75]], 0.0),
        (Z_CHANNEL, 0.0),
    ],
)
def test_zero_error_feedback(channel: list[list[float]], expected: float) -> None:
    result = capacity.zero_error_feedback_capacity(channel)

    assert result.value == pytest.approx(expected, abs=1e-9)
    assert math.copysign(1.0, result.value) == 1.0
    assert result.optimal_output.probs.sum() == pytest.approx(1.0)
    assert capacity.sibson_capacity(channel, 0).value == pytest.approx(result.value)


def test_infinity_capacity_is_closed_form() -> None:
    result = capacity.sibson_capacity(TYPO, math.inf)
    assert result.value == pytest.approx(math.log(1.5))
    assert result.optimal_output.probs.tolist() == pytest.approx([1 / 3] * 3)


@pytest.mark.parametrize(
    "channel, alpha, expected",
    [
        ([[0.75, 0.25], [0.25, 0.75]], 2.0, True),
        (TYPO, 0.5, True),
        (TYPO, 0, True),
        (Z_CHANNEL, 2.0, False),
        ([[0.75, 0.25, 0.0], [0.0, 0.25, 0.75]], 2.0, False),
        ([[0.75, 0.25, 0.0], [0.0, 0.25, 0.75]], math.inf, False),
    ],
)
def test_is_alpha_weakly_symmetric(
    channel: list[list[float]], alpha: float, expected: bool
) -> None:
    assert capacity.is_alpha_weakly_symmetric(channel, alpha) is expected


def test_symmetric_capacity_rejects() -> None:
    with pytest.raises(NotSymmetric):
        capacity.symmetric_capacity(Z_CHANNEL, 2.0)


def test_gallager_identity() -> None:
    rng = np.random.default_rng(0)
    for seed in range(20):
        rows = random_channel(seed, 3, 4).rows
        p = rng.dirichlet(np.ones(3))
        rho = float(rng.uniform(0.05, 5.0))
        info = sibson_mi(p[:, None] * rows, 1.0 / (1.0 + rho)).value

        assert capacity.gallager_e0(rows, p, rho) == pytest.approx(
            rho * info, abs=1e-10
        )


def test_gallager_rejects() -> None:
    with pytest.raises(ValueError, match="rho"):
        capacity.gallager_e0(np.eye(2), [0.5, 0.5], -1.0)


def test_random_coding_exponent_matches_direct_optimization() -> None:
    channel = bsc_channel(0.1)
    rates = np.linspace(0.0, 0.36, 20)
    curve = capacity.error_exponents(channel, rates, "random-coding")

    assert curve.kind is ExponentKind.RANDOM_CODING
    for rate, exponent in curve.rows():
        res = minimize_scalar(
            lambda rho, rate=rate: -(
                capacity.gallager_e0(channel, [0.5, 0.5], rho) - rho * rate
            ),
            bounds=(0.0, 1.0),
            method="bounded",
            options={"xatol": 1e-10},
        )
        assert exponent == pytest.approx(max(-float(res.fun), 0.0), abs=1e-6)


def test_sphere_packing_dominates_random_coding() -> None:
    channel = bsc_channel(0.1)
    rates = [0.05, 0.2, 0.3, 0.5]
    sphere = capacity.error_exponents(channel, rates)
    random_coding = capacity.error_exponents(channel, rates, "random-coding")

    assert sphere.kind is ExponentKind.SPHERE_PACKING
    assert np.all(sphere.exponents >= random_coding.exponents - 1e-9)
    # above capacity both vanish
    assert sphere.exponents[-1] == pytest.approx(0.0, abs=1e-9)


def test_error_exponents_reject_rates() -> None:
    with pytest.raises(ValueError, match="nonnegative"):
        capacity.error_exponents(np.eye(2), [-0.1])


def test_alpha_nml() -> None:
    models = [[0.8, 0.2], [0.2, 0.8]]

    predictor, regret = capacity.alpha_nml(models, [0.5, 0.5], math.inf)
    assert predictor.probs.tolist() == pytest.approx([0.5, 0.5])
    assert regret == pytest.approx(math.log(1.6))

    predictor, regret = capacity.alpha_nml(models, [0.5, 0.5], 2.0)
    assert regret == pytest.approx(
        max(renyi_divergence(m, predictor, 2.0) for m in models)
    )

    with pytest.raises(ValueError, match="alpha >= 1"):
        capacity.alpha_nml(models, [0.5, 0.5], 0.5)
    with pytest.raises(ValueError, match="every model"):
        capacity.alpha_nml(models, [1.0], 2.0)


def test_maximal_alpha_leakage() -> None:
    joint = random_instance(3, 3, 3)
    rows = joint.channel().rows

    assert capacity.maximal_alpha_leakage(joint, 1) == pytest.approx(
        shannon_mi(joint)
    )
    assert capacity.maximal_alpha_leakage(joint, 2.0) == pytest.approx(
        capacity.sibson_capacity(rows, 2.0).value
    )
    assert capacity.maximal_alpha_leakage(joint, math.inf) == pytest.approx(
        sibson_mi(joint, math.inf).value
    )
    with pytest.raises(ValueError, match="alpha >= 1"):
        capacity.maximal_alpha_leakage(joint, 0.5)
