"""Variational representations and the ascent estimator."""

from __future__ import annotations

import math

import numpy as np
import pytest

from alphainfo import variational
from alphainfo.errors import NoConvergence, NonpositiveFunction
from alphainfo.prob_core import random_instance
from alphainfo.sibson import maximal_leakage, shannon_mi, sibson_mi
from alphainfo.variational import Reference, TestFunction

BSC_QUARTER = [[0.375, 0.125], [0.125, 0.375]]
REGIMES = [
    (2.0, Reference.R_STAR),
    (2.0, Reference.PRODUCT_R_STAR),
    (5.0, Reference.R_STAR),
    (0.5, Reference.Q_STAR),
    (0.5, Reference.PRODUCT_Q_STAR),
    (0.2, Reference.Q_STAR),
]


def test_test_function_validation() -> None:
    table = TestFunction(np.array([[0.0, -math.inf], [1.0, 2.0]]))
    assert table.kind == "f"
    assert table.rows()[1] == (0, 1, -math.inf)
    assert len(table.rows()) == 4

    with pytest.raises(ValueError, match="2-d table"):
        TestFunction(np.zeros(3))
    with pytest.raises(ValueError, match="Unknown test-function kind"):
        TestFunction(np.zeros((2, 2)), "h")
    with pytest.raises(ValueError, match="finite"):
        TestFunction(np.array([[math.nan, 0.0]]))
    with pytest.raises(NonpositiveFunction):
        TestFunction(np.array([[1.0, -1.0]]), "g")
    with pytest.raises(NonpositiveFunction):
        TestFunction(np.zeros((2, 2)), "g")


@pytest.mark.parametrize("alpha, reference", REGIMES)
def test_f_star_saturates(alpha: float, reference: Reference) -> None:
    joint = random_instance(3, 3, 4)
    exact = sibson_mi(joint, alpha).value
    f = variational.f_star(joint, alpha)

    value = variational.var_rep_one(f, joint, alpha, reference)
    assert value == pytest.approx(exact, abs=1e-9)


@pytest.mark.parametrize("alpha, reference", REGIMES)
def test_var_rep_one_is_a_lower_bound(alpha: float, reference: Reference) -> None:
    joint = random_instance(5, 3, 3)
    exact = sibson_mi(joint, alpha).value
    rng = np.random.default_rng(2)

    for f in rng.normal(size=(25, 3, 3)):
        assert variational.var_rep_one(f, joint, alpha, reference) <= exact + 1e-10


def test_var_rep_one_constant_and_strings() -> None:
    constant = np.full((2, 2), 0.7)
    assert variational.var_rep_one(constant, BSC_QUARTER, 2.0) == pytest.approx(
        0.0, abs=1e-12
    )
    assert variational.var_rep_one(
        constant, BSC_QUARTER, 0.5, "QStar"
    ) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize(
    "alpha, reference",
    [
        (0.5, Reference.R_STAR),
        (0.5, Reference.PRODUCT_R_STAR),
        (2.0, Reference.Q_STAR),
        (2.0, Reference.PRODUCT_Q_STAR),
    ],
)
def test_var_rep_one_wrong_regime(alpha: float, reference: Reference) -> None:
    with pytest.raises(ValueError, match="is the reference for"):
        variational.var_rep_one(np.zeros((2, 2)), BSC_QUARTER, alpha, reference)


@pytest.mark.parametrize("alpha", [0, 1, math.inf])
def test_var_rep_one_needs_finite_order(alpha: float) -> None:
    with pytest.raises(ValueError, match="needs alpha in"):
        variational.var_rep_one(np.zeros((2, 2)), BSC_QUARTER, alpha)


def test_var_rep_one_shape_mismatch() -> None:
    with pytest.raises(ValueError, match="does not match the joint"):
        variational.var_rep_one(np.zeros((3, 2)), BSC_QUARTER, 2.0)


def test_f_star_zero_column() -> None:
    joint = [[0.5, 0.0], [0.5, 0.0]]
    table = variational.f_star(joint, 2.0).table
    assert table[:, 1].tolist() == [0.0, 0.0]


@pytest.mark.parametrize("alpha", [0.5, 2.0, 5.0])
def test_g_star_ratio(alpha: float) -> None:
    joint = random_instance(7, 3, 4)
    exact = sibson_mi(joint, alpha).value
    g = variational.g_star(joint, alpha)

    assert g.kind == "g"
    assert variational.var_rep_ratio(g, joint, alpha) == pytest.approx(
        math.exp((alpha - 1) / alpha * exact), rel=1e-9
    )


def test_leakage_witness() -> None:
    joint = random_instance(8, 3, 3)
    g = variational.g_star(joint, math.inf)

    assert np.array_equal(g.table, variational.leakage_witness(joint).table)
    assert np.count_nonzero(g.table) == 3
    assert variational.var_rep_ratio(g, joint, math.inf) == pytest.approx(
        math.exp(maximal_leakage(joint))
    )


@pytest.mark.parametrize("alpha", [0.5, 2.0, math.inf])
def test_var_rep_ratio_unit_function(alpha: float) -> None:
    ones = np.ones((2, 2))
    assert variational.var_rep_ratio(ones, BSC_QUARTER, alpha) == pytest.approx(1.0)


def test_var_rep_ratio_is_bounded() -> None:
    joint = random_instance(9, 3, 3)
    rng = np.random.default_rng(4)
    for alpha in (2.0, math.inf):
        beta = 1.0 if math.isinf(alpha) else (alpha - 1) / alpha
        ceiling = math.exp(beta * sibson_mi(joint, alpha).value)
        for g in rng.uniform(0.0, 2.0, size=(25, 3, 3)):
            assert variational.var_rep_ratio(g, joint, alpha) <= ceiling + 1e-10


def test_var_rep_ratio_rejects_zero_below_one() -> None:
    with pytest.raises(NonpositiveFunction, match="strictly positive"):
        variational.var_rep_ratio([[1.0, 0.0], [1.0, 1.0]], BSC_QUARTER, 0.5)


@pytest.mark.parametrize("alpha", [0.5, 2.0])
def test_kl_representation(alpha: float) -> None:
    joint = random_instance(10, 3, 3)
    result = sibson_mi(joint, alpha)
    r_star = variational.kl_representation_minimizer(joint, alpha)

    assert r_star.py.tolist() == pytest.approx(result.q_star.probs.tolist())
    best = variational.kl_representation_objective(r_star, joint, alpha)
    assert best == pytest.approx((1 - alpha) * result.value, abs=1e-10)


def test_kl_representation_minimum() -> None:
    joint = random_instance(11, 2, 3)
    alpha = 0.5
    best = (1 - alpha) * sibson_mi(joint, alpha).value
    rng = np.random.default_rng(5)

    for r in rng.dirichlet(np.ones(6), size=25):
        value = variational.kl_representation_objective(r.reshape(2, 3), joint, alpha)
        assert value >= best - 1e-12


def test_kl_representation_rejects() -> None:
    with pytest.raises(ValueError, match="same alphabets"):
        variational.kl_representation_objective(np.eye(3) / 3, BSC_QUARTER, 0.5)
    with pytest.raises(ValueError, match="needs alpha in"):
        variational.kl_representation_minimizer(BSC_QUARTER, math.inf)


def test_ascent_recovers_bsc() -> None:
    estimate, f = variational.estimate_sibson_by_ascent(BSC_QUARTER, 2.0, tol=1e-7)

    assert estimate == pytest.approx(math.log(1.25), abs=1e-4)
    assert estimate <= math.log(1.25) + 1e-12
    assert variational.var_rep_one(f, BSC_QUARTER, 2.0) == pytest.approx(
        estimate, abs=1e-4
    )


def test_ascent_on_independent_joint() -> None:
    independent = np.outer([0.3, 0.7], [0.6, 0.4])
    estimate, _ = variational.estimate_sibson_by_ascent(independent, 3.0)
    assert 0.0 <= estimate <= 1e-6


def test_ascent_reports_best_on_cap() -> None:
    with pytest.raises(NoConvergence) as excinfo:
        variational.estimate_sibson_by_ascent(BSC_QUARTER, 2.0, steps=1)

    best = excinfo.value.best
    assert isinstance(best, float)
    assert 0.0 <= best <= math.log(1.25)
    assert excinfo.value.iterations == 1


@pytest.mark.parametrize(
    "joint, alpha, expected",
    [
        (BSC_QUARTER, 0.5, "alpha in"),
        (BSC_QUARTER, math.inf, "alpha in"),
        ([[0.5, 0.0], [0.25, 0.25]], 2.0, "full-support"),
    ],
)
def test_ascent_rejects(joint: list[list[float]], alpha: float, expected: str) -> None:
    with pytest.raises(ValueError, match=expected):
        variational.estimate_sibson_by_ascent(joint, alpha)


def test_dv_mi_limit_check() -> None:
    joint = random_instance(14, 3, 3)
    mi = shannon_mi(joint)
    ratio = np.log(joint.cells) - np.log(np.outer(joint.px, joint.py))

    strong, weak = variational.dv_mi_limit_check(ratio, joint)
    assert strong == pytest.approx(mi)
    assert weak == pytest.approx(mi)
    assert variational.dv_mi_limit_check(np.zeros((3, 3)), joint) == pytest.approx(
        (0.0, 0.0), abs=1e-12
    )

    rng = np.random.default_rng(6)
    for f in rng.normal(size=(25, 3, 3)):
        strong, weak = variational.dv_mi_limit_check(f, joint)
        assert weak <= strong + 1e-12
        assert strong <= mi + 1e-12
