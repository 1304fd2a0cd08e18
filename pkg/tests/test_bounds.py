"""Dependence, generalization, Fano-type and Bayes-risk bounds."""

from __future__ import annotations

import math

import numpy as np
import pytest

from alphainfo import bounds
from alphainfo.errors import CenterViolation, NonpositiveFunction
from alphainfo.prob_core import AlphaOrder, random_instance
from alphainfo.renyi import BinaryDivergenceProblem, binary_d_alpha
from alphainfo.sibson import sibson_mi

BSC = np.array([[0.35, 0.15], [0.15, 0.35]])
# three independent uses of BSC(0.3) with uniform inputs
BSC3 = np.kron(np.kron(BSC, BSC), BSC)
MAP_SUCCESS = 0.7**3
P_STAR = 1 / 8
FANO_ORDERS = np.linspace(1, 10, 51)[1:].tolist()


@pytest.mark.parametrize("alpha", [1.5, 2.0, 5.0, math.inf])
@pytest.mark.parametrize("seed", range(5))
def test_dependence_bound_holds(seed: int, alpha: float) -> None:
    joint = random_instance(seed, 3, 4)
    event = np.random.default_rng(seed).random((3, 4)) < 0.5

    lhs, rhs = bounds.dependence_bound(joint, event, alpha)
    assert lhs == pytest.approx(float(joint.cells[event].sum()))
    assert lhs <= rhs + 1e-12


def test_dependence_bound_rejects() -> None:
    with pytest.raises(ValueError, match="alpha > 1"):
        bounds.dependence_bound(BSC, np.eye(2, dtype=bool), 0.5)
    with pytest.raises(ValueError, match="does not match"):
        bounds.dependence_bound(BSC, np.eye(3, dtype=bool), 2.0)
    with pytest.raises(ValueError, match="2-d or 3-d"):
        bounds.EventMask(np.ones(3, dtype=bool))


def test_shattering_witness_is_tight() -> None:
    rows = np.array([[0.9, 0.1], [0.2, 0.8]])
    px, event = bounds.shattering_witness(rows)

    assert px.probs.tolist() == [0.5, 0.5]
    lhs, rhs = bounds.dependence_bound(px.probs[:, None] * rows, event, math.inf)
    assert lhs == pytest.approx(0.85)
    assert rhs == pytest.approx(lhs, abs=1e-12)


def test_dependence_bound_function() -> None:
    joint = random_instance(3, 3, 3)
    f = np.random.default_rng(3).random((3, 3))
    for alpha in (2.0, 4.0, math.inf):
        lhs, rhs = bounds.dependence_bound_function(joint, f, alpha)
        assert lhs <= rhs + 1e-12
    with pytest.raises(NonpositiveFunction):
        bounds.dependence_bound_function(joint, -f, 2.0)


def test_dependence_lower_bound() -> None:
    joint = random_instance(4, 3, 3)
    f = 0.1 + np.random.default_rng(4).random((3, 3))
    for alpha in (0.25, 0.5, 0.9):
        lhs, rhs = bounds.dependence_lower_bound(joint, f, alpha)
        assert lhs >= rhs - 1e-12
    with pytest.raises(NonpositiveFunction, match="strictly positive"):
        bounds.dependence_lower_bound(joint, np.eye(3), 0.5)
    with pytest.raises(ValueError, match="alpha in"):
        bounds.dependence_lower_bound(joint, f, 2.0)


def test_gen_error_bound() -> None:
    mcdiarmid = bounds.gen_error_bound(100, 0.1, 0.0, math.inf)
    assert mcdiarmid.value == pytest.approx(2 * math.exp(-2.0))
    assert not mcdiarmid.vacuous

    vacuous = bounds.gen_error_bound(1, 0.1, 5.0, 2.0)
    assert vacuous.value == 1.0
    assert vacuous.raw > 1.0
    assert vacuous.vacuous


def test_gen_error_bound_rejects() -> None:
    with pytest.raises(ValueError, match="eta > 0"):
        bounds.gen_error_bound(10, 0.0, 0.0, 2.0)
    with pytest.raises(ValueError, match="alpha > 1"):
        bounds.gen_error_bound(10, 0.1, 0.0, 1.0)


def test_hypothesis_testing_bound() -> None:
    assert bounds.hypothesis_testing_bound(10, 1.0, 0.5, 1).value == 1.0
    assert bounds.hypothesis_testing_bound(10, 1.0, 0.5, 2).value == pytest.approx(
        math.exp(-2.5)
    )
    assert bounds.hypothesis_testing_bound(10, 1.0, 0.5, math.inf).value == (
        pytest.approx(math.exp(-5.0))
    )
    with pytest.raises(ValueError, match="alpha >= 1"):
        bounds.hypothesis_testing_bound(10, 1.0, 0.5, 0.5)


def test_tpc_bounded_constant() -> None:
    assert bounds.tpc_bounded_constant(2.0, 0.5) == pytest.approx(6.0)
    with pytest.raises(ValueError, match="alpha in"):
        bounds.tpc_bounded_constant(1.0, 1.5)


def test_tpc_check() -> None:
    f = np.eye(2)
    ok, slack = bounds.tpc_check(BSC, f, 0.5, 100.0)
    assert ok
    assert slack > 0

    ok, _ = bounds.tpc_check(BSC, f, 0.5, 1e-6)
    assert not ok

    ok, slack = bounds.tpc_check(BSC, np.zeros((2, 2)), 0.5, 1.0)
    assert ok
    assert slack >= 0


def test_tpc_check_rejects() -> None:
    with pytest.raises(ValueError, match="alpha in"):
        bounds.tpc_check(BSC, np.eye(2), 2.0, 1.0)
    with pytest.raises(ValueError, match="c must be positive"):
        bounds.tpc_check(BSC, np.eye(2), 0.5, 0.0)
    with pytest.raises(ValueError, match="kappa grid"):
        bounds.tpc_check(BSC, np.eye(2), 0.5, 1.0, kappa_grid=[])


def test_exact_map_error() -> None:
    error, rule = bounds.exact_map_error(BSC3)
    assert error == pytest.approx(1 - MAP_SUCCESS)
    assert rule.tolist() == list(range(8))


@pytest.mark.parametrize("alpha", [1.5, 2.0, 5.0])
def test_fano_like_bound(alpha: float) -> None:
    result = bounds.fano_like_bound(BSC3, alpha)

    assert result.bound.value >= MAP_SUCCESS - 1e-9
    assert result.bound.value <= result.corollary.value + 1e-12
    fixed = bounds.fano_like_bound(BSC3, alpha, gamma=1.0)
    assert fixed.gamma == 1.0
    assert fixed.bound.value >= result.bound.value - 1e-6
    dalpha_success = 1 - bounds.fano_dalpha_bound(BSC3, alpha)
    assert MAP_SUCCESS - 1e-9 <= dalpha_success <= result.corollary.value + 1e-9


@pytest.mark.parametrize("alpha", FANO_ORDERS)
def test_fano_corollary_identity(alpha: float) -> None:
    corollary = bounds.fano_like_bound(BSC3, alpha).corollary
    info = sibson_mi(BSC3, alpha).value
    assert not corollary.vacuous

    p_tilde = corollary.value
    divergence = binary_d_alpha(
        BinaryDivergenceProblem(p_tilde, P_STAR, AlphaOrder.of(alpha))
    )
    rest = (1 - P_STAR) * ((1 - p_tilde) / (1 - P_STAR)) ** alpha
    expected = math.log(math.exp((alpha - 1) * info) + rest) / (alpha - 1)
    assert divergence == pytest.approx(expected, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("alpha", FANO_ORDERS)
def test_fano_dalpha_against_corollary(alpha: float) -> None:
    corollary = bounds.fano_like_bound(BSC3, alpha).corollary.value
    dalpha_success = 1 - bounds.fano_dalpha_bound(BSC3, alpha)

    assert MAP_SUCCESS - 1e-9 <= dalpha_success <= corollary + 1e-9
    if alpha >= 5:
        assert corollary - dalpha_success <= 1e-2


def test_fano_like_bound_rejects() -> None:
    with pytest.raises(ValueError, match="alpha in"):
        bounds.fano_like_bound(BSC3, math.inf)
    with pytest.raises(ValueError, match="gamma must be positive"):
        bounds.fano_like_bound(BSC3, 2.0, gamma=0.0)


@pytest.mark.parametrize("alpha", [0.5, 1, 2.0, 5.0, math.inf])
def test_fano_dalpha_bound(alpha: float) -> None:
    lower = bounds.fano_dalpha_bound(BSC3, alpha)
    assert 0.0 <= lower <= 1 - MAP_SUCCESS + 1e-9


def test_fano_arimoto_bound() -> None:
    exact = 1 - MAP_SUCCESS
    assert bounds.fano_arimoto_bound(BSC3, math.inf).value == pytest.approx(exact)
    for alpha in (0.5, 2.0, 5.0):
        assert bounds.fano_arimoto_bound(BSC3, alpha).value <= exact + 1e-9
    with pytest.raises(ValueError, match="Arimoto-Fano"):
        bounds.fano_arimoto_bound(BSC3, 1)


def test_generalized_fano() -> None:
    models = [[0.6, 0.4], [0.4, 0.6]]
    # I_2 of the induced joint is log 1.04, below the certified 0.05
    risk = bounds.generalized_fano(models, [0.5, 0.5], 0.05, 1.0, [0.5, 0.5], 2.0)
    assert risk == pytest.approx((1 - math.sqrt(0.52)) / 2)

    perfect = [[1.0, 0.0], [0.0, 1.0]]
    risk = bounds.generalized_fano(
        perfect, [0.5, 0.5], math.log(2.0), 1.0, [0.5, 0.5], 2.0
    )
    assert risk == pytest.approx(0.0, abs=1e-12)


def test_generalized_fano_rejects() -> None:
    perfect = [[1.0, 0.0], [0.0, 1.0]]
    with pytest.raises(CenterViolation, match="exceeds"):
        bounds.generalized_fano(perfect, [0.5, 0.5], 0.1, 1.0, [0.5, 0.5], 2.0)
    with pytest.raises(ValueError, match="every model"):
        bounds.generalized_fano(perfect, [0.5, 0.5], 1.0, 1.0, [1.0], 2.0)


def test_bernoulli_bias_info_matches_quadrature() -> None:
    for n, alpha in ((1, 2.0), (5, 2.0), (8, 3.0)):
        assert bounds.bernoulli_bias_info(n, alpha) == pytest.approx(
            bounds.bernoulli_bias_quadrature(n, alpha), rel=1e-7
        )


def test_bernoulli_bias_sibson_ordering() -> None:
    values = [bounds.bernoulli_bias_sibson(10, a) for a in (1.5, 2.0, 5.0, 20.0)]
    leakage = bounds.bernoulli_bias_sibson(10, math.inf)

    assert leakage == pytest.approx(bounds.bernoulli_bias_leakage(10))
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    assert values[-1] <= leakage + 1e-12


def test_bernoulli_bias_bayes_bound() -> None:
    ml_lower, sample_mean = bounds.bernoulli_bias_risk_bounds(10)
    risk, rho, alpha = bounds.bernoulli_bias_bayes_bound(10)

    assert ml_lower == pytest.approx(1 / (8 * (2 + math.sqrt(5 * math.pi))))
    assert sample_mean == pytest.approx(1 / math.sqrt(60))
    assert 0.0 < risk < sample_mean
    assert 0.0 < rho <= 0.5
    assert alpha in bounds.DEFAULT_ALPHA_GRID


def test_bayes_risk_problem_rejects() -> None:
    with pytest.raises(ValueError, match="positive radii"):
        bounds.bernoulli_bias_problem(5, rho_grid=[0.0, 0.1])
    with pytest.raises(ValueError, match="nonempty"):
        bounds.bernoulli_bias_problem(5, alpha_grid=[])


@pytest.mark.parametrize("alpha", [2.0, 5.0, math.inf])
@pytest.mark.parametrize("seed", range(3))
def test_conditional_dependence_bound(seed: int, alpha: float) -> None:
    triple = random_instance(seed, 3, 3, nz=2)
    event = np.random.default_rng(seed).random((3, 3, 2)) < 0.5

    lhs, rhs = bounds.conditional_dependence_bound(triple, event, alpha)
    assert lhs <= rhs + 1e-12
    with pytest.raises(ValueError, match="rank-3"):
        bounds.conditional_dependence_bound(BSC, np.eye(2, dtype=bool), alpha)


def test_bayes_risk_lower_bound() -> None:
    # no information: rho * (1 - sqrt(2 rho)) peaks at rho = 2/9
    problem = bounds.BayesRiskProblem(
        small_ball=lambda rho: min(2.0 * rho, 1.0),
        info=lambda alpha: 0.0,
        rho_grid=np.geomspace(1e-3, 0.5, 50),
        alpha_grid=np.array([2.0]),
    )
    risk, rho, alpha = bounds.bayes_risk_lower_bound(problem)

    assert risk == pytest.approx(2 / 27, abs=1e-6)
    assert rho == pytest.approx(2 / 9, abs=1e-3)
    assert alpha == 2.0


def test_bayes_risk_lower_bound_empty_ball() -> None:
    problem = bounds.BayesRiskProblem(
        small_ball=lambda rho: 0.0,
        info=lambda alpha: 1.0,
        rho_grid=np.array([0.1, 0.2, 0.4]),
        alpha_grid=np.array([2.0, 3.0]),
    )
    risk, rho, _ = bounds.bayes_risk_lower_bound(problem)
    assert risk == pytest.approx(0.4)
    assert rho == pytest.approx(0.4)
