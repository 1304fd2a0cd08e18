"""Worked examples and their closed forms."""

from __future__ import annotations

import math

import numpy as np
import pytest

from alphainfo import gallery, units
from alphainfo.errors import UnknownExample
from alphainfo.prob_core import joint_from_channel
from alphainfo.sibson import sibson_mi

TYPE_CHECKING = False
if TYPE_CHECKING:
    from collections.abc import Iterator

ORDERS = [0.0, 0.5, 1.0, 2.0, 5.0, math.inf]


@pytest.fixture(autouse=True)
def _natural_base() -> Iterator[None]:
    units.deactivate()
    yield
    units.deactivate()


def test_channels() -> None:
    assert np.allclose(gallery.bsc_channel(0.1).rows, [[0.9, 0.1], [0.1, 0.9]])
    assert np.allclose(
        gallery.bec_channel(0.25).rows, [[0.75, 0.25, 0.0], [0.0, 0.25, 0.75]]
    )
    assert np.allclose(gallery.dsbs_joint(0.2).cells, [[0.4, 0.1], [0.1, 0.4]])
    with pytest.raises(ValueError, match="epsilon must lie in"):
        gallery.bsc_channel(1.5)


def test_fano_joint() -> None:
    single = np.array([[0.35, 0.15], [0.15, 0.35]])
    expected = np.kron(np.kron(single, single), single)
    assert np.allclose(gallery.fano_joint(3, 0.3).cells, expected)


@pytest.mark.parametrize("alpha", ORDERS)
def test_bsc_closed_form(alpha: float) -> None:
    joint = joint_from_channel(np.full(2, 0.5), gallery.bsc_channel(0.2))
    assert gallery.bsc_sibson_mi(0.2, alpha) == pytest.approx(
        sibson_mi(joint, alpha).value, abs=1e-9
    )


def test_bsc_table() -> None:
    table = gallery.emit_example("bsc", epsilon=0.1, alphas=[2.0, 0.5, math.inf])

    assert table.header == ("alpha", "closed_form", "sibson_mi", "abs_error")
    assert [row[0] for row in table.rows] == [0.5, 2.0, math.inf]
    assert all(row[3] < 1e-9 for row in table.rows)
    assert table.rows[-1][1] == pytest.approx(math.log(1.8))


def test_bsc_table_in_bits() -> None:
    units.activate("bits")
    table = gallery.emit_example("bsc", alphas=[2.0])
    assert table.rows[0][1] == pytest.approx(math.log2(1.25))
    # the error column stays in nats
    assert table.rows[0][3] < 1e-9


def test_bec_table() -> None:
    table = gallery.emit_example("bec", delta=0.25, alphas=ORDERS)

    for _, forward_closed, forward, reverse_closed, reverse in table.rows:
        assert forward_closed == pytest.approx(forward, abs=1e-9)
        assert reverse_closed == pytest.approx(reverse, abs=1e-9)
    # forward value at order zero is a plain zero
    assert math.copysign(1.0, table.rows[0][2]) == 1.0
    at_one = table.rows[2]
    assert at_one[1] == pytest.approx(0.75 * math.log(2.0))
    assert at_one[3] == pytest.approx(0.75 * math.log(2.0))


def test_bec_limits() -> None:
    assert gallery.bec_sibson_mi(0.25, math.inf) == pytest.approx(math.log(1.75))
    assert gallery.bec_sibson_mi(0.25, 0) == 0.0
    assert gallery.bec_sibson_mi(0.25, 0, reverse=True) == pytest.approx(
        math.log(2 / 1.25)
    )
    assert gallery.bec_sibson_mi(0.25, math.inf, reverse=True) == pytest.approx(
        math.log(2.0)
    )


def test_gaussian_table() -> None:
    table = gallery.emit_example("gaussian", ratios=[1.0], alphas=[0.5, 2.0])

    assert [row[:2] for row in table.rows] == [(1.0, 0.5), (1.0, 2.0)]
    for _, _, closed, quadrature in table.rows:
        assert quadrature == pytest.approx(closed, abs=2e-3)


def test_dsbs_table() -> None:
    table = gallery.emit_example("dsbs", p=0.1, alphas=[math.inf, 2.0, 5.0])

    assert [row[1] for row in table.rows] == [2.0, 5.0, math.inf]
    for _, _, probability, bound in table.rows:
        assert probability == pytest.approx(0.9)
        assert probability <= bound + 1e-12


def test_fano_table() -> None:
    table = gallery.emit_example("fano_bsc3", alphas=[1.5, 2.0, 4.0])

    assert table.header[:2] == ("alpha", "map_success")
    for row in table.rows:
        success = row[1]
        assert success == pytest.approx(0.343)
        assert all(bound >= success - 1e-9 for bound in row[2:])
        assert row[2] <= row[3] + 1e-12


def test_bernoulli_bias_table() -> None:
    table = gallery.emit_example("bernoulli_bias", n_grid=[10])

    ((n, ml_lower, sibson_lower, mi_upper, alpha, rho, leakage),) = table.rows
    assert n == 10
    assert 0.0 < ml_lower < mi_upper
    assert 0.0 < sibson_lower < mi_upper
    assert alpha > 1.0
    assert 0.0 < rho <= 0.5
    assert leakage > 0.0


def test_emit_example_rejects() -> None:
    with pytest.raises(UnknownExample, match="choose from"):
        gallery.emit_example("nope")
    with pytest.raises(TypeError, match="no parameter 'delta'"):
        gallery.emit_example("bsc", delta=0.1)
    with pytest.raises(ValueError, match="p must lie in"):
        gallery.emit_example("dsbs", p=2.0)


def test_emit_example_skips_unset_parameters() -> None:
    table = gallery.emit_example("dsbs", p=None, alphas=None)
    assert table.rows[0][:2] == (0.25, math.inf)
