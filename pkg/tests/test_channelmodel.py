"""Topology validation, rate parametrization, and realization sampling."""

import math

import numpy as np
import pytest

from relaydmt.channelmodel import (
    ChannelRealization,
    NetworkTopology,
    RateSpec,
    RelaySpec,
    SnrPoint,
    default_array_gain,
    path_gain_from_distance,
    rate_at,
    sample_realization,
    snr_grid,
    transmit_block,
)
from relaydmt.errors import ConfigurationError, DomainError, SizeError
from relaydmt.matrixcore import ComplexMatrix, RngStream


def _topo(k=2, n=4, relays=((3, 1, 0, 20.0),)):
    return NetworkTopology(k, n, tuple(RelaySpec(*r) for r in relays))


# ---------------------------------------------------------------------------
# scalars


def test_path_gain_golden():
    assert path_gain_from_distance(0.1, 4.0) == pytest.approx(1e4)
    assert path_gain_from_distance(0.3, 4.0) == pytest.approx(0.3**-4)
    assert path_gain_from_distance(1.0, 3.0) == 1.0


def test_path_gain_rejects_bad_input():
    with pytest.raises(DomainError):
        path_gain_from_distance(0.0, 4.0)
    with pytest.raises(DomainError):
        path_gain_from_distance(1.2, 4.0)
    with pytest.raises(DomainError):
        path_gain_from_distance(0.5, 0.0)


def test_snr_point_linear():
    assert SnrPoint(20.0).linear == pytest.approx(100.0)
    assert SnrPoint(0.0).linear == 1.0
    assert SnrPoint(-10.0).linear == pytest.approx(0.1)


def test_rate_at_golden():
    assert rate_at(RateSpec(1.0, 1.0), SnrPoint(0.0)) == pytest.approx(1.0)
    # g eta = 3 makes the log term exactly 2 bits.
    eta_db = 10.0 * math.log10(3.0 / 8.0)
    assert rate_at(RateSpec(2.0, 8.0), SnrPoint(eta_db)) == pytest.approx(4.0)
    assert rate_at(RateSpec(0.0, 8.0), SnrPoint(30.0)) == 0.0


def test_rate_spec_validation():
    with pytest.raises(DomainError):
        RateSpec(-0.1, 8.0)
    with pytest.raises(DomainError):
        RateSpec(1.0, 0.0)
    RateSpec(0.0, 1.0)  # zero multiplexing gain is legal


# ---------------------------------------------------------------------------
# grid


def test_snr_grid_inclusive_endpoints():
    grid = snr_grid(-10.0, 40.0, 2.0)
    assert len(grid) == 26
    assert grid[0].eta_db == -10.0
    assert grid[-1].eta_db == 40.0


def test_snr_grid_fractional_step_is_drift_free():
    grid = snr_grid(0.0, 1.0, 0.1)
    assert len(grid) == 11
    assert grid[-1].eta_db == pytest.approx(1.0, abs=1e-12)


def test_snr_grid_single_point():
    assert [p.eta_db for p in snr_grid(5.0, 5.0, 2.0)] == [5.0]


def test_snr_grid_rejects_bad_spacing():
    with pytest.raises(ConfigurationError):
        snr_grid(0.0, 10.0, 0.0)
    with pytest.raises(ConfigurationError):
        snr_grid(0.0, 10.0, -1.0)
    with pytest.raises(ConfigurationError):
        snr_grid(0.0, 1.0, 0.3)
    with pytest.raises(ConfigurationError):
        snr_grid(10.0, 0.0, 2.0)


# ---------------------------------------------------------------------------
# topology


def test_relay_spec_defaults_receive_to_all():
    r = RelaySpec(3, 1)
    assert r.receive_antennas == 3
    assert r.phi_db == 0.0
    assert RelaySpec(3, 1, 2).receive_antennas == 2


def test_relay_spec_phi_linear():
    assert RelaySpec(2, 2, phi_db=20.0).phi_linear == pytest.approx(100.0)
    assert RelaySpec(2, 2, phi_db=0.0).phi_linear == 1.0


def test_relay_spec_validation():
    with pytest.raises(ConfigurationError):
        RelaySpec(0, 1)
    with pytest.raises(ConfigurationError):
        RelaySpec(2, 3)
    with pytest.raises(ConfigurationError):
        RelaySpec(2, 1, 3)
    with pytest.raises(ConfigurationError):
        RelaySpec(2, 2, phi_db=float("inf"))


def test_topology_validation():
    with pytest.raises(ConfigurationError):
        NetworkTopology(0, 4)
    with pytest.raises(ConfigurationError):
        NetworkTopology(2, 0)
    with pytest.raises(ConfigurationError):
        NetworkTopology(2, 4, (), path_loss_exponent=2.0)
    NetworkTopology(2, 4, (), path_loss_exponent=4.0)


def test_topology_relays_coerced_to_tuple():
    topo = NetworkTopology(2, 4, [RelaySpec(2, 2)])
    assert isinstance(topo.relays, tuple)


def test_default_array_gain_is_antenna_product():
    assert default_array_gain(_topo(2, 4)) == 8.0
    assert default_array_gain(NetworkTopology(1, 1)) == 1.0


# ---------------------------------------------------------------------------
# realizations


def test_sample_realization_shapes():
    topo = _topo(2, 4, relays=((3, 1, 0, 20.0), (2, 2, 1, 10.0)))
    real = sample_realization(topo, RngStream(5, 0))
    assert (real.h_sd.rows, real.h_sd.cols) == (4, 2)
    assert (real.h_sr[0].rows, real.h_sr[0].cols) == (3, 2)
    assert (real.h_rd[0].rows, real.h_rd[0].cols) == (4, 3)
    assert (real.h_sr[1].rows, real.h_sr[1].cols) == (1, 2)
    assert (real.h_rd[1].rows, real.h_rd[1].cols) == (4, 2)


def test_sample_realization_deterministic():
    topo = _topo()
    a = sample_realization(topo, RngStream(5, 7))
    b = sample_realization(topo, RngStream(5, 7))
    assert a.h_sd == b.h_sd and a.h_sr == b.h_sr and a.h_rd == b.h_rd
    c = sample_realization(topo, RngStream(5, 8))
    assert a.h_sd != c.h_sd


def test_sample_realization_links_are_distinct():
    topo = _topo(2, 2, relays=((2, 2),))
    real = sample_realization(topo, RngStream(5, 0))
    assert real.h_sd != real.h_rd[0]


def test_transmit_block_takes_leading_columns():
    topo = _topo(2, 4, relays=((3, 2, 0, 20.0),))
    real = sample_realization(topo, RngStream(6, 1))
    block = transmit_block(real, 0)
    assert (block.rows, block.cols) == (4, 2)
    assert np.array_equal(block.data, real.h_rd[0].data[:, :2])


def test_realization_shape_mismatches():
    topo = _topo(2, 4, relays=((3, 1, 0, 20.0),))
    ok = sample_realization(topo, RngStream(0, 0))
    bad_sd = ComplexMatrix(np.zeros((2, 4)))
    with pytest.raises(SizeError):
        ChannelRealization(topo, bad_sd, ok.h_sr, ok.h_rd)
    with pytest.raises(SizeError):
        ChannelRealization(topo, ok.h_sd, (), ok.h_rd)
    bad_sr = (ComplexMatrix(np.zeros((2, 2))),)
    with pytest.raises(SizeError):
        ChannelRealization(topo, ok.h_sd, bad_sr, ok.h_rd)
    bad_rd = (ComplexMatrix(np.zeros((4, 2))),)
    with pytest.raises(SizeError):
        ChannelRealization(topo, ok.h_sd, ok.h_sr, bad_rd)
