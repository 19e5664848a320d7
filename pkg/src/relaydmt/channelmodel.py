"""Network topology, fading model, and rate parametrization.

A network has one K-antenna source, one N-antenna destination, and any
number of decode-and-forward relays. Every link fades independently with
i.i.d. CN(0,1) entries. Link gains are normalized so the source-destination
and relay-destination gains are 1; each relay carries its own
source-relay gain phi (relays sit close to the source, so phi >= 1 in
the intended operating regime).

Rates scale with SNR as R = r log2(1 + g eta), so outage slopes measured
against eta read directly as finite-SNR diversity at multiplexing gain r.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DomainError, SizeError
from .matrixcore import MAX_DIM, ComplexMatrix, RngStream, _draw_cn_block


@dataclass(frozen=True)
class RelaySpec:
    """One relay: M antennas total, M_t used to transmit, M_r to receive."""

    total_antennas: int
    transmit_antennas: int
    receive_antennas: int = 0  # 0 means "all antennas", resolved below
    phi_db: float = 0.0

    def __post_init__(self) -> None:
        if self.receive_antennas == 0:
            object.__setattr__(self, "receive_antennas", self.total_antennas)
        m, mt, mr = self.total_antennas, self.transmit_antennas, self.receive_antennas
        if not 1 <= m <= MAX_DIM:
            raise ConfigurationError(f"relay antenna count {m} outside 1..{MAX_DIM}")
        if not 1 <= mt <= m:
            raise ConfigurationError(f"transmit antennas {mt} must be in 1..{m}")
        if not 1 <= mr <= m:
            raise ConfigurationError(f"receive antennas {mr} must be in 1..{m}")
        if not np.isfinite(self.phi_db):
            raise ConfigurationError(f"phi_db must be finite, got {self.phi_db}")

    @property
    def phi_linear(self) -> float:
        return float(10.0 ** (self.phi_db / 10.0))


@dataclass(frozen=True)
class NetworkTopology:
    source_antennas: int
    dest_antennas: int
    relays: tuple[RelaySpec, ...] = ()
    path_loss_exponent: float | None = None

    def __post_init__(self) -> None:
        k, n = self.source_antennas, self.dest_antennas
        if not 1 <= k <= MAX_DIM:
            raise ConfigurationError(f"source antennas {k} outside 1..{MAX_DIM}")
        if not 1 <= n <= MAX_DIM:
            raise ConfigurationError(f"destination antennas {n} outside 1..{MAX_DIM}")
        object.__setattr__(self, "relays", tuple(self.relays))
        if self.path_loss_exponent is not None:
            if not 2.5 <= self.path_loss_exponent <= 6.0:
                raise ConfigurationError(
                    f"path loss exponent {self.path_loss_exponent} outside [2.5, 6]"
                )


@dataclass(frozen=True)
class SnrPoint:
    eta_db: float

    @property
    def linear(self) -> float:
        return float(10.0 ** (self.eta_db / 10.0))


def snr_grid(start_db: float, stop_db: float, step_db: float) -> list[SnrPoint]:
    """Inclusive dB grid with drift-free spacing."""
    if step_db <= 0:
        raise ConfigurationError(f"grid step must be positive, got {step_db}")
    count = int(round((stop_db - start_db) / step_db))
    if count < 0 or abs(start_db + count * step_db - stop_db) > 1e-9:
        raise ConfigurationError(
            f"grid {start_db}..{stop_db} is not a whole number of {step_db} dB steps"
        )
    return [SnrPoint(start_db + i * step_db) for i in range(count + 1)]


@dataclass(frozen=True)
class RateSpec:
    """Target rate R = r log2(1 + g eta) in bits per channel use."""

    multiplexing_gain: float
    array_gain: float

    def __post_init__(self) -> None:
        if self.multiplexing_gain < 0:
            raise DomainError(f"multiplexing gain must be >= 0, got {self.multiplexing_gain}")
        if self.array_gain <= 0:
            raise DomainError(f"array gain must be > 0, got {self.array_gain}")


def default_array_gain(topology: NetworkTopology) -> float:
    """Default rate normalizer g = K N (source times destination antennas)."""
    return float(topology.source_antennas * topology.dest_antennas)


def rate_at(rate: RateSpec, snr: SnrPoint) -> float:
    return rate.multiplexing_gain * float(
        np.log2(1.0 + rate.array_gain * snr.linear)
    )


def path_gain_from_distance(d_sr: float, gamma: float) -> float:
    """Source-relay power gain d^-gamma for a relay at normalized distance d.

    Distances are normalized to the source-destination distance, so only
    0 < d <= 1 makes sense and the gain is always >= 1.
    """
    if gamma <= 0:
        raise DomainError(f"path loss exponent must be positive, got {gamma}")
    if not 0.0 < d_sr <= 1.0:
        raise DomainError(f"normalized distance must be in (0, 1], got {d_sr}")
    return float(d_sr**-gamma)


@dataclass(frozen=True)
class ChannelRealization:
    """One fading draw for every link in a topology.

    Gains (phi) are not baked into the matrices; capacity expressions
    apply them explicitly. h_sd is N x K, h_sr[i] is M_r,i x K and
    h_rd[i] is N x M_i.
    """

    topology: NetworkTopology
    h_sd: ComplexMatrix
    h_sr: tuple[ComplexMatrix, ...] = field(default=())
    h_rd: tuple[ComplexMatrix, ...] = field(default=())

    def __post_init__(self) -> None:
        topo = self.topology
        k, n = topo.source_antennas, topo.dest_antennas
        object.__setattr__(self, "h_sr", tuple(self.h_sr))
        object.__setattr__(self, "h_rd", tuple(self.h_rd))
        if (self.h_sd.rows, self.h_sd.cols) != (n, k):
            raise SizeError(
                f"h_sd must be {n}x{k}, got {self.h_sd.rows}x{self.h_sd.cols}"
            )
        if len(self.h_sr) != len(topo.relays) or len(self.h_rd) != len(topo.relays):
            raise SizeError("per-relay matrix count does not match relay count")
        for i, relay in enumerate(topo.relays):
            sr, rd = self.h_sr[i], self.h_rd[i]
            if (sr.rows, sr.cols) != (relay.receive_antennas, k):
                raise SizeError(
                    f"h_sr[{i}] must be {relay.receive_antennas}x{k}, "
                    f"got {sr.rows}x{sr.cols}"
                )
            if (rd.rows, rd.cols) != (n, relay.total_antennas):
                raise SizeError(
                    f"h_rd[{i}] must be {n}x{relay.total_antennas}, "
                    f"got {rd.rows}x{rd.cols}"
                )


def transmit_block(real: ChannelRealization, i: int) -> ComplexMatrix:
    """Relay i's transmit channel: the first M_t columns of h_rd[i].

    The transmit subset is fixed (not chosen per realization); taking
    the leading columns is exchangeable with any other fixed choice
    because the entries are i.i.d.
    """
    mt = real.topology.relays[i].transmit_antennas
    return ComplexMatrix(real.h_rd[i].data[:, :mt])


def sample_realization(topology: NetworkTopology, stream: RngStream) -> ChannelRealization:
    """Draw every link of the topology from one stream.

    Draw order is fixed (h_sd, then h_sr[i], h_rd[i] per relay in index
    order) so a (seed, trial) pair pins down the realization exactly.
    """
    gen = stream.generator()
    k, n = topology.source_antennas, topology.dest_antennas
    h_sd = ComplexMatrix(_draw_cn_block(gen, n, k))
    h_sr = []
    h_rd = []
    for relay in topology.relays:
        h_sr.append(ComplexMatrix(_draw_cn_block(gen, relay.receive_antennas, k)))
        h_rd.append(ComplexMatrix(_draw_cn_block(gen, n, relay.total_antennas)))
    return ChannelRealization(topology, h_sd, tuple(h_sr), tuple(h_rd))
