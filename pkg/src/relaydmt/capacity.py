"""Per-realization capacity expressions and decode predicates.

Conventions: eta is the per-link reference SNR (linear), phi the extra
source-relay gain of the relay at hand, both applied multiplicatively
inside log2 det(I + . H H^H). A relay can decode when its source-relay
capacity covers what the composite source+relay array can deliver to
the destination; all decode predicates use an inclusive >= so the
measure-zero boundary counts as decodable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .channelmodel import ChannelRealization, transmit_block
from .errors import (
    ConfigurationError,
    DegenerateConstraintError,
    DomainError,
    NumericError,
    SchemeError,
)
from .matrixcore import ComplexMatrix, hconcat, hermitian_eigenvalues, logdet_capacity


def _check_relay_index(real: ChannelRealization, i: int) -> None:
    if not 0 <= i < len(real.topology.relays):
        raise SchemeError(
            f"relay index {i} out of range for {len(real.topology.relays)} relays"
        )


def c_direct(real: ChannelRealization, eta: float) -> float:
    """Source-to-destination capacity over the N x K direct channel."""
    return logdet_capacity(real.h_sd, eta)


def c_source_relay(real: ChannelRealization, i: int, phi: float, eta: float) -> float:
    """Source-to-relay-i capacity at boosted SNR phi * eta."""
    _check_relay_index(real, i)
    return logdet_capacity(real.h_sr[i], phi * eta)


def composite_channel(real: ChannelRealization, decoding_set: Iterable[int]) -> ComplexMatrix:
    """Stacked N x (K + sum M_t) channel of source plus forwarding relays."""
    idx = sorted(set(decoding_set))
    for i in idx:
        _check_relay_index(real, i)
    return hconcat([real.h_sd] + [transmit_block(real, i) for i in idx])


def c_composite(real: ChannelRealization, decoding_set: Iterable[int], eta: float) -> float:
    """Capacity to the destination when the given relays forward.

    Each forwarding relay contributes its M_t transmit columns next to
    the source's K columns; an empty set reduces to the direct channel.
    """
    idx = set(decoding_set)
    if not idx:
        return c_direct(real, eta)
    return logdet_capacity(composite_channel(real, idx), eta)


def _cyclic_blocks(real: ChannelRealization, n_sets: int) -> list[ComplexMatrix]:
    if len(real.topology.relays) != 1:
        raise SchemeError("cyclic relaying is defined for exactly one relay")
    relay = real.topology.relays[0]
    if n_sets < 1:
        raise ConfigurationError(f"number of antenna sets must be >= 1, got {n_sets}")
    if n_sets * relay.transmit_antennas > relay.total_antennas:
        raise ConfigurationError(
            f"{n_sets} disjoint sets of {relay.transmit_antennas} antennas "
            f"exceed the relay's {relay.total_antennas}"
        )
    mt = relay.transmit_antennas
    h_rd = real.h_rd[0].data
    return [ComplexMatrix(h_rd[:, j * mt : (j + 1) * mt]) for j in range(n_sets)]


def c_cyclic(real: ChannelRealization, n_sets: int, eta: float) -> float:
    """Average capacity when the relay cycles over disjoint antenna sets.

    Set j covers columns j*M_t .. (j+1)*M_t of the relay-destination
    channel; slot j pairs the source with set j, and the value is the
    per-slot average of the composite capacities.
    """
    blocks = _cyclic_blocks(real, n_sets)
    total = 0.0
    for block in blocks:
        total += logdet_capacity(hconcat([real.h_sd, block]), eta)
    return total / n_sets


def c_half_duplex_pair(real: ChannelRealization, i: int, eta: float) -> float:
    """Two-slot average rate: source alone, then relay alone."""
    _check_relay_index(real, i)
    return 0.5 * (c_direct(real, eta) + logdet_capacity(transmit_block(real, i), eta))


def decode_constraint_fixed(real: ChannelRealization, i: int, phi: float, eta: float) -> bool:
    """Relay i can decode without limiting the composite rate."""
    return c_source_relay(real, i, phi, eta) >= c_composite(real, {i}, eta)


def decode_constraint_cyclic(
    real: ChannelRealization, n_sets: int, phi: float, eta: float
) -> bool:
    """Cyclic decode condition: I slots of listening cover the I composite slots."""
    blocks = _cyclic_blocks(real, n_sets)
    lhs = n_sets * c_source_relay(real, 0, phi, eta)
    rhs = sum(logdet_capacity(hconcat([real.h_sd, b]), eta) for b in blocks)
    return lhs >= rhs


def decode_constraint_stc(real: ChannelRealization, i: int, phi: float, eta: float) -> bool:
    """Space-time-coded decode condition with slot-wise (not joint) reception.

    The right side upper-bounds the composite capacity by the product of
    the per-slot determinants, so this constraint is never easier than
    the full-duplex one.
    """
    _check_relay_index(real, i)
    rhs = c_direct(real, eta) + logdet_capacity(transmit_block(real, i), eta)
    return c_source_relay(real, i, phi, eta) >= rhs


def _log_eig_product(h: ComplexMatrix) -> float:
    """ln of the product of the min-side Gram eigenvalues of h."""
    a = h.data
    if h.rows > h.cols:
        a = a.conj().T
    eigs = hermitian_eigenvalues(ComplexMatrix(a @ a.conj().T))
    if np.any(eigs <= 0.0):
        raise NumericError("rank-deficient channel: eigenvalue product is zero")
    return float(np.sum(np.log(eigs)))


def omega_fixed(k: int, m_r: int, n: int, m_t: int) -> Fraction:
    """Decode-constraint SNR exponent min(K,M_r) / (min(K+M_t,N) - min(K,M_r)).

    The source-relay link supports min(K, M_r) spatial streams against
    the composite link's min(K+M_t, N); the exponent says how fast the
    gain phi must grow with eta for decoding to stay unconstrained.
    """
    for name, v in (("k", k), ("m_r", m_r), ("n", n), ("m_t", m_t)):
        if v < 1:
            raise DomainError(f"antenna count {name} must be >= 1, got {v}")
    m_sr = min(k, m_r)
    m_srd = min(k + m_t, n)
    if m_srd <= m_sr:
        raise DegenerateConstraintError(
            f"composite rank {m_srd} does not exceed source-relay rank {m_sr}"
        )
    return Fraction(m_sr, m_srd - m_sr)


def nu_value(real: ChannelRealization, i: int) -> float:
    """Per-realization gain threshold: decoding is unconstrained when
    eta <= nu * phi ** omega.

    nu is the eigenvalue-product ratio of the source-relay and composite
    Grams, taken to the power 1 / (min(K+M_t,N) - min(K,M_r)).
    """
    _check_relay_index(real, i)
    topo = real.topology
    relay = topo.relays[i]
    k, n = topo.source_antennas, topo.dest_antennas
    m_sr = min(k, relay.receive_antennas)
    m_srd = min(k + relay.transmit_antennas, n)
    if m_srd <= m_sr:
        raise DegenerateConstraintError(
            f"composite rank {m_srd} does not exceed source-relay rank {m_sr}"
        )
    log_sr = _log_eig_product(real.h_sr[i])
    log_srd = _log_eig_product(composite_channel(real, {i}))
    return float(np.exp((log_sr - log_srd) / (m_srd - m_sr)))


@dataclass(frozen=True)
class LowSnrCondition:
    """Outcome of the low-SNR decode comparison, with the energy normalizers."""

    holds: bool
    chi_composite: float
    chi_source_relay: float

    def __bool__(self) -> bool:
        return self.holds


def low_snr_condition(real: ChannelRealization, i: int, phi: float) -> LowSnrCondition:
    """First-order (eta -> 0) decode comparison.

    At vanishing SNR every capacity linearizes to its channel's total
    energy, so decoding is unconstrained when the composite energy is at
    most phi times the energy of the (M - M_t) x K listening array.
    """
    _check_relay_index(real, i)
    topo = real.topology
    relay = topo.relays[i]
    m, mt = relay.total_antennas, relay.transmit_antennas
    if m <= mt:
        raise DomainError(
            f"low-SNR comparison needs listening antennas: M={m} <= M_t={mt}"
        )
    listen_rows = m - mt
    if relay.receive_antennas < listen_rows:
        raise DomainError(
            f"relay receives on {relay.receive_antennas} antennas, "
            f"fewer than the {listen_rows} listening while M_t transmit"
        )
    k, n = topo.source_antennas, topo.dest_antennas
    comp = composite_channel(real, {i}).data
    sr_listen = real.h_sr[i].data[:listen_rows, :]
    comp_energy = float(np.sum(np.abs(comp) ** 2))
    sr_energy = float(np.sum(np.abs(sr_listen) ** 2))
    return LowSnrCondition(
        holds=comp_energy <= phi * sr_energy,
        chi_composite=comp_energy / (n * (k + mt)),
        chi_source_relay=sr_energy / (listen_rows * k),
    )
