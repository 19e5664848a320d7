"""Analytic diversity-multiplexing tradeoff curves and effectiveness tests.

Everything here is closed-form combinatorics over antenna counts: the
piecewise-linear infinite-SNR tradeoff d(r) of Rayleigh MIMO channels,
its extensions to relayed transmission (space-time coded half-duplex,
cyclic antenna sets, staircase scheduling), and the decode-constraint
exponents that decide whether a relay can ever raise multiplexing gain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .capacity import omega_fixed
from .errors import (
    DegenerateConstraintError,
    DomainError,
    UndefinedEstimateError,
)


def _check_antennas(**counts: int) -> None:
    for name, v in counts.items():
        if not isinstance(v, int) or v < 1:
            raise DomainError(f"antenna count {name} must be a positive integer, got {v}")


@dataclass(frozen=True)
class DmtCurve:
    """Piecewise-linear diversity d as a function of multiplexing gain r.

    Vertices run from (0, d_max) down to (r_max, 0), with r strictly
    increasing and d nonincreasing.
    """

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple((float(r), float(d)) for r, d in self.vertices))
        v = self.vertices
        if not v:
            raise DomainError("a tradeoff curve needs at least one vertex")
        if v[0][0] != 0.0:
            raise DomainError(f"curve must start at r = 0, got {v[0][0]}")
        for (r0, d0), (r1, d1) in zip(v, v[1:]):
            if r1 <= r0:
                raise DomainError(f"multiplexing gains must increase: {r0} -> {r1}")
            if d1 > d0:
                raise DomainError(f"diversity must not increase: {d0} -> {d1}")
        if any(d < 0 for _, d in v):
            raise DomainError("diversity gains must be nonnegative")
        if v[-1][1] != 0.0:
            raise DomainError(f"curve must end at d = 0, got {v[-1][1]}")

    @property
    def max_multiplexing(self) -> float:
        return self.vertices[-1][0]

    def evaluate(self, r: float) -> float:
        """Linear interpolation between vertices."""
        if r < 0 or r > self.max_multiplexing:
            raise DomainError(
                f"multiplexing gain {r} outside [0, {self.max_multiplexing}]"
            )
        v = self.vertices
        for (r0, d0), (r1, d1) in zip(v, v[1:]):
            if r <= r1:
                return d0 + (d1 - d0) * (r - r0) / (r1 - r0)
        return v[-1][1]


def mimo_dmt(tx: int, rx: int) -> DmtCurve:
    """Rayleigh MIMO tradeoff: straight lines through (k, (tx-k)(rx-k))."""
    _check_antennas(tx=tx, rx=rx)
    kmax = min(tx, rx)
    return DmtCurve(tuple((float(k), float((tx - k) * (rx - k))) for k in range(kmax + 1)))


def stc_dmt(k: int, m_t: int, n: int) -> DmtCurve:
    """Tradeoff of half-duplex space-time-coded relaying, K source antennas
    assisted by M_t relay transmit antennas toward an N-antenna destination.

    Vertices sit at every half-integer average multiplexing gain. At each
    step the greedy update zeroes whichever channel's largest remaining
    eigenvalue exponent buys the most diversity, k-side on ties; a side
    with no exponents left cannot be picked again.
    """
    _check_antennas(k=k, m_t=m_t, n=n)
    a_cap, b_cap = min(k, n), min(m_t, n)
    alpha, beta = 0, 0
    vertices = [(0.0, float(k * n + m_t * n))]
    for i in range(1, a_cap + b_cap + 1):
        gain_a = (k - alpha) * (n - alpha) - (k - alpha - 1) * (n - alpha - 1)
        gain_b = (m_t - beta) * (n - beta) - (m_t - beta - 1) * (n - beta - 1)
        if beta >= b_cap or (alpha < a_cap and gain_a >= gain_b):
            alpha += 1
        else:
            beta += 1
        d = (k - alpha) * (n - alpha) + (m_t - beta) * (n - beta)
        vertices.append((i / 2.0, float(d)))
    return DmtCurve(tuple(vertices))


def direct_halfduplex_dmt(k: int, n: int) -> DmtCurve:
    """Direct transmission active half the time, on the average-rate axis.

    Halving the duty cycle doubles the instantaneous rate, which maps
    the k-th MIMO vertex to (k, (K-2k)(N-2k)); diversity runs out at
    average multiplexing min(K, N)/2.
    """
    _check_antennas(k=k, n=n)
    r_end = min(k, n) / 2.0
    vertices: list[tuple[float, float]] = []
    for j in range(min(k, n) // 2 + 1):
        d = float((k - 2 * j) * (n - 2 * j))
        if d <= 0.0:
            break
        vertices.append((float(j), d))
    vertices.append((r_end, 0.0))
    return DmtCurve(tuple(vertices))


@dataclass(frozen=True)
class EffectivenessReport:
    """Can a relaying scheme raise multiplexing gain at realistic SNR?

    omega is the decode-constraint exponent (None when no finite
    exponent exists); the scheme is effective when it adds multiplexing
    gain under a perfect source-relay link and omega >= 1. max_gain_g
    bounds the achievable spectral-efficiency ratio over direct
    transmission.
    """

    omega: Fraction | None
    effective: bool
    max_gain_g: float


def max_effective_transmit_antennas(k: int, m: int) -> int:
    """Largest M_t keeping fixed relaying effective: 2 min(K, M) - K.

    Nonpositive values mean no choice of M_t works (the relay cannot
    listen fast enough relative to what it injects downstream).
    """
    _check_antennas(k=k, m=m)
    return 2 * min(k, m) - k


def effectiveness_fixed(k: int, m_r: int, n: int, m_t: int) -> EffectivenessReport:
    """Full-duplex fixed relaying with M_t transmit / M_r receive antennas."""
    _check_antennas(k=k, m_r=m_r, n=n, m_t=m_t)
    adds_multiplexing = min(k + m_t, n) > min(k, n)
    try:
        omega: Fraction | None = omega_fixed(k, m_r, n, m_t)
    except DegenerateConstraintError:
        omega = None
    effective = adds_multiplexing and omega is not None and omega >= 1
    gain = min(2.0, 2.0 * m_r / k, n / k)
    return EffectivenessReport(omega=omega, effective=effective, max_gain_g=gain)


def effectiveness_stc(k: int, m_r: int, n: int, m_t: int) -> EffectivenessReport:
    """Half-duplex space-time-coded relaying."""
    _check_antennas(k=k, m_r=m_r, n=n, m_t=m_t)
    m_sr = min(k, m_r)
    denom = min(k, n) + min(m_t, n) - m_sr
    omega = Fraction(m_sr, denom) if denom > 0 else None
    adds_multiplexing = min(k, n) + min(m_t, n) > 2 * min(k, n)
    effective = adds_multiplexing and omega is not None and omega >= 1
    gain = (min(k, n) + min(m_t, n)) / (2.0 * min(k, n))
    return EffectivenessReport(omega=omega, effective=effective, max_gain_g=gain)


def effectiveness_dblast(m_t: int, n: int, m_r: int) -> EffectivenessReport:
    """Staircase-scheduled relaying for a single-antenna source."""
    _check_antennas(m_t=m_t, n=n, m_r=m_r)
    denom = min(1 + m_t, n) - 1
    omega = Fraction(1, denom) if denom > 0 else None
    adds_multiplexing = min(1 + m_t, n) > 1
    effective = adds_multiplexing and omega is not None and omega >= 1
    gain = min(2.0, 2.0 * m_r, float(n))
    return EffectivenessReport(omega=omega, effective=effective, max_gain_g=gain)


def finite_snr_combiner(
    p_c: float,
    p_big: float,
    p_small: float,
    d_big: float,
    d_small: float,
    d_c: float,
) -> float:
    """Finite-SNR diversity of an adaptive scheme from its pieces.

    Weights the composite and fallback diversities by their share of the
    outage bound p_c * p_big + (1 - p_c) * p_small, then corrects for the
    slope of the decode probability itself.
    """
    for name, p in (("p_c", p_c), ("p_big", p_big), ("p_small", p_small)):
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"{name} must be a probability, got {p}")
    w1 = p_c * p_big
    w2 = (1.0 - p_c) * p_small
    total = w1 + w2
    if total == 0.0:
        raise UndefinedEstimateError("zero outage weight: diversity is undefined")
    eps = p_small / total - 1.0
    return (w1 * d_big + w2 * d_small) / total - eps * d_c


@dataclass(frozen=True)
class Schedule:
    """Who transmits which codeword in which slot.

    grid maps (slot, transmitter label) to a codeword label; slots are
    1-based and run to n_slots. Labels follow x<message>^<role>: S for
    the source (with a part index when the message spans several slots)
    and R<j> for relayed copies.
    """

    n_slots: int
    grid: dict[tuple[int, str], str]

    def transmissions_at(self, slot: int) -> dict[str, str]:
        return {tx: cw for (s, tx), cw in self.grid.items() if s == slot}


def dblast_schedule(n_messages: int, m_t: int) -> Schedule:
    """Staircase schedule: relay antenna j repeats message i at slot i + j.

    The source sends message i in slot i; each of the M_t relay antennas
    echoes it on its own diagonal, so a frame of L messages spans
    L + M_t slots.
    """
    if n_messages < 1:
        raise DomainError(f"need at least one message, got {n_messages}")
    _check_antennas(m_t=m_t)
    grid: dict[tuple[int, str], str] = {}
    for i in range(1, n_messages + 1):
        grid[(i, "S")] = f"x{i}^S"
        for j in range(1, m_t + 1):
            grid[(i + j, f"R{j}")] = f"x{i}^R{j}"
    return Schedule(n_slots=n_messages + m_t, grid=grid)


def cyclic_schedule(n_messages: int, n_sets: int) -> Schedule:
    """Cyclic schedule over I disjoint relay antenna sets.

    Message l occupies source slots (l-1)I+1 .. lI, one part per set
    period; set A_i repeats part i one period later, at slot lI + i.
    A frame of L messages spans (L + 1) I slots.
    """
    if n_messages < 1:
        raise DomainError(f"need at least one message, got {n_messages}")
    if n_sets < 1:
        raise DomainError(f"need at least one antenna set, got {n_sets}")
    grid: dict[tuple[int, str], str] = {}
    for m in range(1, n_messages + 1):
        for i in range(1, n_sets + 1):
            grid[((m - 1) * n_sets + i, "S")] = f"x{m}^S{i}"
            grid[(m * n_sets + i, f"A{i}")] = f"x{m}^R{i}"
    return Schedule(n_slots=(n_messages + 1) * n_sets, grid=grid)
