"""Monte-Carlo outage estimation for relay protocols.

Every experiment is organized around per-trial random streams: trial t
draws its channel realization from stream (seed, t), so estimates are
reproducible bit-for-bit regardless of chunking or worker count, and
different schemes run on the same seed see the same fading (common
random numbers), which makes paired comparisons sharp.

Internally capacities are evaluated from cached Gram eigenvalues, so a
whole SNR grid costs one eigendecomposition per channel per trial. This
matches the Cholesky log-det route to floating-point accuracy (both are
log2 det(I + rho H H^H)) and is cross-checked in the tests.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .capacity import omega_fixed
from .channelmodel import (
    ChannelRealization,
    NetworkTopology,
    RateSpec,
    SnrPoint,
    rate_at,
)
from .errors import (
    ConfigurationError,
    DegenerateConstraintError,
    DomainError,
    SchemeError,
)
from .matrixcore import RngStream, _draw_cn_block

_LN2 = math.log(2.0)
_Z95 = 1.959963984540054

# Trials are processed in fixed-size chunks. The size is a private
# constant, not a tuning knob: results are identical for any chunking,
# but keeping it fixed makes that property trivially auditable.
_CHUNK = 4096

DEFAULT_TRIALS = 100_000

SCHEMES = (
    "direct",
    "fixed_adaptive",
    "fixed_bound",
    "multicast",
    "relay_selection",
    "multi_adaptive",
    "cyclic_adaptive",
    "stc_adaptive",
)

_SINGLE_RELAY_SCHEMES = {"fixed_adaptive", "fixed_bound", "cyclic_adaptive", "stc_adaptive"}
_MULTI_RELAY_SCHEMES = {"multicast", "relay_selection", "multi_adaptive"}

# Subset enumeration over relays is exponential; past this it is a
# configuration mistake, not a simulation.
MAX_ENUMERATED_RELAYS = 8


def wilson_interval(events: float, trials: int) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    p = events / trials
    z2 = _Z95 * _Z95
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2.0 * trials)) / denom
    half = (_Z95 / denom) * math.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials))
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass(frozen=True)
class OutageEstimate:
    """A probability estimate with its 95% Wilson interval.

    events may be fractional for plug-in estimates assembled from
    several counts (e.g. the decode-weighted outage bound).
    """

    trials: int
    events: float
    p_hat: float
    ci_low: float
    ci_high: float

    @classmethod
    def from_events(cls, trials: int, events: float) -> "OutageEstimate":
        if trials < 1:
            raise DomainError(f"need at least one trial, got {trials}")
        if not 0.0 <= events <= trials:
            raise DomainError(f"event count {events} outside 0..{trials}")
        lo, hi = wilson_interval(events, trials)
        return cls(trials=trials, events=float(events), p_hat=events / trials, ci_low=lo, ci_high=hi)

    @property
    def half_width(self) -> float:
        return 0.5 * (self.ci_high - self.ci_low)


@dataclass(frozen=True)
class ProtocolSpec:
    """A simulated protocol bound to a topology.

    n_sets is the number of disjoint relay antenna sets and applies to
    cyclic relaying only.
    """

    scheme: str
    topology: NetworkTopology
    n_sets: int | None = None

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ConfigurationError(
                f"unknown scheme '{self.scheme}'; expected one of {', '.join(SCHEMES)}"
            )
        n_relays = len(self.topology.relays)
        if self.scheme in _SINGLE_RELAY_SCHEMES and n_relays != 1:
            raise SchemeError(f"scheme '{self.scheme}' needs exactly one relay, got {n_relays}")
        if self.scheme in _MULTI_RELAY_SCHEMES and n_relays < 1:
            raise SchemeError(f"scheme '{self.scheme}' needs at least one relay")
        if self.scheme == "multi_adaptive" and n_relays > MAX_ENUMERATED_RELAYS:
            raise ConfigurationError(
                f"multi_adaptive enumerates decode sets; {n_relays} relays exceed "
                f"the supported {MAX_ENUMERATED_RELAYS}"
            )
        if self.scheme == "cyclic_adaptive":
            if self.n_sets is None:
                raise ConfigurationError("cyclic_adaptive needs n_sets")
            relay = self.topology.relays[0]
            if self.n_sets < 1:
                raise ConfigurationError(f"n_sets must be >= 1, got {self.n_sets}")
            if self.n_sets * relay.transmit_antennas > relay.total_antennas:
                raise ConfigurationError(
                    f"{self.n_sets} sets of {relay.transmit_antennas} antennas "
                    f"exceed the relay's {relay.total_antennas}"
                )
        elif self.n_sets is not None:
            raise ConfigurationError(f"n_sets does not apply to scheme '{self.scheme}'")


@dataclass(frozen=True)
class SweepPoint:
    eta_db: float
    estimates: dict[str, OutageEstimate]


@dataclass(frozen=True)
class SweepResult:
    scheme: str
    rate: RateSpec
    points: tuple[SweepPoint, ...]
    trials: int
    master_seed: int
    primary: str

    def series(self, name: str) -> list[OutageEstimate]:
        return [pt.estimates[name] for pt in self.points]

    @property
    def series_names(self) -> list[str]:
        return list(self.points[0].estimates.keys())


# ---------------------------------------------------------------------------
# sampling and capacity kernels


def _sample_chunk(topology: NetworkTopology, seed: int, start: int, n: int):
    """Realizations for trials start..start+n-1, stacked per link.

    Draw order per trial matches channelmodel.sample_realization exactly.
    """
    k, nn = topology.source_antennas, topology.dest_antennas
    h_sd = np.empty((n, nn, k), np.complex128)
    h_sr = [np.empty((n, r.receive_antennas, k), np.complex128) for r in topology.relays]
    h_rd = [np.empty((n, nn, r.total_antennas), np.complex128) for r in topology.relays]
    for t in range(n):
        gen = RngStream(seed, start + t).generator()
        h_sd[t] = _draw_cn_block(gen, nn, k)
        for j, relay in enumerate(topology.relays):
            h_sr[j][t] = _draw_cn_block(gen, relay.receive_antennas, k)
            h_rd[j][t] = _draw_cn_block(gen, nn, relay.total_antennas)
    return h_sd, h_sr, h_rd


def _gram_eigs(batch: np.ndarray) -> np.ndarray:
    """Min-side Gram eigenvalues (ascending) for a stack of matrices."""
    if batch.shape[1] > batch.shape[2]:
        batch = batch.conj().transpose(0, 2, 1)
    gram = batch @ batch.conj().transpose(0, 2, 1)
    w = np.linalg.eigvalsh(gram)
    np.maximum(w, 0.0, out=w)
    return w


def _caps(eigs: np.ndarray, rho: float) -> np.ndarray:
    """sum log2(1 + rho * lambda) over the eigenvalue axis."""
    return np.log1p(rho * eigs).sum(axis=-1) / _LN2


def _composite(h_sd: np.ndarray, h_rd: list[np.ndarray], topology: NetworkTopology, idx) -> np.ndarray:
    """Stack the source columns with each listed relay's transmit columns."""
    blocks = [h_sd]
    for i in sorted(idx):
        mt = topology.relays[i].transmit_antennas
        blocks.append(h_rd[i][:, :, :mt])
    return np.concatenate(blocks, axis=2)


def _phis(topology: NetworkTopology) -> list[float]:
    return [r.phi_linear for r in topology.relays]


# Each kernel maps one chunk of realizations to named boolean event
# arrays of shape (n_points, n_trials_in_chunk). Derived (non-event)
# series are assembled later from the accumulated counts.


def _events_direct(spec, h_sd, h_sr, h_rd, etas, rates):
    e_sd = _gram_eigs(h_sd)
    return {"direct": np.stack([_caps(e_sd, eta) < r for eta, r in zip(etas, rates)])}


def _fixed_features(spec, h_sd, h_sr, h_rd):
    topo = spec.topology
    e_sd = _gram_eigs(h_sd)
    e_sr = _gram_eigs(h_sr[0])
    e_comp = _gram_eigs(_composite(h_sd, h_rd, topo, [0]))
    log_nu = None
    try:
        omega = float(omega_fixed(
            topo.source_antennas,
            topo.relays[0].receive_antennas,
            topo.dest_antennas,
            topo.relays[0].transmit_antennas,
        ))
    except DegenerateConstraintError:
        omega = None
    if omega is not None:
        m_sr = min(topo.source_antennas, topo.relays[0].receive_antennas)
        m_srd = min(topo.source_antennas + topo.relays[0].transmit_antennas, topo.dest_antennas)
        with np.errstate(divide="ignore"):
            log_nu = (np.log(e_sr).sum(axis=1) - np.log(e_comp).sum(axis=1)) / (m_srd - m_sr)
    return e_sd, e_sr, e_comp, omega, log_nu


def _events_fixed(spec, h_sd, h_sr, h_rd, etas, rates):
    phi = spec.topology.relays[0].phi_linear
    e_sd, e_sr, e_comp, omega, log_nu = _fixed_features(spec, h_sd, h_sr, h_rd)
    out: dict[str, list[np.ndarray]] = {
        name: [] for name in ("adaptive", "p_c", "direct", "composite", "p_nu")
    }
    for eta, r in zip(etas, rates):
        c_sr = _caps(e_sr, phi * eta)
        c_dir = _caps(e_sd, eta)
        c_comp = _caps(e_comp, eta)
        decoded = c_sr >= r
        out["adaptive"].append(np.where(decoded, c_comp < r, c_dir < r))
        out["p_c"].append(c_sr >= c_comp)
        out["direct"].append(c_dir < r)
        out["composite"].append(c_comp < r)
        if omega is not None:
            out["p_nu"].append(log_nu > math.log(eta) - omega * math.log(phi))
    if omega is None:
        del out["p_nu"]
    return {name: np.stack(rows) for name, rows in out.items()}


def _events_multicast(spec, h_sd, h_sr, h_rd, etas, rates):
    topo = spec.topology
    e_sd = _gram_eigs(h_sd)
    e_sr = [_gram_eigs(m) for m in h_sr]
    e_all = _gram_eigs(_composite(h_sd, h_rd, topo, range(len(topo.relays))))
    phis = _phis(topo)
    out = {"multicast": [], "direct": [], "composite_all": []}
    for eta, r in zip(etas, rates):
        c_sr_min = np.min(
            np.stack([_caps(e, phi * eta) for e, phi in zip(e_sr, phis)]), axis=0
        )
        c_all = _caps(e_all, eta)
        out["multicast"].append((c_sr_min < r) | (c_all < r))
        out["direct"].append(_caps(e_sd, eta) < r)
        out["composite_all"].append(c_all < r)
    return {name: np.stack(rows) for name, rows in out.items()}


def _events_selection(spec, h_sd, h_sr, h_rd, etas, rates):
    topo = spec.topology
    e_sd = _gram_eigs(h_sd)
    e_sr = [_gram_eigs(m) for m in h_sr]
    e_comp = [
        _gram_eigs(_composite(h_sd, h_rd, topo, [i])) for i in range(len(topo.relays))
    ]
    phis = _phis(topo)
    n = h_sd.shape[0]
    rows = np.arange(n)
    out = {"selection": [], "p_c_ors": [], "direct": [], "composite": []}
    for eta, r in zip(etas, rates):
        c_sr = np.stack([_caps(e, phi * eta) for e, phi in zip(e_sr, phis)], axis=1)
        c_comp = np.stack([_caps(e, eta) for e in e_comp], axis=1)
        best = np.argmax(c_sr, axis=1)
        best_decodes = c_sr[rows, best] >= r
        c_dir = _caps(e_sd, eta)
        out["selection"].append(
            np.where(best_decodes, c_comp[rows, best] < r, c_dir < r)
        )
        out["p_c_ors"].append(np.any(c_sr >= c_comp, axis=1))
        out["direct"].append(c_dir < r)
        out["composite"].append(c_comp[:, 0] < r)
    return {name: np.stack(v) for name, v in out.items()}


def _events_multi_adaptive(spec, h_sd, h_sr, h_rd, etas, rates):
    topo = spec.topology
    n_relays = len(topo.relays)
    e_sd = _gram_eigs(h_sd)
    e_sr = [_gram_eigs(m) for m in h_sr]
    subset_eigs = {
        frozenset(c): _gram_eigs(_composite(h_sd, h_rd, topo, c))
        for size in range(1, n_relays + 1)
        for c in combinations(range(n_relays), size)
    }
    phis = _phis(topo)
    names = ["multi_adaptive", "direct", "composite_all"] + [
        f"decode_{k}" for k in range(n_relays + 1)
    ]
    out: dict[str, list[np.ndarray]] = {name: [] for name in names}
    all_set = frozenset(range(n_relays))
    for eta, r in zip(etas, rates):
        decodes = np.stack(
            [_caps(e, phi * eta) >= r for e, phi in zip(e_sr, phis)], axis=1
        )
        c_dir = _caps(e_sd, eta)
        outage = c_dir < r  # empty decode set
        for subset, eigs in subset_eigs.items():
            mask = np.ones(decodes.shape[0], dtype=bool)
            for i in range(n_relays):
                mask &= decodes[:, i] == (i in subset)
            if mask.any():
                outage = np.where(mask, _caps(eigs, eta) < r, outage)
        out["multi_adaptive"].append(outage)
        out["direct"].append(c_dir < r)
        out["composite_all"].append(_caps(subset_eigs[all_set], eta) < r)
        sizes = decodes.sum(axis=1)
        for k in range(n_relays + 1):
            out[f"decode_{k}"].append(sizes == k)
    return {name: np.stack(v) for name, v in out.items()}


def _events_cyclic(spec, h_sd, h_sr, h_rd, etas, rates):
    topo = spec.topology
    relay = topo.relays[0]
    phi = relay.phi_linear
    mt = relay.transmit_antennas
    e_sd = _gram_eigs(h_sd)
    e_sr = _gram_eigs(h_sr[0])
    e_slots = [
        _gram_eigs(np.concatenate([h_sd, h_rd[0][:, :, j * mt : (j + 1) * mt]], axis=2))
        for j in range(spec.n_sets)
    ]
    out = {
        name: []
        for name in ("cyclic_adaptive", "cyclic_perfect", "p_c_cyclic", "direct", "composite")
    }
    for eta, r in zip(etas, rates):
        c_sr = _caps(e_sr, phi * eta)
        c_slots = np.stack([_caps(e, eta) for e in e_slots])
        c_cyc = c_slots.mean(axis=0)
        c_dir = _caps(e_sd, eta)
        out["cyclic_adaptive"].append(np.where(c_sr >= r, c_cyc < r, c_dir < r))
        out["cyclic_perfect"].append(c_cyc < r)
        out["p_c_cyclic"].append(spec.n_sets * c_sr >= c_slots.sum(axis=0))
        out["direct"].append(c_dir < r)
        out["composite"].append(c_slots[0] < r)
    return {name: np.stack(v) for name, v in out.items()}


def _events_stc(spec, h_sd, h_sr, h_rd, etas, rates):
    topo = spec.topology
    relay = topo.relays[0]
    phi = relay.phi_linear
    e_sd = _gram_eigs(h_sd)
    e_sr = _gram_eigs(h_sr[0])
    e_rd = _gram_eigs(h_rd[0][:, :, : relay.transmit_antennas])
    out = {
        name: []
        for name in ("stc_adaptive", "stc_perfect", "p_c_stc", "direct_double_rate", "direct")
    }
    for eta, r in zip(etas, rates):
        c_sr = _caps(e_sr, phi * eta)
        c_sd = _caps(e_sd, eta)
        c_rd = _caps(e_rd, eta)
        paired = 0.5 * (c_sd + c_rd) < r
        doubled = c_sd < 2.0 * r
        out["stc_adaptive"].append(np.where(c_sr >= 2.0 * r, paired, doubled))
        out["stc_perfect"].append(paired)
        out["p_c_stc"].append(c_sr >= c_sd + c_rd)
        out["direct_double_rate"].append(doubled)
        out["direct"].append(c_sd < r)
    return {name: np.stack(v) for name, v in out.items()}


_KERNELS = {
    "direct": _events_direct,
    "fixed_adaptive": _events_fixed,
    "fixed_bound": _events_fixed,
    "multicast": _events_multicast,
    "relay_selection": _events_selection,
    "multi_adaptive": _events_multi_adaptive,
    "cyclic_adaptive": _events_cyclic,
    "stc_adaptive": _events_stc,
}

_PRIMARY = {
    "direct": "direct",
    "fixed_adaptive": "adaptive",
    "fixed_bound": "bound",
    "multicast": "multicast",
    "relay_selection": "selection",
    "multi_adaptive": "multi_adaptive",
    "cyclic_adaptive": "cyclic_adaptive",
    "stc_adaptive": "stc_adaptive",
}


def _chunk_counts(spec, etas, rates, seed, start, n) -> dict[str, np.ndarray]:
    h_sd, h_sr, h_rd = _sample_chunk(spec.topology, seed, start, n)
    events = _KERNELS[spec.scheme](spec, h_sd, h_sr, h_rd, etas, rates)
    return {name: ev.sum(axis=1, dtype=np.int64) for name, ev in events.items()}


def _accumulate_counts(spec, etas, rates, trials, seed, workers) -> dict[str, np.ndarray]:
    if trials < 1:
        raise DomainError(f"need at least one trial, got {trials}")
    spans = [(s, min(_CHUNK, trials - s)) for s in range(0, trials, _CHUNK)]
    if workers <= 1:
        parts = [_chunk_counts(spec, etas, rates, seed, s, n) for s, n in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(lambda sp: _chunk_counts(spec, etas, rates, seed, sp[0], sp[1]), spans)
            )
    totals = {name: np.zeros(len(etas), dtype=np.int64) for name in parts[0]}
    for part in parts:
        for name, counts in part.items():
            totals[name] += counts
    return totals


def _derived_series(scheme: str, counts: dict[str, np.ndarray], trials: int) -> dict[str, np.ndarray]:
    """Plug-in series assembled from the raw counts."""
    if scheme in ("fixed_adaptive", "fixed_bound"):
        p_c = counts["p_c"] / trials
        p_comp = counts["composite"] / trials
        p_dir = counts["direct"] / trials
        return {"bound": (p_c * p_comp + (1.0 - p_c) * p_dir) * trials}
    if scheme == "stc_adaptive":
        p_c = counts["p_c_stc"] / trials
        p_pair = counts["stc_perfect"] / trials
        p_dbl = counts["direct_double_rate"] / trials
        return {"bound": (p_c * p_pair + (1.0 - p_c) * p_dbl) * trials}
    return {}


def run_sweep(
    spec: ProtocolSpec,
    rate: RateSpec,
    grid: list[SnrPoint],
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    workers: int = 1,
) -> SweepResult:
    """Estimate every series of a scheme across an SNR grid.

    All series at all grid points are evaluated on the same realizations
    (trial t always uses stream (seed, t)), and the result is identical
    for any worker count.
    """
    if not grid:
        raise ConfigurationError("empty SNR grid")
    etas = np.array([pt.linear for pt in grid])
    rates = np.array([rate_at(rate, pt) for pt in grid])
    counts = _accumulate_counts(spec, etas, rates, trials, seed, workers)
    counts.update(_derived_series(spec.scheme, counts, trials))
    points = []
    for i, pt in enumerate(grid):
        estimates = {
            name: OutageEstimate.from_events(trials, float(series[i]))
            for name, series in counts.items()
        }
        points.append(SweepPoint(eta_db=pt.eta_db, estimates=estimates))
    return SweepResult(
        scheme=spec.scheme,
        rate=rate,
        points=tuple(points),
        trials=trials,
        master_seed=seed,
        primary=_PRIMARY[spec.scheme],
    )


def _single_point(spec, rate, snr, trials, seed, series) -> OutageEstimate:
    sweep = run_sweep(spec, rate, [snr], trials=trials, seed=seed)
    return sweep.points[0].estimates[series]


_RATE_FREE = RateSpec(multiplexing_gain=0.0, array_gain=1.0)


# ---------------------------------------------------------------------------
# public estimators


def estimate_mimo_outage(
    tx: int, rx: int, snr: SnrPoint, rate_bits: float, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> OutageEstimate:
    """Outage of an rx x tx i.i.d. Rayleigh channel at a fixed rate in bits."""
    if rate_bits < 0:
        raise DomainError(f"rate must be nonnegative, got {rate_bits}")
    topo = NetworkTopology(source_antennas=tx, dest_antennas=rx)
    spec = ProtocolSpec(scheme="direct", topology=topo)
    eta = np.array([snr.linear])
    counts = _accumulate_counts(spec, eta, np.array([rate_bits]), trials, seed, workers=1)
    return OutageEstimate.from_events(trials, float(counts["direct"][0]))


def _require_single_relay(topology: NetworkTopology, what: str) -> None:
    if len(topology.relays) != 1:
        raise SchemeError(f"{what} needs exactly one relay, got {len(topology.relays)}")


def estimate_pc_fixed(
    topology: NetworkTopology, snr: SnrPoint, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> OutageEstimate:
    """Probability that the relay's decode constraint holds."""
    _require_single_relay(topology, "estimate_pc_fixed")
    spec = ProtocolSpec(scheme="fixed_bound", topology=topology)
    return _single_point(spec, _RATE_FREE, snr, trials, seed, "p_c")


def estimate_pnu(
    topology: NetworkTopology, snr: SnrPoint, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> OutageEstimate:
    """Probability that the per-realization threshold nu exceeds eta / phi^omega."""
    _require_single_relay(topology, "estimate_pnu")
    relay = topology.relays[0]
    omega_fixed(  # raises DegenerateConstraintError when no exponent exists
        topology.source_antennas,
        relay.receive_antennas,
        topology.dest_antennas,
        relay.transmit_antennas,
    )
    spec = ProtocolSpec(scheme="fixed_bound", topology=topology)
    return _single_point(spec, _RATE_FREE, snr, trials, seed, "p_nu")


def simulate_adaptive_single(
    topology: NetworkTopology,
    snr: SnrPoint,
    rate: RateSpec,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> OutageEstimate:
    """Event-wise adaptive decode-and-forward with one relay."""
    _require_single_relay(topology, "simulate_adaptive_single")
    spec = ProtocolSpec(scheme="fixed_adaptive", topology=topology)
    return _single_point(spec, rate, snr, trials, seed, "adaptive")


def bound_adaptive_single(
    topology: NetworkTopology,
    snr: SnrPoint,
    rate: RateSpec,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> OutageEstimate:
    """Decode-weighted outage bound, plugged in from shared-seed components."""
    _require_single_relay(topology, "bound_adaptive_single")
    spec = ProtocolSpec(scheme="fixed_bound", topology=topology)
    return _single_point(spec, rate, snr, trials, seed, "bound")


def simulate_multicast(
    topology: NetworkTopology,
    snr: SnrPoint,
    rate: RateSpec,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> OutageEstimate:
    """All relays must decode; any source-relay failure is an outage."""
    spec = ProtocolSpec(scheme="multicast", topology=topology)
    return _single_point(spec, rate, snr, trials, seed, "multicast")


def simulate_relay_selection(
    topology: NetworkTopology,
    snr: SnrPoint,
    rate: RateSpec,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> OutageEstimate:
    """Only the relay with the best source-relay capacity forwards."""
    spec = ProtocolSpec(scheme="relay_selection", topology=topology)
    return _single_point(spec, rate, snr, trials, seed, "selection")


def estimate_pc_ors(
    topology: NetworkTopology, snr: SnrPoint, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> OutageEstimate:
    """Probability that some relay satisfies its own decode constraint."""
    spec = ProtocolSpec(scheme="relay_selection", topology=topology)
    return _single_point(spec, _RATE_FREE, snr, trials, seed, "p_c_ors")


def simulate_multi_adaptive(
    topology: NetworkTopology,
    snr: SnrPoint,
    rate: RateSpec,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> tuple[OutageEstimate, np.ndarray]:
    """Every relay that decodes forwards.

    Returns the outage estimate and the decode-set-size histogram
    (counts for 0..n_relays decoding relays).
    """
    spec = ProtocolSpec(scheme="multi_adaptive", topology=topology)
    sweep = run_sweep(spec, rate, [snr], trials=trials, seed=seed)
    est = sweep.points[0].estimates
    hist = np.array(
        [int(est[f"decode_{k}"].events) for k in range(len(topology.relays) + 1)],
        dtype=np.int64,
    )
    return est["multi_adaptive"], hist


@dataclass(frozen=True)
class PciResult:
    """Decode-probability bounds for progressively larger relay groups.

    p_c_empty[i-1] estimates the probability that every size-i group is
    blocked (each such group has a member whose source-relay capacity
    falls below the group's composite capacity); p_c[i-1] is the
    conditional bound derived from consecutive ratios. Nesting
    violations count realizations where a size-i blockage does not
    imply a size-(i+1) blockage; structurally there are none.
    """

    p_c_empty: tuple[OutageEstimate, ...]
    p_c: tuple[OutageEstimate, ...]
    nesting_violations: int
    trials: int


def _pci_chunk(topology, etas, seed, start, n):
    h_sd, h_sr, h_rd = _sample_chunk(topology, seed, start, n)
    n_relays = len(topology.relays)
    e_sr = [_gram_eigs(m) for m in h_sr]
    subset_eigs = {
        c: _gram_eigs(_composite(h_sd, h_rd, topology, c))
        for size in range(1, n_relays + 1)
        for c in combinations(range(n_relays), size)
    }
    phis = _phis(topology)
    n_pts = len(etas)
    blocked = np.zeros((n_relays, n_pts, n), dtype=bool)
    for p, eta in enumerate(etas):
        c_sr = [_caps(e, phi * eta) for e, phi in zip(e_sr, phis)]
        for size in range(1, n_relays + 1):
            event = np.ones(n, dtype=bool)
            for subset in combinations(range(n_relays), size):
                c_comp = _caps(subset_eigs[subset], eta)
                fail_any = np.zeros(n, dtype=bool)
                for j in subset:
                    fail_any |= c_sr[j] < c_comp
                event &= fail_any
            blocked[size - 1, p] = event
    violations = 0
    for size in range(1, n_relays):
        violations += int(np.sum(blocked[size - 1] & ~blocked[size]))
    return blocked.sum(axis=2, dtype=np.int64), violations


def estimate_pci(
    topology: NetworkTopology, snr: SnrPoint, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> PciResult:
    counts, violations = _pci_sweep_counts(topology, [snr], trials, seed)
    return _assemble_pci(counts[:, 0], violations, trials)


def _pci_sweep_counts(topology, grid, trials, seed):
    n_relays = len(topology.relays)
    if n_relays < 1:
        raise SchemeError("decode-group analysis needs at least one relay")
    if n_relays > MAX_ENUMERATED_RELAYS:
        raise ConfigurationError(
            f"decode-group analysis enumerates subsets; {n_relays} relays exceed "
            f"the supported {MAX_ENUMERATED_RELAYS}"
        )
    etas = np.array([pt.linear for pt in grid])
    totals = np.zeros((n_relays, len(grid)), dtype=np.int64)
    violations = 0
    for start in range(0, trials, _CHUNK):
        n = min(_CHUNK, trials - start)
        counts, v = _pci_chunk(topology, etas, seed, start, n)
        totals += counts
        violations += v
    return totals, violations


def _assemble_pci(counts: np.ndarray, violations: int, trials: int) -> PciResult:
    n_relays = counts.shape[0]
    p_empty = [OutageEstimate.from_events(trials, int(c)) for c in counts]
    p_c = []
    for i in range(n_relays):
        num = counts[i]
        den = counts[i + 1] if i + 1 < n_relays else trials
        if den == 0:
            p_c.append(OutageEstimate.from_events(trials, 0.0))
        else:
            p_c.append(OutageEstimate.from_events(trials, trials * (1.0 - num / den)))
    return PciResult(
        p_c_empty=tuple(p_empty), p_c=tuple(p_c), nesting_violations=violations, trials=trials
    )


def sweep_pci(
    topology: NetworkTopology,
    grid: list[SnrPoint],
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> SweepResult:
    """Decode-group bounds across an SNR grid, as named series."""
    counts, _ = _pci_sweep_counts(topology, grid, trials, seed)
    n_relays = counts.shape[0]
    points = []
    for p, pt in enumerate(grid):
        res = _assemble_pci(counts[:, p], 0, trials)
        estimates: dict[str, OutageEstimate] = {}
        for i in range(n_relays):
            estimates[f"p_c_{i + 1}"] = res.p_c[i]
        for i in range(n_relays):
            estimates[f"p_c_empty_{i + 1}"] = res.p_c_empty[i]
        points.append(SweepPoint(eta_db=pt.eta_db, estimates=estimates))
    return SweepResult(
        scheme="pci",
        rate=_RATE_FREE,
        points=tuple(points),
        trials=trials,
        master_seed=seed,
        primary="p_c_1",
    )


def simulate_multi_adaptive_sweep_histogram(sweep: SweepResult, point: int) -> np.ndarray:
    """Decode-set-size histogram at one sweep point of a multi_adaptive run."""
    est = sweep.points[point].estimates
    sizes = sorted(int(k.split("_")[1]) for k in est if k.startswith("decode_"))
    return np.array([int(est[f"decode_{k}"].events) for k in sizes], dtype=np.int64)


def simulate_cyclic_adaptive(
    topology: NetworkTopology,
    n_sets: int,
    snr: SnrPoint,
    rate: RateSpec,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> OutageEstimate:
    """Adaptive relaying that cycles over disjoint relay antenna sets."""
    spec = ProtocolSpec(scheme="cyclic_adaptive", topology=topology, n_sets=n_sets)
    return _single_point(spec, rate, snr, trials, seed, "cyclic_adaptive")


def estimate_pc_cyclic(
    topology: NetworkTopology,
    n_sets: int,
    snr: SnrPoint,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> OutageEstimate:
    """Probability that I listening slots cover the I cyclic composite slots."""
    spec = ProtocolSpec(scheme="cyclic_adaptive", topology=topology, n_sets=n_sets)
    return _single_point(spec, _RATE_FREE, snr, trials, seed, "p_c_cyclic")


def simulate_stc_adaptive(
    topology: NetworkTopology,
    snr: SnrPoint,
    rate: RateSpec,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> OutageEstimate:
    """Half-duplex space-time-coded relaying at average rate R.

    The source sends the whole message in slot one at rate 2R. If the
    relay decodes it, slot two is relayed and the destination needs the
    two-slot average; otherwise the destination must decode slot one
    alone at the doubled rate.
    """
    _require_single_relay(topology, "simulate_stc_adaptive")
    spec = ProtocolSpec(scheme="stc_adaptive", topology=topology)
    return _single_point(spec, rate, snr, trials, seed, "stc_adaptive")


def finite_snr_diversity(
    sweep: SweepResult, series: str | None = None
) -> list[tuple[float, float | None]]:
    """Finite-SNR diversity -d ln P / d ln eta along a sweep.

    Central differences inside the grid, one-sided at the ends; points
    whose stencil touches a zero estimate get None.
    """
    name = series if series is not None else sweep.primary
    pts = sweep.points
    log_eta = [pt.eta_db * math.log(10.0) / 10.0 for pt in pts]
    p = [pt.estimates[name].p_hat for pt in pts]
    out: list[tuple[float, float | None]] = []
    for i in range(len(pts)):
        lo = max(0, i - 1)
        hi = min(len(pts) - 1, i + 1)
        if lo == hi or p[lo] <= 0.0 or p[hi] <= 0.0:
            out.append((pts[i].eta_db, None))
            continue
        slope = (math.log(p[hi]) - math.log(p[lo])) / (log_eta[hi] - log_eta[lo])
        out.append((pts[i].eta_db, -slope))
    return out


def realization_for_trial(topology: NetworkTopology, seed: int, t: int) -> ChannelRealization:
    """The exact realization trial t of an experiment with this seed sees."""
    from .channelmodel import sample_realization

    return sample_realization(topology, RngStream(seed, t))
