"""Diversity-multiplexing tradeoff analysis for multi-antenna relay networks.

Analytic tradeoff curves, decode-constraint effectiveness tests, and
Monte-Carlo outage estimation for decode-and-forward relaying protocols
over i.i.d. Rayleigh fading.
"""

from .analyticdmt import (
    DmtCurve,
    EffectivenessReport,
    Schedule,
    cyclic_schedule,
    dblast_schedule,
    direct_halfduplex_dmt,
    effectiveness_dblast,
    effectiveness_fixed,
    effectiveness_stc,
    finite_snr_combiner,
    max_effective_transmit_antennas,
    mimo_dmt,
    stc_dmt,
)
from .capacity import (
    LowSnrCondition,
    c_composite,
    c_cyclic,
    c_direct,
    c_half_duplex_pair,
    c_source_relay,
    decode_constraint_cyclic,
    decode_constraint_fixed,
    decode_constraint_stc,
    low_snr_condition,
    nu_value,
    omega_fixed,
)
from .channelmodel import (
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
from .errors import (
    ConfigurationError,
    ContractError,
    DegenerateConstraintError,
    DomainError,
    NumericError,
    RelayDmtError,
    SchemeError,
    SizeError,
    UndefinedEstimateError,
)
from .matrixcore import (
    ComplexMatrix,
    RngStream,
    hconcat,
    hermitian_eigenvalues,
    logdet_capacity,
    sample_gaussian_matrix,
)
from .montecarlo import (
    OutageEstimate,
    PciResult,
    ProtocolSpec,
    SweepPoint,
    SweepResult,
    bound_adaptive_single,
    estimate_mimo_outage,
    estimate_pc_cyclic,
    estimate_pc_fixed,
    estimate_pc_ors,
    estimate_pci,
    estimate_pnu,
    finite_snr_diversity,
    run_sweep,
    simulate_adaptive_single,
    simulate_cyclic_adaptive,
    simulate_multi_adaptive,
    simulate_multicast,
    simulate_relay_selection,
    simulate_stc_adaptive,
    sweep_pci,
    wilson_interval,
)

__version__ = "0.1.0"
