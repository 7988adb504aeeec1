"""
Coherence Fraction SDK

Coherence fraction of quantum states, and optimal coherence fraction,
cohering and decohering power of quantum channels, with property suites
and parameter sweeps for reproducing the known closed forms.
"""

from coherence_fraction_sdk.chan_analysis import (
    bipartite_ocf,
    closed_form_decohering_power,
    closed_form_ocf,
    cohering_power,
    complementarity_report,
    corrected_closed_form_decohering_power,
    corrected_closed_form_ocf,
    decohering_power,
    errata_report,
    multiplicativity_report,
    optimal_coherence_fraction,
)
from coherence_fraction_sdk.channels import (
    Channel,
    ChannelSpec,
    affine_representation,
    apply,
    make_channel,
    random_channel,
    tensor_channel,
)
from coherence_fraction_sdk.cli import main as cli_main
from coherence_fraction_sdk.config import Config, OptimizerConfig, RunConfig
from coherence_fraction_sdk.core import CoherenceAnalyzer
from coherence_fraction_sdk.fraction import (
    bipartite_coherence_fraction,
    coherence_fraction,
    coherence_fraction_oracle,
    coherence_fraction_upper_bound,
    distillable_coherence_pure_qubit,
    is_coherent_by_fraction,
    local_global_report,
)
from coherence_fraction_sdk.measures import (
    check_phase_alignment,
    l1_coherence,
    relative_entropy_coherence,
)
from coherence_fraction_sdk.models import ChannelKind, FractionResult
from coherence_fraction_sdk.qcore import DensityMatrix, PhaseVector, PureState, make_density_matrix

__version__ = "0.1.0"
__all__ = [
    "CoherenceAnalyzer",
    "Config",
    "OptimizerConfig",
    "RunConfig",
    "DensityMatrix",
    "PureState",
    "PhaseVector",
    "make_density_matrix",
    "FractionResult",
    "ChannelKind",
    "Channel",
    "ChannelSpec",
    "make_channel",
    "apply",
    "affine_representation",
    "tensor_channel",
    "random_channel",
    "l1_coherence",
    "relative_entropy_coherence",
    "check_phase_alignment",
    "coherence_fraction",
    "coherence_fraction_upper_bound",
    "coherence_fraction_oracle",
    "is_coherent_by_fraction",
    "distillable_coherence_pure_qubit",
    "bipartite_coherence_fraction",
    "local_global_report",
    "optimal_coherence_fraction",
    "decohering_power",
    "cohering_power",
    "complementarity_report",
    "closed_form_ocf",
    "closed_form_decohering_power",
    "corrected_closed_form_ocf",
    "corrected_closed_form_decohering_power",
    "errata_report",
    "bipartite_ocf",
    "multiplicativity_report",
    "cli_main",
]
