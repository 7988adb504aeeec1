"""
Analyzer facade bundling a run configuration with the state and channel pipelines.
"""

import logging
from pathlib import Path
from typing import Optional, Union

from coherence_fraction_sdk.chan_analysis import (
    CLOSED_FORM_KINDS,
    closed_form_decohering_power,
    closed_form_ocf,
    cohering_power,
    complementarity_report,
    decohering_power,
    errata_report,
    optimal_coherence_fraction,
)
from coherence_fraction_sdk.channels import Channel, ChannelSpec
from coherence_fraction_sdk.config import RunConfig
from coherence_fraction_sdk.fraction import coherence_fraction, coherence_fraction_upper_bound, distillable_coherence_pure_qubit
from coherence_fraction_sdk.measures import check_phase_alignment, l1_coherence, relative_entropy_coherence
from coherence_fraction_sdk.models import ChannelReport, ErrataReport, StateReport
from coherence_fraction_sdk.qcore import DensityMatrix, purity
from coherence_fraction_sdk.utils.serialization import load_channel, load_state

# Purity above 1 - PURE_STATE_SLACK counts as a pure state
PURE_STATE_SLACK = 1e-9


class CoherenceAnalyzer:
    """
    Main analyzer class producing the reports printed by the command line.
    """

    def __init__(self, config: Optional[RunConfig] = None):
        """
        Initialize the analyzer.

        Args:
            config: optimizer and output settings (default: RunConfig())
        """
        self.config = config or RunConfig()
        self.logger = logging.getLogger(__name__)

    @property
    def optimizer(self):
        return self.config.optimizer

    def analyze_state(self, rho: DensityMatrix) -> StateReport:
        """
        Coherence fraction of a state together with its bound and measures.

        Args:
            rho: validated density matrix

        Returns:
            StateReport; distillable coherence is filled for qubits only
        """
        self.logger.info(f"Analyzing d={rho.dim} state")
        result = coherence_fraction(rho, self.optimizer)
        alignment = check_phase_alignment(rho)
        entropy_coherence = relative_entropy_coherence(rho)

        distillable = None
        if rho.dim == 2:
            if purity(rho) > 1.0 - PURE_STATE_SLACK:
                distillable = distillable_coherence_pure_qubit(result.value)
            else:
                distillable = entropy_coherence

        return StateReport(
            dim=rho.dim,
            value=result.value,
            argmax_phases=result.argmax_phases,
            upper_bound=coherence_fraction_upper_bound(rho),
            l1_coherence=l1_coherence(rho),
            relative_entropy_coherence=entropy_coherence,
            aligned=alignment.aligned,
            converged=result.converged,
            distillable_coherence=distillable,
        )

    def analyze_state_file(self, file_path: Union[str, Path]) -> StateReport:
        self.logger.info(f"Reading state file: {file_path}")
        return self.analyze_state(load_state(file_path))

    def analyze_channel(self, channel: Channel) -> ChannelReport:
        """
        Optimal coherence fraction, both powers and, for qubits, the 2F + D
        relation; named families are compared against their closed forms.
        """
        self.logger.info(f"Analyzing d={channel.dim} channel ({channel.kind.value if channel.kind else 'raw'})")
        ocf = optimal_coherence_fraction(channel, self.optimizer)
        decohering = decohering_power(channel, self.optimizer).value
        cohering = cohering_power(channel, self.optimizer).value

        report = ChannelReport(
            dim=channel.dim,
            kind=channel.kind,
            ocf=ocf.value,
            decohering_power=decohering,
            cohering_power=cohering,
            converged=ocf.converged,
        )
        if channel.dim == 2:
            complementarity = complementarity_report(channel, self.optimizer)
            report.total = complementarity.total
            report.bounds_hold = complementarity.bounds_hold
        if channel.spec is not None and channel.kind in CLOSED_FORM_KINDS:
            report.closed_form_ocf = closed_form_ocf(channel.spec)
            report.closed_form_decohering = closed_form_decohering_power(channel.spec)
            report.ocf_gap = report.ocf - report.closed_form_ocf
            report.decohering_gap = report.decohering_power - report.closed_form_decohering
        return report

    def analyze_channel_file(self, file_path: Union[str, Path]) -> ChannelReport:
        self.logger.info(f"Reading channel file: {file_path}")
        return self.analyze_channel(load_channel(file_path))

    def errata(self, spec: ChannelSpec) -> ErrataReport:
        return errata_report(spec, self.optimizer)
