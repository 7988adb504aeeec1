"""
Channel-parameter sweeps of the two-qubit optimal coherence fraction.

Single-channel sweeps apply the channel to one qubit (one-sided) and, for
two-sided sweeps, to both qubits; cross sweeps apply one family to each
qubit over a product grid. Tables are written as CSV or JSON with a fixed
number of significant digits so that equal seeds give identical files.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from coherence_fraction_sdk.chan_analysis import CLOSED_FORM_KINDS, bipartite_ocf, closed_form_ocf, errata_report
from coherence_fraction_sdk.channels import Channel, ChannelSpec, identity_channel, make_channel
from coherence_fraction_sdk.config import Config, OptimizerConfig
from coherence_fraction_sdk.errors import OutOfRange, OutputError
from coherence_fraction_sdk.models import ChannelKind, OutputFormat, SweepSides, SweepSpec, SweepTable

logger = logging.getLogger(__name__)

SINGLE_COLUMNS = ["param", "ocf_one_sided", "ocf_two_sided", "closed_form"]
CROSS_COLUMNS = ["p", "q", "ocf"]

# Parameters a sweep leaves fixed unless told otherwise
DEFAULT_PARAMS: Dict[ChannelKind, Dict[str, Any]] = {
    ChannelKind.GAD: {"gamma": 1.0},
    ChannelKind.UNITARY: {"axis": [1.0, 0.0, 0.0]},
    ChannelKind.SELF_COMPLEMENTARY: {"phi": 0.0},
}


def sweep_values(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive grid start, start + step, ... up to stop."""
    if not step > 0:
        raise OutOfRange(f"sweep step must be > 0, got {step}")
    if start > stop:
        raise OutOfRange(f"sweep start {start} exceeds stop {stop}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


def _channel(kind: ChannelKind, param: str, value: float, fixed: Dict[str, Any]) -> Channel:
    params = {**DEFAULT_PARAMS.get(kind, {}), **fixed, param: float(value)}
    return make_channel(ChannelSpec(kind, params))


def _closed_form(channel: Channel) -> Optional[float]:
    if channel.kind in CLOSED_FORM_KINDS:
        return closed_form_ocf(channel.spec)
    return None


def run_sweep(spec: SweepSpec, cfg: Optional[OptimizerConfig] = None) -> SweepTable:
    """
    Evaluate a sweep.

    Returns:
        SweepTable with rows in ascending parameter order; for one-sided
        sweeps the two-sided column stays empty
    """
    cfg = cfg or OptimizerConfig()
    identity = identity_channel(2)

    if spec.sides == SweepSides.CROSS:
        if spec.kind2 is None or spec.param2 is None or spec.start2 is None or spec.stop2 is None or spec.step2 is None:
            raise OutOfRange("a cross sweep needs kind2, param2, start2, stop2 and step2")
        rows: List[List[Optional[float]]] = []
        for p in sweep_values(spec.start, spec.stop, spec.step):
            first = _channel(spec.kind, spec.param, p, spec.fixed)
            for q in sweep_values(spec.start2, spec.stop2, spec.step2):
                second = _channel(spec.kind2, spec.param2, q, spec.fixed2)
                value = bipartite_ocf(first, second, cfg).value
                logger.info(f"{spec.kind.value}({p}) x {spec.kind2.value}({q}): {value:.9f}")
                rows.append([float(p), float(q), value])
        return SweepTable(columns=list(CROSS_COLUMNS), rows=rows)

    rows = []
    for value in sweep_values(spec.start, spec.stop, spec.step):
        channel = _channel(spec.kind, spec.param, value, spec.fixed)
        one_sided = bipartite_ocf(channel, identity, cfg).value
        two_sided = bipartite_ocf(channel, channel, cfg).value if spec.sides == SweepSides.TWO_SIDED else None
        logger.info(f"{spec.kind.value} {spec.param}={value}: one-sided {one_sided:.9f}, two-sided {two_sided}")
        rows.append([float(value), one_sided, two_sided, _closed_form(channel)])
    return SweepTable(columns=list(SINGLE_COLUMNS), rows=rows)


def _format(value: Optional[float], precision: int) -> str:
    return "" if value is None else f"{value:.{precision}g}"


def write_table(
    table: SweepTable,
    output_path: Union[str, Path],
    output_format: OutputFormat = OutputFormat.CSV,
    precision: int = Config.DEFAULT_PRECISION,
) -> None:
    """
    Write a sweep table with `precision` significant digits.

    Raises:
        OutputError: when the path cannot be written
    """
    output_format = OutputFormat(output_format)
    try:
        with open(output_path, "w", encoding="utf-8", newline="") as f:
            if output_format == OutputFormat.CSV:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(table.columns)
                for row in table.rows:
                    writer.writerow([_format(value, precision) for value in row])
            else:
                rows = [[None if v is None else float(_format(v, precision)) for v in row] for row in table.rows]
                json.dump({"columns": table.columns, "rows": rows}, f, indent=2)
    except OSError as e:
        raise OutputError(f"Failed to write sweep table {output_path}: {e}")
    logger.info(f"Sweep table saved to: {output_path}")


# Axes sampled by the unitary errata grid
ERRATA_AXES = (
    (1.0, 0.0, 0.0),
    (0.0, 1.0, 0.0),
    (0.0, 0.0, 1.0),
    (1.0 / np.sqrt(2.0), 0.0, 1.0 / np.sqrt(2.0)),
    (1.0 / np.sqrt(3.0), 1.0 / np.sqrt(3.0), 1.0 / np.sqrt(3.0)),
)
ERRATA_VALUE_COLUMNS = [
    "printed_ocf",
    "corrected_ocf",
    "numeric_ocf",
    "unrestricted_ocf",
    "reduction_ocf",
    "printed_decohering",
    "corrected_decohering",
    "numeric_decohering",
]


def run_errata(kind: ChannelKind, cfg: Optional[OptimizerConfig] = None, points: int = 9) -> SweepTable:
    """
    Printed closed forms against corrected forms and numerics over a parameter grid.

    Self-complementary channels are swept over theta in [0, pi]; unitaries over
    a fixed set of axes times `points` angles in [-pi, pi].
    """
    kind = ChannelKind(kind)
    if kind == ChannelKind.SELF_COMPLEMENTARY:
        columns = ["theta"]
        grid = [([t], {"theta": float(t), "phi": 0.0}) for t in np.linspace(0.0, np.pi, points)]
    elif kind == ChannelKind.UNITARY:
        columns = ["n1", "n2", "n3", "angle"]
        grid = [
            ([*axis, angle], {"axis": list(axis), "angle": float(angle)})
            for axis in ERRATA_AXES
            for angle in np.linspace(-np.pi, np.pi, points)
        ]
    else:
        columns = ["p"]
        grid = [([p], {**DEFAULT_PARAMS.get(kind, {}), "p": float(p)}) for p in np.linspace(0.0, 1.0, points)]

    rows: List[List[Optional[float]]] = []
    for keys, params in grid:
        report = errata_report(ChannelSpec(kind, params), cfg)
        rows.append([float(k) for k in keys] + [
            report.printed_ocf,
            report.corrected_ocf,
            report.numeric_ocf,
            report.unrestricted_ocf,
            report.reduction_ocf,
            report.printed_decohering,
            report.corrected_decohering,
            report.numeric_decohering,
        ])
    return SweepTable(columns=columns + ERRATA_VALUE_COLUMNS, rows=rows)
