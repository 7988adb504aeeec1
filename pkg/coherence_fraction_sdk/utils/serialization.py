"""
Readers and writers for the state and channel JSON files.

State files hold `{"dim": d, "matrix": [[[re, im], ...], ...]}` in row-major
order. Channel files name a family (`{"kind": "gad", "p": 0.2, "gamma": 1.0}`)
or carry raw Kraus operators (`{"kind": "kraus", "dim": 2, "ops": [...]}`)
with each operator in the same entry format as a state matrix.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from coherence_fraction_sdk.channels import Channel, ChannelSpec, make_channel
from coherence_fraction_sdk.errors import OutputError, ParseError
from coherence_fraction_sdk.models import ChannelKind
from coherence_fraction_sdk.qcore import DensityMatrix, make_density_matrix


def matrix_from_entries(entries: Any, dim: Optional[int] = None) -> np.ndarray:
    """
    Decode a nested list of [re, im] pairs into a complex matrix.

    Raises:
        ParseError: ragged rows, malformed pairs, or a shape that disagrees with dim
    """
    try:
        array = np.array(entries, dtype=float)
    except (TypeError, ValueError) as e:
        raise ParseError(f"matrix entries must be nested [re, im] pairs: {e}")
    if array.ndim != 3 or array.shape[2] != 2:
        raise ParseError(f"matrix entries must have shape (d, d, 2), got {array.shape}")
    if dim is not None and array.shape[:2] != (dim, dim):
        raise ParseError(f"declared dim {dim} but matrix is {array.shape[0]}x{array.shape[1]}")
    return array[..., 0] + 1j * array[..., 1]


def matrix_to_entries(matrix: np.ndarray) -> List[List[List[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix)]


def density_to_dict(rho: DensityMatrix) -> Dict[str, Any]:
    return {"dim": rho.dim, "matrix": matrix_to_entries(rho.matrix)}


def density_from_dict(data: Dict[str, Any]) -> DensityMatrix:
    """Build a validated state; validation errors propagate with their invariant name."""
    if not isinstance(data, dict) or "matrix" not in data:
        raise ParseError("state JSON needs a 'matrix' field")
    dim = data.get("dim")
    if dim is not None and (not isinstance(dim, int) or dim < 1):
        raise ParseError(f"'dim' must be a positive integer, got {dim!r}")
    return make_density_matrix(matrix_from_entries(data["matrix"], dim))


def channel_to_dict(channel: Channel) -> Dict[str, Any]:
    """Named channels keep their parameters; anything else is written as raw Kraus operators."""
    spec = channel.spec
    if spec is not None and spec.kind not in (ChannelKind.KRAUS,):
        return {"kind": spec.kind.value, **spec.params}
    return {
        "kind": ChannelKind.KRAUS.value,
        "dim": channel.dim,
        "ops": [matrix_to_entries(op) for op in channel.kraus_ops],
    }


def channel_spec_from_dict(data: Dict[str, Any]) -> ChannelSpec:
    """
    Parse a channel description into a ChannelSpec.

    Raises:
        ParseError: missing or unknown kind, malformed operators
        ParamOutOfRange: parameters outside their interval
    """
    if not isinstance(data, dict) or "kind" not in data:
        raise ParseError("channel JSON needs a 'kind' field")
    try:
        kind = ChannelKind(data["kind"])
    except ValueError:
        known = ", ".join(k.value for k in ChannelKind)
        raise ParseError(f"unknown channel kind {data['kind']!r} (expected one of {known})")

    params = {key: value for key, value in data.items() if key != "kind"}
    if kind == ChannelKind.KRAUS:
        if "ops" not in params or not isinstance(params["ops"], list) or not params["ops"]:
            raise ParseError("a kraus channel needs a non-empty 'ops' list")
        params["ops"] = [matrix_from_entries(op, params.get("dim")) for op in params["ops"]]
    return ChannelSpec(kind, params)


def channel_from_dict(data: Dict[str, Any]) -> Channel:
    return make_channel(channel_spec_from_dict(data))


def _read_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    if not path.exists():
        raise ParseError(f"file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}")


def load_state(path: Union[str, Path]) -> DensityMatrix:
    return density_from_dict(_read_json(path))


def load_channel(path: Union[str, Path]) -> Channel:
    return channel_from_dict(_read_json(path))


def save_json(data: Any, output_path: Union[str, Path]) -> None:
    """
    Write JSON data to a file.

    Raises:
        OutputError: when the path cannot be written
    """
    try:
        with open(output_path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2)
    except OSError as e:
        raise OutputError(f"Failed to write output file {output_path}: {e}")


def save_state(rho: DensityMatrix, output_path: Union[str, Path]) -> None:
    save_json(density_to_dict(rho), output_path)


def save_channel(channel: Channel, output_path: Union[str, Path]) -> None:
    save_json(channel_to_dict(channel), output_path)
