"""
CPTP channels in Kraus form, the named qubit channel families, and the
affine (Bloch) representation of qubit channels.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from coherence_fraction_sdk.config import Config
from coherence_fraction_sdk.errors import (
    DimensionMismatch,
    IncompleteKraus,
    ParamOutOfRange,
    UnsupportedKind,
    ValidationError,
    ValidationFailed,
)
from coherence_fraction_sdk.models import ChannelKind
from coherence_fraction_sdk.qcore import DensityMatrix, make_density_matrix

logger = logging.getLogger(__name__)

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# Admissible parameter intervals of the named families
PARAM_RANGES: Dict[ChannelKind, Dict[str, Tuple[float, float]]] = {
    ChannelKind.UNITARY: {"angle": (-np.pi, np.pi)},
    ChannelKind.DEPOLARIZING: {"p": (0.0, 1.0)},
    ChannelKind.BIT_FLIP: {"p": (0.0, 1.0)},
    ChannelKind.GAD: {"p": (0.0, 1.0), "gamma": (0.0, 1.0)},
    ChannelKind.SELF_COMPLEMENTARY: {"theta": (0.0, np.pi), "phi": (0.0, 2.0 * np.pi)},
}


@dataclass(frozen=True)
class ChannelSpec:
    """Named channel family with its parameters."""

    kind: ChannelKind
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", ChannelKind(self.kind))
        self.validate()

    def validate(self) -> None:
        """Raise ParamOutOfRange for a missing or out-of-interval parameter."""
        for name, (low, high) in PARAM_RANGES.get(self.kind, {}).items():
            if name not in self.params:
                raise ParamOutOfRange(f"{self.kind.value} channel needs parameter '{name}'")
            value = float(self.params[name])
            if not low <= value <= high:
                raise ParamOutOfRange(f"{self.kind.value} parameter {name}={value} outside [{low}, {high}]")
        if self.kind == ChannelKind.UNITARY:
            axis = np.asarray(self.params.get("axis", ()), dtype=float)
            if axis.shape != (3,):
                raise ParamOutOfRange(f"unitary axis must be a 3-vector, got {self.params.get('axis')}")
            norm_error = abs(np.linalg.norm(axis) - 1.0)
            if norm_error > Config.STATE_TOL:
                raise ParamOutOfRange(f"unitary axis must have unit norm (off by {norm_error:.3e})")

    def get(self, name: str, default: Any = None) -> Any:
        return self.params.get(name, default)


@dataclass(frozen=True, eq=False)
class Channel:
    """CPTP map given by a finite Kraus list."""

    dim: int
    kraus_ops: np.ndarray
    spec: Optional[ChannelSpec] = None

    def __post_init__(self):
        ops = np.array(self.kraus_ops, dtype=complex)
        if ops.ndim == 2:
            ops = ops[np.newaxis]
        if ops.ndim != 3 or ops.shape[1:] != (self.dim, self.dim):
            raise DimensionMismatch(f"Kraus operators must be {self.dim}x{self.dim}, got shape {ops.shape}")
        ops.setflags(write=False)
        object.__setattr__(self, "kraus_ops", ops)
        deviation = completeness_error(ops)
        if deviation > Config.KRAUS_TOL:
            raise IncompleteKraus(deviation)

    @property
    def kind(self) -> Optional[ChannelKind]:
        return self.spec.kind if self.spec is not None else None


def completeness_error(kraus_ops: np.ndarray) -> float:
    """max |sum K^dagger K - I| entrywise."""
    total = np.einsum("nji,njk->ik", kraus_ops.conj(), kraus_ops)
    return float(np.max(np.abs(total - np.eye(kraus_ops.shape[1]))))


def kraus_action(kraus_ops: np.ndarray, operator: np.ndarray) -> np.ndarray:
    """sum_n K_n X K_n^dagger on an arbitrary operator X."""
    return np.einsum("nij,jk,nlk->il", kraus_ops, operator, kraus_ops.conj())


def adjoint_action(kraus_ops: np.ndarray, operator: np.ndarray) -> np.ndarray:
    """sum_n K_n^dagger X K_n, the Heisenberg-picture dual."""
    return np.einsum("nji,jk,nkl->il", kraus_ops.conj(), operator, kraus_ops)


def _unitary_kraus(axis: Sequence[float], angle: float) -> np.ndarray:
    n_dot_sigma = sum(component * pauli for component, pauli in zip(axis, PAULIS))
    # exp(i (phi/2) n.sigma) = cos(phi/2) I + i sin(phi/2) n.sigma
    return np.array([np.cos(angle / 2) * IDENTITY_2 + 1j * np.sin(angle / 2) * n_dot_sigma])


def _depolarizing_kraus(p: float) -> np.ndarray:
    return np.array(
        [np.sqrt(1 - 3 * p / 4) * IDENTITY_2]
        + [np.sqrt(p / 4) * pauli for pauli in PAULIS]
    )


def _bit_flip_kraus(p: float) -> np.ndarray:
    return np.array([np.sqrt(1 - p) * IDENTITY_2, np.sqrt(p) * SIGMA_X])


def _gad_kraus(p: float, gamma: float) -> np.ndarray:
    return np.array([
        np.sqrt(gamma) * np.array([[1, 0], [0, np.sqrt(1 - p)]]),
        np.sqrt(gamma) * np.array([[0, np.sqrt(p)], [0, 0]]),
        np.sqrt(1 - gamma) * np.array([[np.sqrt(1 - p), 0], [0, 1]]),
        np.sqrt(1 - gamma) * np.array([[0, 0], [np.sqrt(p), 0]]),
    ], dtype=complex)


def _self_complementary_kraus(theta: float, phi: float) -> np.ndarray:
    leak = np.sin(theta) / np.sqrt(2)
    return np.array([
        [[1, 0], [0, leak]],
        [[0, leak], [0, np.exp(1j * phi) * np.cos(theta)]],
    ], dtype=complex)


def make_channel(source: Union[ChannelSpec, Sequence[np.ndarray], np.ndarray], dim: Optional[int] = None) -> Channel:
    """
    Build a channel from a named spec or from a raw Kraus list.

    Args:
        source: ChannelSpec or list of square Kraus matrices
        dim: dimension of the identity channel (ignored otherwise)

    Returns:
        Channel with canonical Kraus operators

    Raises:
        ParamOutOfRange: parameters outside their interval
        IncompleteKraus: sum K^dagger K deviates from I beyond tolerance
    """
    if not isinstance(source, ChannelSpec):
        ops = np.array(source, dtype=complex)
        if ops.ndim == 2:
            ops = ops[np.newaxis]
        if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
            raise DimensionMismatch(f"Kraus list must hold square matrices, got shape {ops.shape}")
        spec = ChannelSpec(ChannelKind.KRAUS, {"dim": ops.shape[1]})
        return Channel(dim=ops.shape[1], kraus_ops=ops, spec=spec)

    spec = source
    kind = spec.kind
    if kind == ChannelKind.UNITARY:
        ops = _unitary_kraus(spec.params["axis"], float(spec.params["angle"]))
    elif kind == ChannelKind.DEPOLARIZING:
        ops = _depolarizing_kraus(float(spec.params["p"]))
    elif kind == ChannelKind.BIT_FLIP:
        ops = _bit_flip_kraus(float(spec.params["p"]))
    elif kind == ChannelKind.GAD:
        ops = _gad_kraus(float(spec.params["p"]), float(spec.params["gamma"]))
    elif kind == ChannelKind.SELF_COMPLEMENTARY:
        ops = _self_complementary_kraus(float(spec.params["theta"]), float(spec.params["phi"]))
    elif kind == ChannelKind.IDENTITY:
        size = int(spec.params.get("dim", dim or 2))
        ops = np.eye(size, dtype=complex)[np.newaxis]
    elif kind == ChannelKind.KRAUS:
        if "ops" not in spec.params:
            raise UnsupportedKind("a kraus spec must carry its operators under 'ops'")
        channel = make_channel(spec.params["ops"])
        return Channel(dim=channel.dim, kraus_ops=channel.kraus_ops, spec=spec)
    else:
        raise UnsupportedKind(f"unknown channel kind {kind}")
    return Channel(dim=ops.shape[1], kraus_ops=ops, spec=spec)


def identity_channel(dim: int = 2) -> Channel:
    return make_channel(ChannelSpec(ChannelKind.IDENTITY, {"dim": dim}))


def depolarizing(p: float) -> Channel:
    return make_channel(ChannelSpec(ChannelKind.DEPOLARIZING, {"p": p}))


def bit_flip(p: float) -> Channel:
    return make_channel(ChannelSpec(ChannelKind.BIT_FLIP, {"p": p}))


def gad(p: float, gamma: float) -> Channel:
    return make_channel(ChannelSpec(ChannelKind.GAD, {"p": p, "gamma": gamma}))


def amplitude_damping(p: float) -> Channel:
    """Generalized amplitude damping with gamma = 1."""
    return gad(p, 1.0)


def phase_flip(p: float) -> Channel:
    """Z with probability p, built as a raw Kraus channel."""
    if not 0.0 <= p <= 1.0:
        raise ParamOutOfRange(f"phase flip probability must lie in [0, 1], got {p}")
    return make_channel([np.sqrt(1 - p) * IDENTITY_2, np.sqrt(p) * SIGMA_Z])


def unitary(axis: Sequence[float], angle: float) -> Channel:
    return make_channel(ChannelSpec(ChannelKind.UNITARY, {"axis": list(axis), "angle": angle}))


def self_complementary(theta: float, phi: float = 0.0) -> Channel:
    return make_channel(ChannelSpec(ChannelKind.SELF_COMPLEMENTARY, {"theta": theta, "phi": phi}))


def apply(channel: Channel, rho: DensityMatrix) -> DensityMatrix:
    """
    Kraus sum of the channel on a state, re-validated as a density matrix.

    Raises:
        DimensionMismatch: channel and state dimensions differ
        ValidationFailed: the output is not a valid state
    """
    if channel.dim != rho.dim:
        raise DimensionMismatch(f"channel acts on d={channel.dim}, state has d={rho.dim}")
    try:
        return make_density_matrix(kraus_action(channel.kraus_ops, rho.matrix))
    except ValidationError as error:
        raise ValidationFailed(error) from error


@dataclass(frozen=True, eq=False)
class AffineRep:
    """Lambda(rho) = (I + (t + T v).sigma) / 2 for rho = (I + v.sigma) / 2."""

    t: np.ndarray
    T: np.ndarray

    @property
    def is_unital(self) -> bool:
        return bool(np.linalg.norm(self.t) <= Config.KRAUS_TOL)

    def to_dict(self) -> dict:
        return {"t": self.t.tolist(), "T": self.T.tolist()}


def bloch_vector(operator: np.ndarray) -> np.ndarray:
    return np.array([np.real(np.trace(pauli @ operator)) for pauli in PAULIS])


def _require_qubit_channel(channel: Channel) -> None:
    if channel.dim != 2:
        raise DimensionMismatch(f"expected a qubit channel, got d={channel.dim}")


def affine_representation(channel: Channel) -> AffineRep:
    """t is the Bloch vector of Lambda(I/2); column j of T is Bloch(Lambda((I + sigma_j)/2)) - t."""
    _require_qubit_channel(channel)
    t = bloch_vector(kraus_action(channel.kraus_ops, IDENTITY_2 / 2))
    columns = [bloch_vector(kraus_action(channel.kraus_ops, (IDENTITY_2 + pauli) / 2)) - t for pauli in PAULIS]
    return AffineRep(t=t, T=np.column_stack(columns))


def from_affine(rep: AffineRep, rho: DensityMatrix) -> DensityMatrix:
    """Rebuild Lambda(rho) from its affine representation."""
    if rho.dim != 2:
        raise DimensionMismatch(f"affine form acts on qubits, got d={rho.dim}")
    image = rep.t + rep.T @ bloch_vector(rho.matrix)
    return DensityMatrix((IDENTITY_2 + sum(c * pauli for c, pauli in zip(image, PAULIS))) / 2)


def preserves_incoherence(channel: Channel, tol: float = Config.KRAUS_TOL) -> bool:
    """Diagonal states map to diagonal states iff t1 = t2 = 0 and T13 = T23 = 0."""
    rep = affine_representation(channel)
    entries = np.array([rep.t[0], rep.t[1], rep.T[0, 2], rep.T[1, 2]])
    return bool(np.all(np.abs(entries) <= tol))


def tensor_channel(first: Channel, second: Channel) -> Channel:
    """Channel on the product space with all pairwise Kronecker products as Kraus operators."""
    ops = np.array([np.kron(a, b) for a in first.kraus_ops for b in second.kraus_ops])
    return Channel(dim=first.dim * second.dim, kraus_ops=ops)


def random_channel(d: int, env_dim: int, seed: int) -> Channel:
    """
    Channel from a Haar-random isometry V: C^d -> C^d (x) C^env_dim.

    V comes from the QR decomposition of a seeded complex Gaussian matrix with
    the phases of R's diagonal folded back into Q; K_e = (I (x) <e|) V.
    """
    if env_dim < 1:
        raise ParamOutOfRange(f"env_dim must be >= 1, got {env_dim}")
    rng = np.random.default_rng(seed)
    gaussian = rng.standard_normal((d * env_dim, d)) + 1j * rng.standard_normal((d * env_dim, d))
    q, r = np.linalg.qr(gaussian)
    diagonal = np.diag(r)
    q = q * (diagonal / np.abs(diagonal))
    ops = q.reshape(d, env_dim, d).transpose(1, 0, 2)
    spec = ChannelSpec(ChannelKind.KRAUS, {"dim": d, "env_dim": env_dim, "seed": seed})
    return Channel(dim=d, kraus_ops=ops, spec=spec)


def spec_params(spec: Optional[ChannelSpec]) -> Dict[str, Any]:
    """Plain parameters of a spec (without Kraus matrices) for reports."""
    if spec is None:
        return {}
    return {key: value for key, value in spec.params.items() if key != "ops"}
