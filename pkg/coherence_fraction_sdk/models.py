"""
Data models for coherence fraction results and reports.
"""

from dataclasses import dataclass, field, fields
from enum import Enum
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple

if TYPE_CHECKING:
    from coherence_fraction_sdk.qcore import PhaseVector, PureState


class Subsystem(Enum):
    """Which factor of a bipartite state to keep."""
    FIRST = "first"
    SECOND = "second"


class ChannelKind(Enum):
    """Enumeration for channel families."""
    UNITARY = "unitary"
    DEPOLARIZING = "depolarizing"
    BIT_FLIP = "bit_flip"
    GAD = "gad"
    SELF_COMPLEMENTARY = "self_complementary"
    KRAUS = "kraus"
    IDENTITY = "identity"


class ChannelMethod(Enum):
    """How a channel quantity was computed."""
    QUBIT_THEOREM3 = "qubit_theorem3"
    GENERAL_SEARCH = "general_search"


class SweepSides(Enum):
    """Which sides of a two-qubit system the swept channel acts on."""
    ONE_SIDED = "one_sided"
    TWO_SIDED = "two_sided"
    CROSS = "cross"


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"


class VerifySuite(Enum):
    """Named property suites run by the verify command."""
    THEOREM1 = "theorem1"
    THEOREM2 = "theorem2"
    THEOREM3 = "theorem3"
    THEOREM4 = "theorem4"
    THEOREM5 = "theorem5"
    ORACLE = "oracle"
    INVARIANCE = "invariance"
    SUBADDITIVITY_L1 = "subadditivity_l1"
    BIPARTITE_OBSERVATIONS = "bipartite_observations"


def _plain(value: Any) -> Any:
    """Convert a result field into JSON-friendly data."""
    if isinstance(value, Enum):
        return value.value
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    return value


class _Serializable:
    def to_dict(self) -> Dict[str, Any]:
        return {f.name: _plain(getattr(self, f.name)) for f in fields(self)}


@dataclass
class AlignmentReport(_Serializable):
    """Outcome of the phase alignment test."""
    aligned: bool
    witness: Optional["PhaseVector"] = None
    worst_violation: float = 0.0


@dataclass
class FractionResult(_Serializable):
    """Coherence fraction of a state together with its maximizing phases."""
    value: float
    argmax_phases: "PhaseVector"
    iterations_used: int
    converged: bool
    restart_index: int = 0
    objective_trace: Tuple[float, ...] = ()


@dataclass
class ChannelFractionResult(_Serializable):
    """Optimal coherence fraction of a channel."""
    value: float
    argmax_input: "PureState"
    argmax_phases: "PhaseVector"
    method: ChannelMethod
    converged: bool = True


@dataclass
class PowerResult(_Serializable):
    """Cohering or decohering power with the method that produced it."""
    value: float
    method: ChannelMethod
    argopt: Tuple[float, ...] = ()


@dataclass
class ComplementarityReport(_Serializable):
    """Both sides of 2 <= 2F + D <= 3 for a qubit channel."""
    ocf: float
    decohering_power: float
    total: float
    k: float
    bounds_hold: bool


@dataclass
class LocalGlobalReport(_Serializable):
    """Local coherence fractions against the global one of a two-qubit state."""
    f_ab: float
    f_a: float
    f_b: float
    lhs: float
    rhs: float
    holds: bool


@dataclass
class MultiplicativityReport(_Serializable):
    """Measured gap of F(L1 x L2) against F(L1 x I) * F(I x L2)."""
    lhs: float
    rhs: float
    gap: float
    first_with_identity: float
    identity_with_second: float


@dataclass
class ErrataReport(_Serializable):
    """Printed closed forms compared with corrected forms and numerics."""
    kind: ChannelKind
    params: Dict[str, Any]
    printed_ocf: float
    corrected_ocf: float
    numeric_ocf: float
    printed_decohering: float
    corrected_decohering: float
    numeric_decohering: float
    unrestricted_ocf: Optional[float] = None
    reduction_ocf: Optional[float] = None

    @property
    def ocf_gap(self) -> float:
        return self.numeric_ocf - self.printed_ocf

    @property
    def decohering_gap(self) -> float:
        return self.numeric_decohering - self.printed_decohering

    def matches_printed(self, tol: float = 1e-4) -> bool:
        return abs(self.ocf_gap) <= tol and abs(self.decohering_gap) <= tol


@dataclass
class StateReport(_Serializable):
    """Everything the fraction command prints for one state."""
    dim: int
    value: float
    argmax_phases: "PhaseVector"
    upper_bound: float
    l1_coherence: float
    relative_entropy_coherence: float
    aligned: bool
    converged: bool
    distillable_coherence: Optional[float] = None


@dataclass
class ChannelReport(_Serializable):
    """Everything the channel command prints for one channel."""
    dim: int
    kind: Optional[ChannelKind]
    ocf: float
    decohering_power: float
    cohering_power: float
    total: Optional[float] = None
    bounds_hold: Optional[bool] = None
    closed_form_ocf: Optional[float] = None
    closed_form_decohering: Optional[float] = None
    ocf_gap: Optional[float] = None
    decohering_gap: Optional[float] = None
    converged: bool = True


@dataclass
class SweepSpec:
    """A one- or two-parameter channel sweep."""
    kind: ChannelKind
    param: str
    start: float
    stop: float
    step: float
    sides: SweepSides = SweepSides.TWO_SIDED
    fixed: Dict[str, Any] = field(default_factory=dict)
    kind2: Optional[ChannelKind] = None
    param2: Optional[str] = None
    start2: Optional[float] = None
    stop2: Optional[float] = None
    step2: Optional[float] = None
    fixed2: Dict[str, Any] = field(default_factory=dict)


@dataclass
class SweepTable:
    """Header and rows of a sweep, in ascending parameter order."""
    columns: List[str]
    rows: List[List[Optional[float]]]


@dataclass
class PropertyFailure(_Serializable):
    """One violated property instance with the data needed to reproduce it."""
    description: str
    gap: float
    payload: Dict[str, Any] = field(default_factory=dict)


@dataclass
class SuiteResult(_Serializable):
    """Summary of one property suite run."""
    name: str
    checked: int
    failures: List[PropertyFailure] = field(default_factory=list)
    max_gap: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures
