from __future__ import annotations

from enum import Enum
from typing import FrozenSet, Optional, Tuple

from pydantic import Field

from .base import LabModel
from .experiment import ExperimentSpec


class ViolationKind(Enum):
    ROW_SUM = 'row_sum'
    NEGATIVE = 'negative_probability'
    OUT_OF_RANGE = 'probability_out_of_range'
    ORPHAN_ROW = 'orphan_row'
    MISSING_ROW = 'missing_row'
    NO_LEGAL_ACTION = 'no_legal_action'
    CLOSURE = 'successor_outside_index'
    UNREACHABLE = 'unreachable_state'
    INDEX = 'inconsistent_index'


class Violation(LabModel):
    """
    A single broken MDP invariant.

    Attributes:
        kind: Which invariant is broken
        state: Offending state id, if the violation is tied to one
        action: Offending action id, if the violation is tied to a row
        detail: Human-readable description
    """
    kind: ViolationKind
    state: Optional[int] = None
    action: Optional[int] = None
    detail: str = ''


class ValidationReport(LabModel):
    """Every invariant violation found in an MDP; empty when the MDP is sound."""
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __len__(self) -> int:
        return len(self.violations)

    def of_kind(self, kind: ViolationKind) -> Tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.kind is kind)

    def summary(self) -> str:
        if self.ok:
            return 'MDP valid: no violations'
        lines = [f"MDP invalid: {len(self.violations)} violation(s)"]
        lines.extend(
            f"  {v.kind.value} state={v.state} action={v.action}: {v.detail}"
            for v in self.violations
        )
        return '\n'.join(lines)


class CurvePoint(LabModel):
    """Population statistics at one evaluation checkpoint."""
    episode: int = Field(..., ge=1, description='Training episodes completed.')
    mean_return: float = Field(..., description='Mean test return across agents.')
    std_return: float = Field(..., ge=0.0, description='Population std (ddof=0) across agents.')
    n_agents: int = Field(..., ge=1)


class AgentFinal(LabModel):
    """Final evaluation of one agent."""
    agent_index: int = Field(..., ge=0)
    seed: int = Field(..., description='Root seed of the agent streams.')
    final_return: float


class RunResult(LabModel):
    """
    Outcome of one population run.

    Attributes:
        spec: The experiment that produced the result
        curve: One point per checkpoint
        per_agent_final: Last checkpoint's mean test return per agent
        per_agent_curves: Every agent's checkpoint returns, agent-major
        visited_union: Union of visited (state, action) pairs over the population
        universe_size: Number of legal (state, action) pairs of the shared index
        fingerprint: Fingerprint of ``spec``
    """
    spec: ExperimentSpec
    curve: Tuple[CurvePoint, ...]
    per_agent_final: Tuple[AgentFinal, ...]
    per_agent_curves: Tuple[Tuple[float, ...], ...] = ()
    visited_union: FrozenSet[Tuple[int, int]] = frozenset()
    universe_size: int = Field(0, ge=0)
    fingerprint: str

    @property
    def final_mean(self) -> float:
        return self.curve[-1].mean_return

    @property
    def finals(self) -> Tuple[float, ...]:
        return tuple(a.final_return for a in self.per_agent_final)


class ExplorationStats(LabModel):
    """
    Overlap of two populations' visited (state, action) sets.

    Percentages are taken over the union of both sets, so
    p_lg + p_l + p_g == 100.

    Attributes:
        p_lg: Percent of pairs visited by both populations
        p_l: Percent visited only by the Learnability population
        p_g: Percent visited only by the Generalization population
        d_lg: Exploration divergence, p_l + p_g
        union_size: Number of pairs visited by either population
        universe: Number of legal pairs of the MDP
    """
    p_lg: float = Field(..., ge=0.0, le=100.0)
    p_l: float = Field(..., ge=0.0, le=100.0)
    p_g: float = Field(..., ge=0.0, le=100.0)
    d_lg: float = Field(..., ge=0.0, le=100.0)
    union_size: int = Field(..., ge=1)
    universe: int = Field(..., ge=0)


class GapStats(LabModel):
    """Reward gap between the two populations' final mean returns."""
    r_l: float
    r_g: float
    r_lg: float

    @classmethod
    def from_returns(cls, r_l: float, r_g: float) -> "GapStats":
        return cls(r_l=r_l, r_g=r_g, r_lg=r_g - r_l)


class FailedRun(LabModel):
    label: str
    fingerprint: str
    error: str


class PairResult(LabModel):
    """
    Learnability and Generalization runs sharing one target environment.

    A side is None when its run failed; the failure is listed on the suite.
    """
    target: str = Field(..., description='Label of the shared test environment.')
    learnability: Optional[RunResult] = None
    generalization: Optional[RunResult] = None
    r_max: Optional[float] = None

    @property
    def complete(self) -> bool:
        return self.learnability is not None and self.generalization is not None


class SuiteResult(LabModel):
    pairs: Tuple[PairResult, ...] = ()
    failures: Tuple[FailedRun, ...] = ()

    @property
    def completed_pairs(self) -> Tuple[PairResult, ...]:
        return tuple(p for p in self.pairs if p.complete)

    @property
    def ok(self) -> bool:
        return not self.failures
