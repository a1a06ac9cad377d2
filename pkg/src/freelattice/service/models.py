"""Pydantic request and response models for the service and the CLI wire
format.  Rationals are strings ("p/q") end to end; angles, weights, and
tolerances for the circle module are floats by design."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..lifting import DEFAULT_NET_CAP


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SpaceModel(StrictModel):
    """A coordinate Banach lattice: dimension plus norm spec."""

    kind: Literal["l1", "linf", "lp", "wl1", "wlinf"]
    dim: int = Field(ge=1)
    p: Optional[str] = None
    weights: Optional[list[str]] = None

    @model_validator(mode="after")
    def _fields_match_kind(self) -> "SpaceModel":
        if self.kind == "lp" and self.p is None:
            raise ValueError("lp spaces need an exponent p")
        if self.kind in ("wl1", "wlinf") and not self.weights:
            raise ValueError(f"{self.kind} spaces need weights")
        return self


class OracleModel(StrictModel):
    kind: Literal["canonical", "adversarial"] = "canonical"
    seed: Optional[int] = None
    slack: Optional[str] = None

    @model_validator(mode="after")
    def _adversarial_needs_seed(self) -> "OracleModel":
        if self.kind == "adversarial" and self.seed is None:
            raise ValueError("the adversarial oracle needs an explicit seed")
        return self


class CanonRequest(StrictModel):
    n: int = Field(ge=1)
    expr: str
    lp_prune: bool = False


class EvalRequest(StrictModel):
    n: int = Field(ge=1)
    expr: str
    at: list[str] = Field(min_length=1)


class EqualRequest(StrictModel):
    n: int = Field(ge=1)
    lhs: str
    rhs: str


class NormRequest(StrictModel):
    n: int = Field(ge=1)
    expr: str
    kind: Literal["sup", "free"]


class AtomModel(StrictModel):
    weight: str
    point: list[str] = Field(min_length=1)


class DualNormRequest(StrictModel):
    n: int = Field(ge=1)
    atoms: list[AtomModel]


class QuotientNormRequest(StrictModel):
    n: int = Field(ge=1)
    expr: str
    points: list[list[str]] = Field(min_length=1)


class ProjectRequest(StrictModel):
    n: int = Field(ge=1)
    expr: str
    keep: list[int] = Field(min_length=1)


class LiftDisjointRequest(StrictModel):
    space: SpaceModel
    ideal: list[int] = Field(default_factory=list)
    ys: list[list[str]]
    oracle: OracleModel = Field(default_factory=OracleModel)
    trace: bool = False


class LiftFamiliesRequest(StrictModel):
    space: SpaceModel
    ideal: list[int] = Field(default_factory=list)
    families: list[list[list[str]]]
    oracle: OracleModel = Field(default_factory=OracleModel)
    trace: bool = False


class RowModel(StrictModel):
    source: int = Field(ge=1)
    scale: str


class ProjliftRequest(StrictModel):
    dom: SpaceModel
    space: SpaceModel
    ideal: list[int] = Field(default_factory=list)
    rows: list[Optional[RowModel]] = Field(min_length=1)
    eps: str
    oracle: OracleModel = Field(default_factory=OracleModel)
    net_cap: int = Field(default=DEFAULT_NET_CAP, ge=1)
    trace: bool = False


class CircleAtomModel(StrictModel):
    angle: float
    weight: float


class SymnormRequest(StrictModel):
    atoms: list[CircleAtomModel]
    tol: float = 1e-9


class CommandResultModel(StrictModel):
    status: Literal["ok", "error"]
    payload: Optional[dict] = None
    diagnostics: list[str] = Field(default_factory=list)
