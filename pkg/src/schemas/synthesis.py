from pydantic import BaseModel, Field, validator
from typing import List, Optional
from enum import Enum


class Stage(str, Enum):
    """Pipeline stage a specification is ingested at"""
    LTL = "ltl"
    PASTIFIED = "pastified"
    CANONICAL = "canonical"


class Verdict(str, Enum):
    REALIZABLE = "REALIZABLE"
    UNREALIZABLE = "UNREALIZABLE"


class SynthesisRequest(BaseModel):
    """Schema for a synthesis run"""
    spec: str = Field(..., min_length=1, description="Specification file text (.inputs/.outputs headers and formulas)")
    from_stage: Stage = Field(Stage.LTL, description="Stage the formulas are written in")
    backend: Optional[str] = Field(None, description="Game backend: explicit, symbolic or auto")
    state_budget: Optional[int] = Field(None, gt=0, description="Maximum 2^|latches| accepted by either backend")
    oracle_check: Optional[List[int]] = Field(None, description="Stem and loop length for the language cross-check")
    include_dumps: bool = Field(False, description="Include pastified, canonical and automaton dumps")
    include_aiger: bool = Field(False, description="Include the monitor circuit")
    include_strategy: bool = Field(False, description="Include the strategy circuit when realizable")

    @validator('backend')
    def validate_backend(cls, v):
        if v is not None and v not in ("explicit", "symbolic", "auto"):
            raise ValueError('Backend must be explicit, symbolic or auto')
        return v

    @validator('oracle_check')
    def validate_oracle_check(cls, v):
        """Validate stem length >= 0 and loop length >= 1"""
        if v is None:
            return v
        if len(v) != 2 or v[0] < 0 or v[1] < 1:
            raise ValueError('Oracle check needs a stem length >= 0 and a loop length >= 1')
        return v


class StageSizes(BaseModel):
    """Sizes observed along the pipeline"""
    formula: int = Field(..., description="Node count of the input formula")
    pastified: int = Field(..., description="Node count after pastification")
    canonical: int = Field(..., description="Node count of the canonical formula")
    canonical_atoms: int = Field(..., description="Number of canonical atoms")
    latches: int = Field(..., description="Latches of the compiled automaton")
    definitions: int = Field(..., description="Combinational definitions of the compiled automaton")
    boolfn_nodes: int = Field(..., description="Boolean function nodes of the compiled automaton")
    pastify_bound: float = Field(..., description="n^2 * M^(log2 n + 1) for the input formula")


class StageTimings(BaseModel):
    """Wall-clock seconds per stage"""
    parse: float = 0.0
    pastify: float = 0.0
    canonize: float = 0.0
    compile: float = 0.0
    solve: float = 0.0


class OracleReport(BaseModel):
    """Automaton acceptance against the reference semantics"""
    words: int = Field(..., description="Number of lasso words checked")
    mismatches: int = Field(..., description="Words on which the two disagree")
    example: Optional[str] = Field(None, description="First mismatching word")


class SynthesisReport(BaseModel):
    """Schema for a synthesis result"""
    verdict: Verdict = Field(..., description="Realizability verdict")
    realizable: bool
    backend: str = Field(..., description="Game backend that solved the instance")
    iterations: int = Field(..., description="Fixpoint iterations")
    region_sizes: List[int] = Field(default_factory=list, description="Winning region size per iteration")
    sizes: StageSizes
    timings: StageTimings
    oracle: Optional[OracleReport] = None
    pastified: Optional[str] = None
    canonical: Optional[str] = None
    automaton: Optional[str] = None
    monitor_aiger: Optional[str] = None
    strategy_aiger: Optional[str] = None
