from pydantic import BaseModel, Field


class BenchmarkResponse(BaseModel):
    """Schema for a generated benchmark instance"""
    category: int = Field(..., ge=1, le=4, description="Benchmark family")
    n: int = Field(..., ge=1, description="Scaling parameter")
    formula: str = Field(..., description="Generated formula")
    spec: str = Field(..., description="Specification file text")
    expected_realizable: bool = Field(..., description="Verdict of the sound solver for this family")
