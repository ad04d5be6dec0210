from pydantic import BaseModel, Field, validator
from typing import FrozenSet, List


class LassoWord(BaseModel):
    """Ultimately periodic word stem . loop^omega over sets of atom names"""
    stem: List[FrozenSet[str]] = Field(default_factory=list, description="Finite prefix")
    loop: List[FrozenSet[str]] = Field(..., description="Repeated suffix, at least one state")

    @validator('loop')
    def validate_loop(cls, v):
        """Validate the loop is not empty"""
        if not v:
            raise ValueError('Loop must contain at least one state')
        return v

    class Config:
        frozen = True

    def state_at(self, position: int) -> FrozenSet[str]:
        if position < len(self.stem):
            return self.stem[position]
        return self.loop[(position - len(self.stem)) % len(self.loop)]

    def __len__(self) -> int:
        return len(self.stem) + len(self.loop)

    def __str__(self) -> str:
        def show(states):
            return " ".join("{" + ",".join(sorted(s)) + "}" for s in states)
        return f"{show(self.stem)} ({show(self.loop)})^w".strip()
