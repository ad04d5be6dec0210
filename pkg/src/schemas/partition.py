from pydantic import BaseModel, Field, validator
from typing import Iterable, List, Tuple


class SpecFormatError(Exception):
    """Raised when a specification file or variable partition is malformed"""
    pass


class Partition(BaseModel):
    """Controllable / uncontrollable split of the alphabet"""
    controllable: List[str] = Field(default_factory=list, description="Atoms set by Controller")
    uncontrollable: List[str] = Field(default_factory=list, description="Atoms set by Environment")

    @validator('controllable', 'uncontrollable')
    def validate_unique(cls, v):
        """Validate no atom is declared twice on one side"""
        if len(set(v)) != len(v):
            raise ValueError('Duplicate atom in partition')
        return v

    @validator('uncontrollable')
    def validate_disjoint(cls, v, values):
        """Validate the two sides share no atom"""
        shared = set(v) & set(values.get('controllable', []))
        if shared:
            raise ValueError(f"Atoms both controllable and uncontrollable: {sorted(shared)}")
        return v

    class Config:
        frozen = True

    @property
    def alphabet(self) -> Tuple[str, ...]:
        """Uncontrollable atoms first, then controllable ones"""
        return tuple(self.uncontrollable) + tuple(self.controllable)

    def check_covers(self, atoms: Iterable[str]) -> None:
        missing = sorted(set(atoms) - set(self.alphabet))
        if missing:
            raise SpecFormatError(f"Atoms not declared as inputs or outputs: {missing}")

    @classmethod
    def from_prefixes(cls, atoms: Iterable[str]) -> "Partition":
        """Atoms starting with 'c' are controllable, those starting with 'u' are not"""
        controllable, uncontrollable = [], []
        for atom in atoms:
            if atom.startswith("c"):
                controllable.append(atom)
            elif atom.startswith("u"):
                uncontrollable.append(atom)
            else:
                raise SpecFormatError(f"Cannot infer controllability of atom: {atom}")
        return cls(controllable=controllable, uncontrollable=uncontrollable)


class SpecFile(BaseModel):
    """Parsed specification file: partition plus formula lines"""
    partition: Partition
    formulas: List[str] = Field(..., description="Formula lines, conjoined")

    @validator('formulas')
    def validate_formulas(cls, v):
        if not v:
            raise ValueError('Specification contains no formula')
        return v

    @classmethod
    def from_text(cls, text: str) -> "SpecFile":
        """Read `.inputs` / `.outputs` headers followed by formula lines"""
        inputs, outputs, formulas = None, None, []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith(".inputs"):
                inputs = line.split()[1:]
            elif line.startswith(".outputs"):
                outputs = line.split()[1:]
            elif line.startswith("."):
                raise SpecFormatError(f"Unknown directive on line {number}: {line}")
            else:
                formulas.append(line)
        if inputs is None or outputs is None:
            raise SpecFormatError("Specification must declare .inputs and .outputs")
        try:
            return cls(
                partition=Partition(controllable=outputs, uncontrollable=inputs),
                formulas=formulas,
            )
        except ValueError as e:
            raise SpecFormatError(str(e)) from e

    def to_text(self) -> str:
        lines = [
            " ".join([".inputs"] + list(self.partition.uncontrollable)),
            " ".join([".outputs"] + list(self.partition.controllable)),
        ]
        return "\n".join(lines + list(self.formulas)) + "\n"
