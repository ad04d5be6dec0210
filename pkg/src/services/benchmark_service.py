import logging
from typing import Dict

from ..core import formula as f
from ..core.parser import parse
from ..schemas.benchmark import BenchmarkResponse
from ..schemas.partition import Partition, SpecFile

logger = logging.getLogger(__name__)


class BenchmarkService:
    """Service layer for the four scalable benchmark families.

    Atoms starting with ``c`` are controllable, atoms starting with ``u``
    are not. Family 1 keeps the uncontrollable ``u`` inside an invariant,
    so Environment can always falsify it and the family is unrealizable;
    families 3 and 4 are unrealizable and family 2 is realizable.
    """

    EXPECTED_REALIZABLE: Dict[int, bool] = {1: False, 2: True, 3: False, 4: False}

    def formula_text(self, category: int, n: int) -> str:
        if n < 1:
            raise ValueError("Benchmark size must be at least 1")
        if category == 1:
            return self._nested(n, lambda k: f"c{k}", "u")
        if category == 2:
            return self._nested(n, lambda k: f"(c{k} | u{k})", None)
        if category == 3:
            disjuncts = " | ".join(f"G(u{i})" for i in range(1, n + 1))
            return f"G(c) & {disjuncts}" if n == 1 else f"G(c) & ({disjuncts})"
        if category == 4:
            conjuncts = [f"{'X' * i}(u{i} | u{i + 1})" for i in range(1, n + 1)]
            return " & ".join(["c"] + conjuncts)
        raise ValueError(f"Unknown benchmark category: {category}")

    def _nested(self, n: int, level, tail) -> str:
        """G(l0 & X G(l1 & XX G(... G(ln & tail)))) with X^k in front of level k"""
        innermost = level(n) if tail is None else f"{level(n)} & {tail}"
        text = f"G({innermost})"
        for k in range(n - 1, -1, -1):
            text = f"G({level(k)} & {'X' * (k + 1)} {text})"
        return text

    def generate(self, category: int, n: int) -> SpecFile:
        text = self.formula_text(category, n)
        partition = Partition.from_prefixes(f.atoms(parse(text)))
        logger.info(f"Generated benchmark {category} of size {n}")
        return SpecFile(partition=partition, formulas=[text])

    def describe(self, category: int, n: int) -> BenchmarkResponse:
        spec = self.generate(category, n)
        return BenchmarkResponse(
            category=category,
            n=n,
            formula=spec.formulas[0],
            spec=spec.to_text(),
            expected_realizable=self.EXPECTED_REALIZABLE[category],
        )
