import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from ..core import formula as f
from ..core import oracle
from ..core.aiger import export_monitor, export_strategy
from ..core.automaton import SymbolicAutomaton, accepts, compile, dump
from ..core.canonize import CanonicalFormula, canonical_atoms, canonize, from_formula
from ..core.game import SafetyGameResult, solve
from ..core.layers import is_pltl_ebr, require
from ..core.parser import parse
from ..core.pastify import pastify_size_bound, to_past_ebr
from ..schemas.partition import SpecFile
from ..schemas.synthesis import (
    OracleReport, Stage, StageSizes, StageTimings, SynthesisReport, SynthesisRequest, Verdict
)

logger = logging.getLogger(__name__)


class OracleMismatchError(Exception):
    """Raised when the automaton disagrees with the reference semantics before solving"""

    def __init__(self, report: OracleReport):
        super().__init__(f"Oracle mismatch on {report.example} ({report.mismatches} of {report.words} words)")
        self.report = report


@dataclass
class PipelineRun:
    """Every intermediate artefact of one synthesis run"""
    spec: SpecFile
    formula: f.Formula
    pastified: f.Formula
    canonical: CanonicalFormula
    automaton: SymbolicAutomaton
    result: SafetyGameResult
    timings: Dict[str, float] = field(default_factory=dict)
    oracle: Optional[OracleReport] = None

    @property
    def verdict(self) -> Verdict:
        return Verdict.REALIZABLE if self.result.realizable else Verdict.UNREALIZABLE


class SynthesisService:
    """Service layer for the parse, pastify, canonize, compile and solve pipeline"""

    def __init__(self, backend: Optional[str] = None, state_budget: Optional[int] = None):
        self.backend = backend
        self.state_budget = state_budget

    @contextmanager
    def _timed(self, timings: Dict[str, float], stage: str):
        start = time.perf_counter()
        yield
        timings[stage] = time.perf_counter() - start

    def parse_spec(self, spec: SpecFile) -> f.Formula:
        """Conjunction of the formula lines, checked against the partition"""
        formula = f.conjunction(*(parse(line) for line in spec.formulas))
        spec.partition.check_covers(f.atoms(formula))
        return formula

    def run(
        self,
        spec: SpecFile,
        from_stage: Stage = Stage.LTL,
        oracle_check: Optional[Sequence[int]] = None,
    ) -> PipelineRun:
        """Every stage up to the game verdict.

        With ``oracle_check`` set to (stem, loop) the compiled automaton is
        compared with the reference semantics before the game is solved, and
        a disagreement raises OracleMismatchError.
        """
        logger.info(f"Running synthesis on {len(spec.formulas)} formula(s) from stage {from_stage.value}")
        timings: Dict[str, float] = {}
        with self._timed(timings, "parse"):
            formula = self.parse_spec(spec)

        with self._timed(timings, "pastify"):
            if from_stage is Stage.LTL:
                pastified = to_past_ebr(formula)
            else:
                require(is_pltl_ebr, formula, "PLTLEBR")
                pastified = formula

        with self._timed(timings, "canonize"):
            if from_stage is Stage.CANONICAL:
                canonical = from_formula(formula)
            else:
                canonical = canonize(pastified)

        with self._timed(timings, "compile"):
            automaton = compile(canonical, spec.partition)

        oracle_report = None
        if oracle_check:
            oracle_report = self.check_language(formula, automaton, spec.partition.alphabet, *oracle_check)
            if oracle_report.mismatches:
                raise OracleMismatchError(oracle_report)

        with self._timed(timings, "solve"):
            result = solve(automaton, backend=self.backend, state_budget=self.state_budget)

        return PipelineRun(
            spec=spec,
            formula=formula,
            pastified=pastified,
            canonical=canonical,
            automaton=automaton,
            result=result,
            timings=timings,
            oracle=oracle_report,
        )

    def check_language(
        self,
        formula: f.Formula,
        automaton: SymbolicAutomaton,
        alphabet: Sequence[str],
        stem_length: int,
        loop_length: int,
    ) -> OracleReport:
        """Compare automaton acceptance with the reference semantics of the input formula"""
        words = 0
        mismatch = None
        mismatches = 0
        for word in oracle.enumerate_all_words(alphabet, stem_length, loop_length):
            words += 1
            if accepts(automaton, word) != oracle.eval_at(word, 0, formula):
                mismatches += 1
                mismatch = mismatch or str(word)
        if mismatches:
            logger.warning(f"Oracle cross-check found {mismatches} mismatches out of {words} words")
        else:
            logger.info(f"Oracle cross-check agreed on {words} words")
        return OracleReport(words=words, mismatches=mismatches, example=mismatch)

    def report(
        self,
        run: PipelineRun,
        include_dumps: bool = False,
        include_aiger: bool = False,
        include_strategy: bool = False,
    ) -> SynthesisReport:
        canonical_formula = run.canonical.to_formula()
        sizes = StageSizes(
            formula=f.size(run.formula),
            pastified=f.size(run.pastified),
            canonical=f.size(canonical_formula),
            canonical_atoms=len(canonical_atoms(run.canonical)),
            latches=len(run.automaton.latches),
            definitions=len(run.automaton.definitions),
            boolfn_nodes=run.automaton.node_count(),
            pastify_bound=pastify_size_bound(run.formula),
        )
        report = SynthesisReport(
            verdict=run.verdict,
            realizable=run.result.realizable,
            backend=run.result.backend.value,
            iterations=run.result.iterations,
            region_sizes=run.result.region_sizes,
            sizes=sizes,
            timings=StageTimings(**run.timings),
            oracle=run.oracle,
        )
        if include_dumps:
            report.pastified = str(run.pastified)
            report.canonical = str(canonical_formula)
            report.automaton = dump(run.automaton)
        if include_aiger:
            report.monitor_aiger = export_monitor(run.automaton)
        if include_strategy:
            report.strategy_aiger = export_strategy(run.result, run.automaton)
        return report

    def synthesize(self, request: SynthesisRequest) -> SynthesisReport:
        """Run the pipeline for an API request"""
        spec = SpecFile.from_text(request.spec)
        service = SynthesisService(
            backend=request.backend or self.backend,
            state_budget=request.state_budget or self.state_budget,
        )
        run = service.run(spec, request.from_stage, oracle_check=request.oracle_check)
        return service.report(
            run,
            include_dumps=request.include_dumps,
            include_aiger=request.include_aiger,
            include_strategy=request.include_strategy,
        )
