from ..services.benchmark_service import BenchmarkService
from ..services.synthesis_service import SynthesisService


def get_synthesis_service() -> SynthesisService:
    return SynthesisService()


def get_benchmark_service() -> BenchmarkService:
    return BenchmarkService()
