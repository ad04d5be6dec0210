from fastapi import APIRouter, Depends, HTTPException, Path, status
import logging

from ..dependencies import get_benchmark_service
from ...schemas.benchmark import BenchmarkResponse
from ...services.benchmark_service import BenchmarkService

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1/benchmarks", tags=["benchmarks"])


@router.get("/{category}/{n}", response_model=BenchmarkResponse)
async def get_benchmark(
    category: int = Path(..., description="Benchmark family, 1 to 4"),
    n: int = Path(..., ge=1, description="Scaling parameter"),
    service: BenchmarkService = Depends(get_benchmark_service),
):
    """Generate one instance of a benchmark family"""
    if category not in service.EXPECTED_REALIZABLE:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=f"Unknown benchmark category: {category}")
    return service.describe(category, n)
