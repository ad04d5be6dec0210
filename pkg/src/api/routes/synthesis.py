from fastapi import APIRouter, Depends, HTTPException, status
import logging

from ..dependencies import get_synthesis_service
from ...core.game import ResourceLimitError, UnrealizableError
from ...core.layers import FragmentError
from ...core.parser import ParseError
from ...schemas.partition import SpecFormatError
from ...schemas.synthesis import SynthesisReport, SynthesisRequest
from ...services.synthesis_service import OracleMismatchError, SynthesisService

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1/synthesis", tags=["synthesis"])


@router.post("", response_model=SynthesisReport)
async def synthesize(
    request: SynthesisRequest,
    service: SynthesisService = Depends(get_synthesis_service),
):
    """Decide realizability of a specification and optionally return circuits"""
    logger.info(f"Synthesis request from stage {request.from_stage.value}")
    try:
        return service.synthesize(request)
    except (ParseError, FragmentError, SpecFormatError) as e:
        logger.warning(f"Rejected specification: {e}")
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except ResourceLimitError as e:
        logger.warning(f"Specification exceeds the state budget: {e}")
        raise HTTPException(status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE, detail=str(e))
    except UnrealizableError as e:
        logger.info("Strategy requested for an unrealizable specification")
        raise HTTPException(status_code=status.HTTP_409_CONFLICT, detail=str(e))
    except OracleMismatchError as e:
        logger.error(f"Automaton disagrees with the reference semantics: {e}")
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=str(e))
