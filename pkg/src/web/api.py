"""API routes for the word certifier web interface."""

from fastapi import APIRouter, Request
from pydantic import BaseModel, Field
from typing import Dict, List, Optional, Union
import logging

from ..core.decider import certificate_record
from ..core.errors import SizeGuardError
from ..data.formats import verification_record, witness_record
from ..data.models import Verdict

logger = logging.getLogger(__name__)


class WordRequest(BaseModel):
    """A word plus the names of its symmetric variables."""
    word: str
    sym: List[str] = Field(default_factory=list)


class WitnessRequest(WordRequest):
    dims: Optional[List[int]] = None
    trials: Optional[int] = Field(default=None, ge=0)
    seed: Optional[int] = None
    imag_tol: Optional[float] = Field(default=None, ge=0)


class VerifyRequest(WordRequest):
    assignment: str
    claim: Optional[str] = None
    imag_tol: Optional[float] = Field(default=None, ge=0)
    psd_tol: Optional[float] = Field(default=None, ge=0)


class DecideResponse(BaseModel):
    word: str
    verdict: str
    psd: bool
    certificate: Dict


class WitnessResponse(BaseModel):
    word: str
    verdict: str
    witness: Dict


class VerifyResponse(BaseModel):
    word: str
    verification: Dict


class ErrorResponse(BaseModel):
    """Error response model."""
    error: str
    message: str
    details: Optional[dict] = None


def create_api_router() -> APIRouter:
    router = APIRouter()

    @router.post("/decide", response_model=Union[DecideResponse, ErrorResponse])
    async def decide_word(request: WordRequest, app_request: Request):
        """Classify a word as Symmetric, SymTimesPsd or NotRealEigenvalued."""
        try:
            certifier = app_request.app.state.certifier
            w = certifier.parse(request.word, request.sym)
            cert = certifier.decide_word(w)
            return DecideResponse(
                word=request.word,
                verdict=cert.verdict.value,
                psd=cert.psd,
                certificate=certificate_record(w, cert),
            )

        except ValueError as e:
            logger.warning(f"Invalid decide request: {e}")
            return ErrorResponse(error="invalid_request", message=str(e), details={"word": request.word})
        except Exception as e:
            logger.error(f"Decide error: {e}")
            return ErrorResponse(error="decide_failed", message="Failed to decide word", details={"error": str(e)})

    @router.post("/witness", response_model=Union[WitnessResponse, ErrorResponse])
    async def find_witness(request: WitnessRequest, app_request: Request):
        """Search for an assignment refuting real-eigenvaluedness or PSD-ness."""
        try:
            certifier = app_request.app.state.certifier
            w = certifier.parse(request.word, request.sym)
            cert = certifier.decide_word(w)
            if cert.verdict is Verdict.SYMMETRIC:
                return ErrorResponse(
                    error="no_witness",
                    message="The word is symmetric, hence PSD for every assignment",
                    details={"word": request.word, "verdict": cert.verdict.value},
                )

            report = certifier.find_witness_word(w, request.dims, request.trials, request.seed, request.imag_tol)
            if report is None:
                return ErrorResponse(
                    error="search_exhausted",
                    message="No witness found within the trial budget",
                    details={"word": request.word, "seed": request.seed},
                )
            return WitnessResponse(word=request.word, verdict=cert.verdict.value, witness=witness_record(w, report))

        except ValueError as e:
            logger.warning(f"Invalid witness request: {e}")
            return ErrorResponse(error="invalid_request", message=str(e), details={"word": request.word})
        except SizeGuardError as e:
            return ErrorResponse(error="size_guard", message=str(e), details={"guard": e.guard})
        except Exception as e:
            logger.error(f"Witness search error: {e}")
            return ErrorResponse(error="search_failed", message="Failed to search for a witness",
                                 details={"error": str(e)})

    @router.post("/verify", response_model=Union[VerifyResponse, ErrorResponse])
    async def verify_assignment(request: VerifyRequest, app_request: Request):
        """Evaluate a word under an assignment and report its spectrum."""
        try:
            certifier = app_request.app.state.certifier
            record = certifier.verify(
                request.word,
                request.sym,
                request.assignment,
                imag_tol=request.imag_tol,
                psd_tol=request.psd_tol,
                claim=request.claim,
            )
            return VerifyResponse(word=request.word, verification=verification_record(record))

        except ValueError as e:
            logger.warning(f"Invalid verify request: {e}")
            return ErrorResponse(error="invalid_request", message=str(e), details={"word": request.word})
        except Exception as e:
            logger.error(f"Verify error: {e}")
            return ErrorResponse(error="verify_failed", message="Failed to verify assignment",
                                 details={"error": str(e)})

    @router.get("/examples")
    async def get_examples(app_request: Request):
        certifier = app_request.app.state.certifier
        examples = certifier.list_examples()
        return {"examples": examples, "total_count": len(examples)}

    @router.get("/status")
    async def get_status(app_request: Request):
        """Cache statistics and stored record counts."""
        try:
            return app_request.app.state.certifier.get_status()
        except Exception as e:
            logger.error(f"Status error: {e}")
            return {"error": "status_failed", "message": str(e)}

    return router
