"""HTTP entry point for the matrix word certifier."""

import logging
import uvicorn
from fastapi import FastAPI
from contextlib import asynccontextmanager

from src.core.config import get_settings
from src.core.engine import WordCertifier
from src.data.database import CertificateStore
from src.data.initial_data import initialize_example_certificates
from src.web.api import create_api_router

logging.basicConfig(
    level=get_settings().log_level,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info("Starting matrix word certifier...")

    store = CertificateStore(get_settings().db_path)
    certifier = WordCertifier(store)
    initialize_example_certificates(store, certifier)

    app.state.store = store
    app.state.certifier = certifier

    logger.info("Matrix word certifier started successfully")

    yield

    logger.info("Shutting down matrix word certifier...")
    store.close()


app = FastAPI(
    title="Matrix Word Certifier",
    description="Decides whether a matrix word is PSD or real-eigenvalued for every assignment, "
                "with certificates and counterexample witnesses",
    version="0.1.0",
    lifespan=lifespan
)

app.include_router(create_api_router(), prefix="/api")


@app.get("/health")
async def health_check():
    return {"status": "healthy", "service": "Matrix Word Certifier"}


if __name__ == "__main__":
    uvicorn.run(
        "app:app",
        host="0.0.0.0",
        port=8000,
        reload=True,
        log_level="info"
    )
