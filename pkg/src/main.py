from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from .api.routes import benchmarks, synthesis
from .config import settings, logger
import logging

app = FastAPI(
    title=settings.API_TITLE,
    version=settings.API_VERSION,
    description="Realizability checking and controller synthesis for LTL-EBR specifications"
)

# Set up logging for this module
app_logger = logging.getLogger(__name__)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(synthesis.router)
app.include_router(benchmarks.router)


@app.get("/")
async def root():
    app_logger.info("Root endpoint accessed")
    return {"message": f"{settings.API_TITLE} is running!", "version": settings.API_VERSION}


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy", "game_backend": settings.GAME_BACKEND}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8001)
