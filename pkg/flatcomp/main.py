from datetime import datetime, timezone

import structlog
from fastapi import FastAPI

from . import __version__
from .config import settings
from .logging_config import configure_logging
from .routes import completions, flatness, spaces, verify
from .services.verification_service import verification_service

configure_logging(settings.log_level, settings.log_json)
logger = structlog.get_logger(__name__)

app = FastAPI(
    title="flatcomp - flat presheaves and completions",
    description="""
    Exact computations on finite categories enriched over R+ (generalized
    metric spaces) and Bool (preorders).

    ## Features
    - **Spaces**: parse and validate distance matrices
    - **Completions**: P0, P1 and P2 completions, plus free, ideal, down-set and Dedekind-MacNeille over Bool
    - **Flatness**: closed-form tests next to the definitional oracle
    - **Filters**: distances between filters and modules
    - **Verification**: property suites over an enumerated catalog, with a run ledger

    ## API Endpoints
    - `/spaces/validate` - Unit and triangle laws
    - `/completions` - Build a completion
    - `/flatness` - Flatness verdicts
    - `/distance` - Filter and module distances
    - `/verify` - Catalog verification and stored runs
    """,
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc",
)

app.include_router(spaces.router)
app.include_router(completions.router)
app.include_router(flatness.router)
app.include_router(verify.router)


@app.get("/", tags=["System"])
def root():
    """
    API root endpoint with system information

    Returns:
        Version, status and available endpoints
    """
    return {
        "message": "flatcomp API",
        "version": __version__,
        "status": "operational",
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "endpoints": {
            "spaces": "/spaces/validate - Check space laws",
            "completions": "/completions - Build a completion",
            "flatness": "/flatness - Closed-form vs oracle flatness",
            "distance": "/distance - Distance between filters or modules",
            "verify": "/verify - Run the property suites; /verify/runs lists stored runs",
            "docs": "/docs - Interactive API documentation",
            "health": "/health - System health check",
        },
    }


@app.get("/ping", tags=["System"])
def ping():
    """Simple liveness check"""
    return {
        "message": "pong from flatcomp",
        "status": "healthy",
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "version": __version__,
    }


@app.get("/health", tags=["System"])
def health_check():
    """
    Health check with ledger connectivity and configuration

    Returns:
        Status, stored run count and the active budget
    """
    from .db.database import runs_table

    try:
        runs = len(runs_table())
        return {
            "status": "healthy",
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "version": __version__,
            "database": {"status": "connected", "path": settings.db_path, "runs": runs},
            "config": {"budget": settings.budget, "cache_size": settings.cache_size},
            "suites": len(verification_service.suite_names),
        }

    except Exception as e:
        logger.error("health_check_failed", error=str(e))
        return {
            "status": "unhealthy",
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "version": __version__,
            "error": str(e),
        }
