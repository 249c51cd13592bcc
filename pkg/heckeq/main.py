from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from heckeq import __version__
from heckeq.api.routes import router as api_router
from heckeq.config import configure_logging

configure_logging()

app = FastAPI(
    title="heckeq",
    description="API for exact q-series, Hecke-type double-sums and string-function identities",
    version=__version__,
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.get("/")
async def root():
    return {"message": "Welcome to the heckeq API"}


app.include_router(api_router, prefix="/api")
