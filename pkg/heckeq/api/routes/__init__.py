from fastapi import APIRouter

from heckeq.api.routes.series import router as series_router
from heckeq.api.routes.series import list_suites_route

router = APIRouter()

router.include_router(series_router, tags=["series"])

# Re-export the suite catalogue at the API root
router.get("/suites", tags=["suites"])(list_suites_route)
