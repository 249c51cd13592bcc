import logging
from contextlib import asynccontextmanager
from dataclasses import dataclass
from typing import AsyncIterator

from mcp.server.fastmcp import FastMCP

from heckeq.config import Settings, configure_logging, get_settings

logger = logging.getLogger(__name__)


@dataclass
class AppContext:
    settings: Settings


@asynccontextmanager
async def app_lifespan(server: FastMCP) -> AsyncIterator[AppContext]:
    """Load settings on startup."""
    configure_logging()
    settings = get_settings()
    logger.info(f"heckeq MCP server starting (default order {settings.default_order})")
    try:
        yield AppContext(settings=settings)
    finally:
        logger.info("heckeq MCP server stopped")


mcp = FastMCP("heckeq", lifespan=app_lifespan)
