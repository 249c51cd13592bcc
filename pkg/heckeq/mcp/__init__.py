from heckeq.mcp.server import mcp
import heckeq.mcp.tools  # noqa: F401
import heckeq.mcp.resources  # noqa: F401
import heckeq.mcp.prompts  # noqa: F401

# Re-export the MCP server instance
__all__ = ["mcp"]
