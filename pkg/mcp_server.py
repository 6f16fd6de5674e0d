#!/usr/bin/env python3
"""Standalone MCP server for the matrix word certifier (JSON-RPC over stdio)."""

import asyncio
import json
import logging
import sys
from typing import Any, Dict, Optional

from src.core.config import get_settings
from src.core.engine import WordCertifier
from src.data.database import CertificateStore
from src.data.initial_data import initialize_example_certificates
from src.mcp.server import MCPServer

logging.basicConfig(
    level=get_settings().log_level,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)

PROTOCOL_VERSION = "2024-11-05"
METHOD_NOT_FOUND = -32601
INTERNAL_ERROR = -32603
PARSE_ERROR = -32700


def rpc_result(request_id, result: Dict[str, Any]) -> Dict[str, Any]:
    return {"jsonrpc": "2.0", "id": request_id, "result": result}


def rpc_error(request_id, code: int, message: str) -> Dict[str, Any]:
    return {"jsonrpc": "2.0", "id": request_id, "error": {"code": code, "message": message}}


class MCPServerApp:
    """Reads one JSON-RPC request per stdin line and answers on stdout."""

    def __init__(self):
        self.store: Optional[CertificateStore] = None
        self.mcp_server: Optional[MCPServer] = None

    async def initialize(self):
        logger.info("Initializing matrix word certifier MCP server...")
        self.store = CertificateStore(get_settings().db_path)
        certifier = WordCertifier(self.store)
        logger.info(f"Stored {initialize_example_certificates(self.store, certifier)} example certificates")
        self.mcp_server = MCPServer(certifier)

    async def handle_request(self, request: Dict[str, Any]) -> Dict[str, Any]:
        request_id = request.get("id")
        method = request.get("method")
        params = request.get("params") or {}
        try:
            if method == "initialize":
                info = self.mcp_server.get_tools_manifest()["server_info"]
                return rpc_result(request_id, {
                    "protocolVersion": PROTOCOL_VERSION,
                    "capabilities": {"tools": {}},
                    "serverInfo": {"name": info["name"], "version": info["version"]},
                })
            if method == "tools/list":
                return rpc_result(request_id, self.mcp_server.get_tools_manifest())
            if method == "tools/call":
                result = await self.mcp_server.handle_tool_call(params.get("name"), params.get("arguments") or {})
                text = json.dumps(result, indent=2, sort_keys=True)
                return rpc_result(request_id, {"content": [{"type": "text", "text": text}]})
            return rpc_error(request_id, METHOD_NOT_FOUND, f"Method not found: {method}")
        except Exception as e:
            logger.error(f"Error handling {method}: {e}")
            return rpc_error(request_id, INTERNAL_ERROR, f"Internal error: {e}")

    async def handle_line(self, line: str) -> Optional[Dict[str, Any]]:
        """Response for one input line; None for blank lines."""
        line = line.strip()
        if not line:
            return None
        try:
            request = json.loads(line)
        except json.JSONDecodeError as e:
            logger.error(f"Invalid JSON request: {e}")
            return rpc_error(None, PARSE_ERROR, "Parse error")
        return await self.handle_request(request)

    async def run(self):
        await self.initialize()
        logger.info("MCP server ready for requests")
        loop = asyncio.get_running_loop()
        try:
            while True:
                line = await loop.run_in_executor(None, sys.stdin.readline)
                if not line:
                    break
                response = await self.handle_line(line)
                if response is not None:
                    sys.stdout.write(json.dumps(response) + "\n")
                    sys.stdout.flush()
        except KeyboardInterrupt:
            logger.info("Shutting down MCP server...")
        finally:
            if self.store:
                self.store.close()


async def main():
    await MCPServerApp().run()


if __name__ == "__main__":
    asyncio.run(main())
