"""Tests for the MCP tool server and its JSON-RPC wrapper."""

import asyncio
import json

import pytest

import mcp_server
from src.core.cache import certificate_cache, witness_cache
from src.core.engine import WordCertifier
from src.data.database import CertificateStore
from src.mcp.server import MCPServer


@pytest.fixture
def server():
    certificate_cache.clear()
    witness_cache.clear()
    store = CertificateStore(":memory:")
    yield MCPServer(WordCertifier(store))
    store.close()


def call(server, tool, params):
    return asyncio.run(server.handle_tool_call(tool, params))


def test_manifest_lists_tools(server):
    manifest = server.get_tools_manifest()
    assert set(manifest["tools"]) == {"classify_word", "find_witness", "verify_assignment", "list_examples"}
    assert manifest["server_info"]["name"] == "matrix-word-certifier"
    assert manifest["tools"]["classify_word"]["parameters"]["required"] == ["word"]


def test_classify_word(server):
    result = call(server, "classify_word", {"word": "A A^T X", "sym": ["X"]})
    assert result["success"]
    assert result["verdict"] == "SymTimesPsd"
    assert result["psd"] is False
    assert result["certificate"]["sym_var"] == "X"


def test_find_witness(server):
    result = call(server, "find_witness", {"word": "X Y X Y", "sym": ["X", "Y"]})
    assert result["success"]
    assert result["witness"]["kind"] == "SymPair"
    assert set(result["witness"]["assignment"]) == {"X", "Y"}


def test_no_witness_for_symmetric_word(server):
    result = call(server, "find_witness", {"word": "A^T A"})
    assert result["error"] == "no_witness"
    assert result["verdict"] == "Symmetric"


def test_search_exhausted(server):
    result = call(server, "find_witness", {"word": "A B^T A B", "trials": 0})
    assert result["error"] == "search_exhausted"


def test_verify_assignment(server):
    result = call(server, "verify_assignment", {
        "word": "A",
        "assignment": "matrix A\n2\n0 -1\n1 0\n",
        "claim": "not_real",
    })
    assert result["success"]
    assert result["verification"]["passed"] is True
    assert result["verification"]["is_real"] is False


def test_list_examples(server):
    result = call(server, "list_examples", {})
    assert result["total_count"] == 10


@pytest.mark.parametrize("tool,params,error", [
    ("classify_word", {}, "missing_parameter"),
    ("find_witness", {"word": ""}, "missing_parameter"),
    ("verify_assignment", {"word": "A"}, "missing_parameters"),
    ("classify_word", {"word": "A ^T"}, "invalid_input"),
    ("verify_assignment", {"word": "A", "assignment": "matrix A\n3\n1 2\n"}, "invalid_input"),
    ("find_witness", {"word": "A B", "dims": [40]}, "invalid_input"),
    ("translate_word", {}, "unknown_tool"),
])
def test_error_responses(server, tool, params, error):
    result = call(server, tool, params)
    assert result["error"] == error


def test_unknown_tool_lists_alternatives(server):
    result = call(server, "translate_word", {})
    assert "classify_word" in result["available_tools"]


def make_app(server) -> mcp_server.MCPServerApp:
    app = mcp_server.MCPServerApp()
    app.mcp_server = server
    return app


def test_jsonrpc_tools_list(server):
    response = asyncio.run(make_app(server).handle_request({"jsonrpc": "2.0", "id": 1, "method": "tools/list"}))
    assert response["id"] == 1
    assert "classify_word" in response["result"]["tools"]


def test_jsonrpc_tools_call(server):
    request = {
        "jsonrpc": "2.0",
        "id": 2,
        "method": "tools/call",
        "params": {"name": "classify_word", "arguments": {"word": "A B"}},
    }
    response = asyncio.run(make_app(server).handle_request(request))
    payload = json.loads(response["result"]["content"][0]["text"])
    assert payload["verdict"] == "NotRealEigenvalued"


def test_jsonrpc_unknown_method(server):
    response = asyncio.run(make_app(server).handle_request({"jsonrpc": "2.0", "id": 3, "method": "resources/list"}))
    assert response["error"]["code"] == -32601


def test_jsonrpc_initialize(server):
    response = asyncio.run(make_app(server).handle_request({"jsonrpc": "2.0", "id": 0, "method": "initialize"}))
    assert response["result"]["serverInfo"]["name"] == "matrix-word-certifier"
    assert "tools" in response["result"]["capabilities"]


def test_jsonrpc_parse_error_and_blank_lines(server):
    app = make_app(server)
    assert asyncio.run(app.handle_line("   \n")) is None
    response = asyncio.run(app.handle_line("{not json"))
    assert response["error"]["code"] == -32700
    assert response["id"] is None
