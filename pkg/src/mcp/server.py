"""MCP tool server exposing the word decider to LLM clients."""

import logging
from typing import Any, Dict

from ..core.decider import certificate_record
from ..core.engine import WordCertifier
from ..core.errors import HypothesisError, PreconditionError, SizeGuardError
from ..data.formats import verification_record, witness_record
from ..data.models import Verdict

logger = logging.getLogger(__name__)

WORD_PARAMETERS = {
    "word": {
        "type": "string",
        "description": "Word in matrix variables, e.g. 'A B B^T A^T' or 'X1 X2 X1 X2'",
    },
    "sym": {
        "type": "array",
        "items": {"type": "string"},
        "description": "Names of variables that denote symmetric matrices",
        "default": [],
    },
}


class MCPServer:
    """Model Context Protocol server for the word certifier."""

    def __init__(self, certifier: WordCertifier):
        self.certifier = certifier

        self.tools = {
            "classify_word": {
                "description": "Decide whether a matrix word is always PSD, symmetric times PSD, or can have "
                               "non-real eigenvalues, with a certificate",
                "parameters": {
                    "type": "object",
                    "properties": dict(WORD_PARAMETERS),
                    "required": ["word"],
                },
            },
            "find_witness": {
                "description": "Find a real matrix assignment under which the word has a non-real or "
                               "negative eigenvalue",
                "parameters": {
                    "type": "object",
                    "properties": {
                        **WORD_PARAMETERS,
                        "dims": {
                            "type": "array",
                            "items": {"type": "integer"},
                            "description": "Matrix sizes to try in random search (default: [2, 3])",
                        },
                        "trials": {
                            "type": "integer",
                            "description": "Random trials per dimension (default: 10000)",
                        },
                        "seed": {"type": "integer", "description": "Random seed (default: 0)"},
                        "imag_tol": {
                            "type": "number",
                            "description": "Smallest |Im λ| that counts as non-real (default scales with the norm)",
                        },
                    },
                    "required": ["word"],
                },
            },
            "verify_assignment": {
                "description": "Evaluate a word under a matrix assignment and report its spectrum",
                "parameters": {
                    "type": "object",
                    "properties": {
                        **WORD_PARAMETERS,
                        "assignment": {
                            "type": "string",
                            "description": "Assignment text: one 'matrix NAME' block per variable",
                        },
                        "claim": {
                            "type": "string",
                            "enum": ["not_real", "not_psd"],
                            "description": "Optional claim to check against the spectrum",
                        },
                        "imag_tol": {"type": "number"},
                        "psd_tol": {"type": "number"},
                    },
                    "required": ["word", "assignment"],
                },
            },
            "list_examples": {
                "description": "List curated example words with their known verdicts",
                "parameters": {"type": "object", "properties": {}},
            },
        }

    async def handle_tool_call(self, tool_name: str, parameters: Dict[str, Any]) -> Dict[str, Any]:
        try:
            if tool_name == "classify_word":
                return await self._classify_word(parameters)
            elif tool_name == "find_witness":
                return await self._find_witness(parameters)
            elif tool_name == "verify_assignment":
                return await self._verify_assignment(parameters)
            elif tool_name == "list_examples":
                return await self._list_examples(parameters)
            else:
                return {
                    "error": "unknown_tool",
                    "message": f"Unknown tool: {tool_name}",
                    "available_tools": list(self.tools.keys()),
                }
        except (PreconditionError, HypothesisError, SizeGuardError, ValueError) as e:
            return {"error": "invalid_input", "message": str(e), "tool": tool_name}
        except Exception as e:
            logger.error(f"Error handling tool call {tool_name}: {e}")
            return {"error": "tool_execution_failed", "message": str(e), "tool": tool_name}

    async def _classify_word(self, params: Dict[str, Any]) -> Dict[str, Any]:
        text = params.get("word")
        if not text:
            return {"error": "missing_parameter", "message": "word parameter is required"}

        w = self.certifier.parse(text, params.get("sym") or ())
        cert = self.certifier.decide_word(w)
        return {
            "success": True,
            "verdict": cert.verdict.value,
            "psd": cert.psd,
            "certificate": certificate_record(w, cert),
        }

    async def _find_witness(self, params: Dict[str, Any]) -> Dict[str, Any]:
        text = params.get("word")
        if not text:
            return {"error": "missing_parameter", "message": "word parameter is required"}

        w = self.certifier.parse(text, params.get("sym") or ())
        cert = self.certifier.decide_word(w)
        if cert.verdict is Verdict.SYMMETRIC:
            return {
                "error": "no_witness",
                "message": "The word is symmetric, hence PSD for every assignment",
                "verdict": cert.verdict.value,
            }

        report = self.certifier.find_witness_word(
            w,
            dims=params.get("dims"),
            trials=params.get("trials"),
            seed=params.get("seed"),
            imag_tol=params.get("imag_tol"),
        )
        if report is None:
            return {
                "error": "search_exhausted",
                "message": "No witness found within the trial budget",
                "verdict": cert.verdict.value,
            }
        return {"success": True, "verdict": cert.verdict.value, "witness": witness_record(w, report)}

    async def _verify_assignment(self, params: Dict[str, Any]) -> Dict[str, Any]:
        text = params.get("word")
        assignment = params.get("assignment")
        if not text or not assignment:
            return {"error": "missing_parameters", "message": "Both word and assignment are required"}

        record = self.certifier.verify(
            text,
            params.get("sym") or (),
            assignment,
            imag_tol=params.get("imag_tol"),
            psd_tol=params.get("psd_tol"),
            claim=params.get("claim"),
        )
        return {"success": True, "verification": verification_record(record)}

    async def _list_examples(self, params: Dict[str, Any]) -> Dict[str, Any]:
        examples = self.certifier.list_examples()
        return {"success": True, "total_count": len(examples), "examples": examples}

    def get_tools_manifest(self) -> Dict[str, Any]:
        return {
            "tools": self.tools,
            "server_info": {
                "name": "matrix-word-certifier",
                "version": "1.0.0",
                "description": "Decides real-eigenvaluedness of matrix words with certificates and witnesses",
            },
        }
