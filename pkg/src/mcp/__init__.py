# MCP server components
