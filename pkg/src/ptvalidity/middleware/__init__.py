"""
Middleware for the evaluation engines.

Decorators here wrap public entry points to add cross-cutting concerns such
as verdict logging without touching the evaluation code.
"""

from ptvalidity.middleware.verdict_logger import verdict_logger

__all__ = ["verdict_logger"]
