"""Exception hierarchy shared by every module.

Each class carries a short machine-readable ``code`` that the command line
front end copies into its error JSON.
"""

from __future__ import annotations

from typing import Any


class GraphError(Exception):
    code = "graph_error"

    def __init__(self, message: str = "", **detail: Any) -> None:
        super().__init__(message or self.code)
        self.detail = detail


class MissingEdge(GraphError):
    code = "missing_edge"


class TooSmall(GraphError):
    code = "too_small"


class NotSimple(GraphError):
    code = "not_simple"


class Disconnected(GraphError):
    code = "disconnected"


class NonPlanar(GraphError):
    code = "non_planar"


class NonPlanarHost(NonPlanar):
    code = "non_planar_host"


class InvalidRotation(GraphError):
    code = "invalid_rotation"


class NotATriangle(GraphError):
    code = "not_a_triangle"


class InvalidCertificate(GraphError):
    code = "invalid_certificate"


class DegenerateRegion(GraphError):
    code = "degenerate_region"


class InvariantViolation(GraphError):
    code = "invariant_violation"


class BadArity(GraphError):
    code = "bad_arity"


class NotAClique(GraphError):
    code = "not_a_clique"


class ParseError(GraphError):
    code = "parse_error"


class SearchBudgetExceeded(GraphError):
    """An exhaustive search ran out of nodes before reaching a verdict."""

    code = "budget_exceeded"


class ForbiddenMinorPresent(GraphError):
    """The input contains the excluded minor of the requested mode.

    ``certificate`` is a :class:`~minoruniv.minor.MinorCertificate` for the
    forbidden pattern when the search found one within budget, else ``None``.
    """

    code = "forbidden_minor"

    def __init__(self, message: str = "", certificate: Any = None, **detail: Any) -> None:
        super().__init__(message, **detail)
        self.certificate = certificate
