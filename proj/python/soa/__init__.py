"""Python front-end for the soa library.

Presentations, arrows, certificates and problems are passed as dicts (or JSON
strings) in the same schema the ``soa`` command line tool reads and writes.
"""

import json

from . import _soa
from ._soa import (
    FiniteMap,
    InvalidPresentation,
    NotStabilised,
    ParseError,
    ProblemMismatch,
    SizeBudgetExceeded,
    SoaError,
    compose,
    identity,
    is_iso,
)

__all__ = [
    "FiniteMap",
    "InvalidPresentation",
    "NotStabilised",
    "ParseError",
    "ProblemMismatch",
    "SizeBudgetExceeded",
    "SoaError",
    "compose",
    "factor",
    "identity",
    "is_iso",
    "kappa",
    "lift",
    "validate",
    "verify",
]


def _text(value):
    if isinstance(value, str):
        return value
    if isinstance(value, FiniteMap):
        value = {"dom": value.dom, "cod": value.cod, "table": value.table}
    return json.dumps(value)


def validate(presentation):
    """Axiom violations of a presentation; empty when it is valid."""
    return _soa.validate(_text(presentation))


def factor(presentation, arrow, mode="plain", max_stage=16, **budget):
    """Factor ``arrow`` and return its certificate as a dict."""
    return json.loads(_soa.factor(_text(presentation), _text(arrow), mode, max_stage, **budget))


def verify(presentation, certificate):
    """Run every certificate check and return the report as a dict."""
    return json.loads(_soa.verify(_text(presentation), _text(certificate)))


def lift(presentation, certificate, problem):
    """The filler of a lifting problem against R."""
    j = json.loads(_soa.lift(_text(presentation), _text(certificate), _text(problem)))
    return FiniteMap(j["dom"], j["cod"], j["table"])


def kappa(presentation, f, g, max_carrier=2):
    return json.loads(_soa.kappa(_text(presentation), _text(f), _text(g), max_carrier))
