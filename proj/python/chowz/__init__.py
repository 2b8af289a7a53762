"""Integral Chow ring computations and step replay."""

import json

from ._chowz import (
    ParseError,
    UnknownStep,
    graded_piece,
    ideal_equal,
    kernel,
    normal_form,
)
from . import _chowz

__all__ = [
    "ParseError",
    "UnknownStep",
    "catalog",
    "graded_piece",
    "ideal_equal",
    "kernel",
    "normal_form",
    "registry",
    "verify",
]


def verify(steps=(), claims_path=None):
    """Replay steps (all by default) and return the report document."""
    return json.loads(_chowz.verify_json(list(steps), claims_path or ""))


def catalog():
    return json.loads(_chowz.catalog_json())


def registry(moduli=None):
    return json.loads(_chowz.registry_json(moduli or {}))
