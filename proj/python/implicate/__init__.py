"""Belief ascription and utterance classification for dialogue."""

import json
from pathlib import Path

from ._implicate import (
    Error,
    ParseError,
    ScenarioError,
    ValidationError,
    canonical_scenario,
    classify,
    contrary,
    normalize_term,
    run_json,
    run_text,
    unify,
)

__all__ = [
    "Error",
    "ParseError",
    "ScenarioError",
    "ValidationError",
    "canonical_scenario",
    "classify",
    "contrary",
    "normalize_term",
    "run",
    "run_file",
    "run_json",
    "run_text",
    "unify",
]


def run(text, max_depth=6, plan_bound=6, name=""):
    """Run scenario text and return the trace as a dict."""
    return json.loads(run_json(text, max_depth, plan_bound, name))


def run_file(path, max_depth=6, plan_bound=6):
    path = Path(path)
    return run(path.read_text(encoding="utf-8"), max_depth, plan_bound, path.name)
