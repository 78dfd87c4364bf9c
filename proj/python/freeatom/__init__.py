"""Free algebras of discriminator varieties and cover-term synthesis."""

import json
import os

from ._core import (
    CapExceeded,
    Error,
    FiniteAlgebra,
    FreeAlgebra,
    ParseError,
    PreconditionError,
    Presentation,
    SwitchingTermError,
    build_free_algebra,
    load_algebras,
    load_presentation,
    relation,
    run_cli,
)
from . import _core


def fixture_dir():
    """Bundled fixtures: next to the package when installed, else the source tree."""
    here = os.path.join(os.path.dirname(__file__), "fixtures")
    return here if os.path.isdir(here) else _core.default_fixture_dir()


def fixture_names():
    return _core.fixture_names(fixture_dir())


def fixture_presentation(name):
    return _core.fixture_presentation(name, fixture_dir())


def find_cover(free_algebra, lhs, rhs, alpha, beta):
    """Cover certificate for alpha < beta as a dict."""
    return json.loads(_core.find_cover_json(free_algebra, lhs, rhs, alpha, beta))


def atomic_check(free_algebra, lhs, rhs, oracle=True, synthesis=True):
    """Atomicity report as a dict."""
    return json.loads(_core.atomic_check_json(free_algebra, lhs, rhs, oracle, synthesis))


__all__ = [
    "CapExceeded",
    "Error",
    "FiniteAlgebra",
    "FreeAlgebra",
    "ParseError",
    "PreconditionError",
    "Presentation",
    "SwitchingTermError",
    "atomic_check",
    "build_free_algebra",
    "find_cover",
    "fixture_dir",
    "fixture_names",
    "fixture_presentation",
    "load_algebras",
    "load_presentation",
    "relation",
    "run_cli",
]
