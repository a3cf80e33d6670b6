"""
Pytest configuration and fixtures for revkit tests.
"""
import logging
import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# Ensure project root is in path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

CORPUS_DIR = project_root / "corpus"
GOLDEN_DIR = Path(__file__).parent / "golden"

settings.register_profile("standard", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow,
                                                 HealthCheck.filter_too_much])
settings.register_profile("thorough", settings.get_profile("standard"), max_examples=500)
settings.register_profile("ci", settings.get_profile("standard"), derandomize=True,
                          print_blob=True)
settings.load_profile(os.environ.get("REVKIT_HYPOTHESIS_PROFILE", "standard"))


def load_fixture(name: str):
    """Parse a corpus fixture by name."""
    from core.textformat import parse_dfa
    return parse_dfa((CORPUS_DIR / f"{name}.dfa").read_text(encoding="utf-8"))


@pytest.fixture
def corpus():
    """Loader for corpus fixtures: corpus('fig3_min')."""
    return load_fixture


@pytest.fixture
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR


@pytest.fixture
def fig3_min():
    return load_fixture("fig3_min")


@pytest.fixture
def fig8_min():
    return load_fixture("fig8_min")


@pytest.fixture
def fig9_min():
    return load_fixture("fig9_min")


@pytest.fixture
def ab_star():
    return load_fixture("ab_star")


@pytest.fixture
def small_dfa():
    """Two-state automaton for a*b: q0 -a-> q0, q0 -b-> q1."""
    from core.automaton import Dfa
    return Dfa.build(["q0", "q1"], "ab", "q0", ["q1"],
                     [("q0", "a", "q0"), ("q0", "b", "q1")])


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop handlers installed by the CLI so later tests do not write to closed streams."""
    yield
    root = logging.getLogger()
    for handler in root.handlers[:]:
        if not type(handler).__module__.startswith("_pytest"):
            root.removeHandler(handler)
            handler.close()
    root.setLevel(logging.WARNING)
