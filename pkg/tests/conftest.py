"""
Shared pytest fixtures for the default reasoner test suite.

Query parsing registers new atoms in a base's vocabulary, so tests that
assert exact world sets load a fresh base through ``fixture_base`` instead of
sharing the session-scoped reasoners.
"""
import os

import pytest

# Keep .env files on the developer's machine out of the test run
os.environ.setdefault("EBF_LOG_LEVEL", "WARNING")


@pytest.fixture
def fixture_base():
    """Factory: a freshly parsed shipped knowledge base, e.g. fixture_base("penguin")."""
    from default_reasoner.knowledge_base import load_fixture
    return load_fixture


@pytest.fixture(scope="session")
def reasoners():
    """One compiled DefaultReasoner per consistent shipped fixture."""
    from default_reasoner.knowledge_base import load_fixture
    from default_reasoner.reasoner import DefaultReasoner

    names = ("penguin", "legs", "wings", "quaker2", "ecologist", "nixon", "single", "empty")
    return {name: DefaultReasoner(load_fixture(name), source=name) for name in names}


@pytest.fixture(scope="session")
def random_suite():
    """200 seeded consistent bases (at most 5 rules over at most 4 atoms), 10 queries each."""
    from data.random_bases import generate_suite
    return generate_suite(seed=7, size=200, max_rules=5, max_atoms=4, queries=10)


@pytest.fixture(scope="session")
def compiled_suite(random_suite):
    """(case, LcdModel or None, error text) for every random base; solver failures are kept."""
    from default_reasoner.engines.lcd import compile_lcd
    from default_reasoner.errors import ReasonerError

    compiled = []
    for case in random_suite:
        try:
            compiled.append((case, compile_lcd(case.base), None))
        except ReasonerError as exc:
            compiled.append((case, None, str(exc)))
    return compiled
