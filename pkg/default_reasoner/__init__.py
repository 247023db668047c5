"""Default reasoning over epsilon-belief functions: P, Z, LCD and the strata orders."""
from default_reasoner.knowledge_base import load_fixture, load_kb, parse_kb
from default_reasoner.reasoner import ENGINES, DefaultReasoner

__all__ = ["DefaultReasoner", "ENGINES", "load_fixture", "load_kb", "parse_kb"]
