"""
Knowledge-base files: loading default bases from ``.kb`` text files.

File format (UTF-8, line oriented):
  - ``#`` starts a comment that runs to the end of the line
  - an optional ``atoms: a b c`` header fixes the first atom indices;
    it must come before any rule
  - every other non-blank line is a rule ``<formula> ~> <formula>``
  - rule ids are assigned 1..n in line order

Shipped fixtures live in ``data/kb`` and are addressed by stem
(``load_fixture("penguin")``).
"""

from __future__ import annotations

from pathlib import Path

from default_reasoner.errors import FormulaSyntaxError, KnowledgeBaseSyntaxError, VocabularyError
from default_reasoner.log_setup import get_logger
from default_reasoner.logic import DEFAULT_CAPACITY, DefaultBase, Formula, Vocabulary
from default_reasoner.parser import parse_rule

KB_DIR = Path(__file__).parent.parent / "data" / "kb"
HEADER = "atoms:"

logger = get_logger(__name__)


def parse_kb(
    text: str,
    vocab: Vocabulary | None = None,
    *,
    source: str = "<string>",
    capacity: int = DEFAULT_CAPACITY,
) -> DefaultBase:
    """Read a knowledge base from text into a fresh (or the given) vocabulary."""
    vocab = vocab if vocab is not None else Vocabulary(capacity=capacity)
    pairs: list[tuple[Formula, Formula]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith(HEADER):
                if pairs:
                    raise KnowledgeBaseSyntaxError(source, line_no, "atoms header after rules")
                vocab.register_all(line[len(HEADER):].split())
                continue
            if "~>" not in line:
                raise KnowledgeBaseSyntaxError(source, line_no, "expected '<formula> ~> <formula>'")
            pairs.append(parse_rule(line, vocab))
        except FormulaSyntaxError as exc:
            raise KnowledgeBaseSyntaxError(source, line_no, str(exc)) from exc
        except VocabularyError as exc:
            raise KnowledgeBaseSyntaxError(source, line_no, str(exc)) from exc

    base = DefaultBase.build(pairs, vocab)
    logger.debug("loaded %d rules over %d atoms from %s", len(base), base.n_atoms, source)
    return base


def load_kb(
    path: str | Path, vocab: Vocabulary | None = None, *, capacity: int = DEFAULT_CAPACITY
) -> DefaultBase:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise KnowledgeBaseSyntaxError(str(path), 0, "file not found") from None
    except UnicodeDecodeError as exc:
        raise KnowledgeBaseSyntaxError(str(path), 0, f"not UTF-8 text ({exc.reason})") from None
    except OSError as exc:
        raise KnowledgeBaseSyntaxError(str(path), 0, exc.strerror or "unreadable") from None
    return parse_kb(text, vocab, source=str(path), capacity=capacity)


def available_fixtures() -> list[str]:
    return sorted(p.stem for p in KB_DIR.glob("*.kb"))


def fixture_path(name: str) -> Path:
    path = KB_DIR / f"{name}.kb"
    if not path.exists():
        raise KeyError(f"no fixture {name!r}; available: {', '.join(available_fixtures())}")
    return path


def load_fixture(name: str, *, capacity: int = DEFAULT_CAPACITY) -> DefaultBase:
    """A fresh base (with its own vocabulary) for a shipped fixture."""
    return load_kb(fixture_path(name), capacity=capacity)
