"""
Input resolution for the command line: `-`, file paths and `corpus:NAME` fixtures.
"""
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import click

from core.automaton import Dfa, show_word
from core.errors import InputError, RevkitError
from core.minimize import equivalent
from core.models import AppConfig
from core.regex import regex_to_dfa
from core.textformat import parse_dfa

logger = logging.getLogger(__name__)

CORPUS_PREFIX = "corpus:"
CORPUS_SUFFIX = ".dfa"
CAPTION = re.compile(r"^\s*#\s*regex:\s*(?P<regex>\S.*?)\s*$", re.MULTILINE)


@dataclass(frozen=True)
class CorpusEntry:
    """One fixture file and the regex its caption comment gives, if any."""
    name: str
    path: Path
    regex: Optional[str]


@dataclass(frozen=True)
class CorpusCheck:
    entry: CorpusEntry
    ok: bool
    detail: str = ""


def caption_regex(text: str) -> Optional[str]:
    """Regex from the first `# regex: ...` comment of a fixture."""
    match = CAPTION.search(text)
    return match.group("regex") if match else None


def corpus_entries(corpus_dir: Path) -> List[CorpusEntry]:
    """All fixtures in the corpus directory, sorted by name."""
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise InputError(f"corpus directory not found: {corpus_dir}")
    entries = []
    for path in sorted(corpus_dir.glob(f"*{CORPUS_SUFFIX}")):
        text = path.read_text(encoding="utf-8", errors="replace")
        entries.append(CorpusEntry(path.stem, path, caption_regex(text)))
    return entries


def resolve_path(source: str, corpus_dir: Path) -> Path:
    """Map `corpus:NAME` to its fixture file; other sources are plain paths."""
    if source.startswith(CORPUS_PREFIX):
        name = source[len(CORPUS_PREFIX):]
        path = Path(corpus_dir) / f"{name}{CORPUS_SUFFIX}"
        if not path.is_file():
            raise InputError(f"no corpus fixture named '{name}' in {corpus_dir}")
        return path
    path = Path(source)
    if not path.is_file():
        raise InputError(f"file not found: {source}")
    return path


def read_source(source: str, corpus_dir: Path) -> str:
    """Text of one source; unreadable or non-UTF-8 input raises InputError."""
    try:
        if source == "-":
            return click.get_binary_stream("stdin").read().decode("utf-8")
        return resolve_path(source, corpus_dir).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise InputError(f"{source} is not UTF-8 text: {e.reason} at byte {e.start}") from e
    except OSError as e:
        raise InputError(f"cannot read {source}: {e.strerror or e}") from e


def load_dfa(source: str, config: AppConfig) -> Dfa:
    """Read and parse one automaton source."""
    text = read_source(source, config.corpus_dir)
    logger.debug(f"Parsing {source} ({len(text)} bytes)")
    return parse_dfa(text, allow_useless=config.allow_useless)


def check_entry(entry: CorpusEntry) -> CorpusCheck:
    """Compare a fixture with the automaton of its caption regex."""
    if entry.regex is None:
        return CorpusCheck(entry, False, "no '# regex:' caption")
    try:
        dfa = parse_dfa(read_source(str(entry.path), entry.path.parent))
        same, word = equivalent(dfa, regex_to_dfa(entry.regex))
    except RevkitError as e:
        return CorpusCheck(entry, False, str(e))
    if same:
        return CorpusCheck(entry, True)
    return CorpusCheck(entry, False, f"languages differ on '{show_word(word)}'")


def check_corpus(corpus_dir: Path) -> List[CorpusCheck]:
    results = [check_entry(entry) for entry in corpus_entries(corpus_dir)]
    failed = [r.entry.name for r in results if not r.ok]
    if failed:
        logger.warning(f"Corpus check failed for: {', '.join(failed)}")
    return results


class DfaSource(click.ParamType):
    """Click parameter that loads an automaton from `-`, a path or `corpus:NAME`."""
    name = "dfa"

    def convert(self, value, param, ctx):
        if isinstance(value, Dfa):
            return value
        config = ctx.find_object(AppConfig) if ctx is not None else None
        try:
            return load_dfa(value, config or AppConfig())
        except RevkitError as e:
            self.fail(f"{value}: {e}", param, ctx)


DFA = DfaSource()
