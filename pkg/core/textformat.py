"""
Plain-text automaton format.

    dfa
    alphabet: a b
    initial: q0
    final: q1 q2
    q0 a q1
    ...

A token starting with `#` starts a comment that runs to the end of the line, so `#`
inside a name (as in the copy name `q#1`) is part of the name.
"""
import logging
import re
from typing import Dict, List, Tuple

from core.automaton import COMMENT_MARK, Dfa
from core.errors import FormatError, InputError, UselessState

logger = logging.getLogger(__name__)

IDENTIFIER = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_#'.\-]*\Z")
HEADERS = ("alphabet:", "initial:", "final:")


def _tokens(line: str) -> List[str]:
    tokens = []
    for token in line.split():
        if token.startswith(COMMENT_MARK):
            break
        tokens.append(token)
    return tokens


def _check_name(name: str, line: int) -> str:
    if not IDENTIFIER.match(name):
        raise FormatError(f"'{name}' is not a valid state name", line)
    return name


def parse_dfa(text: str, allow_useless: bool = False) -> Dfa:
    """
    Parse automaton text.

    Args:
        text: Document in the format above
        allow_useless: Trim useless states instead of rejecting them

    Returns:
        The validated Dfa
    """
    significant: List[Tuple[int, List[str]]] = []
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = _tokens(line)
        if tokens:
            significant.append((number, tokens))

    if not significant or significant[0][1] != ["dfa"]:
        line = significant[0][0] if significant else 1
        raise FormatError("document must start with 'dfa'", line)

    headers: Dict[str, List[str]] = {}
    for position, key in enumerate(HEADERS, start=1):
        if position >= len(significant):
            raise FormatError(f"missing '{key}' line", None)
        number, tokens = significant[position]
        if tokens[0] != key:
            raise FormatError(f"expected '{key}'", number)
        headers[key] = tokens[1:]

    alphabet = headers["alphabet:"]
    for letter in alphabet:
        if len(letter) != 1:
            raise FormatError(f"letter '{letter}' is not a single character",
                              significant[1][0])
    initial_tokens = headers["initial:"]
    if len(initial_tokens) != 1:
        raise FormatError("exactly one initial state expected", significant[2][0])
    initial = _check_name(initial_tokens[0], significant[2][0])
    finals = [_check_name(name, significant[3][0]) for name in headers["final:"]]

    rows = significant[4:]
    declared = [initial] + finals + [tokens[0] for _, tokens in rows if len(tokens) == 3]
    known = set(declared)
    delta: Dict[Tuple[str, str], str] = {}
    for number, tokens in rows:
        if len(tokens) != 3:
            raise FormatError("expected 'SOURCE LETTER TARGET'", number)
        src, letter, dst = tokens
        _check_name(src, number)
        _check_name(dst, number)
        if letter not in alphabet:
            raise FormatError(f"unknown letter '{letter}'", number)
        if dst not in known:
            raise FormatError(f"undeclared state '{dst}'", number)
        if (src, letter) in delta and delta[(src, letter)] != dst:
            raise FormatError(f"second '{letter}'-transition from {src}", number)
        delta[(src, letter)] = dst

    try:
        dfa = Dfa.build(declared, alphabet, initial, finals, delta, check_useful=not allow_useless)
    except UselessState:
        raise
    except InputError as e:
        raise FormatError(str(e)) from e
    if allow_useless:
        useless = dfa.useless_states()
        if useless:
            logger.warning(f"Trimming useless states: {' '.join(useless)}")
            dfa = dfa.trim()
    return dfa


def emit_dfa(dfa: Dfa) -> str:
    """Canonical text: states in BFS order, letters sorted."""
    header = lambda key, items: " ".join([key] + list(items))
    lines = [
        "dfa",
        header("alphabet:", dfa.alphabet),
        header("initial:", [dfa.initial]),
        header("final:", [s for s in dfa.canonical_order if s in dfa.finals]),
    ]
    lines.extend(f"{src} {letter} {dst}" for src, letter, dst in dfa.transitions())
    return "\n".join(lines) + "\n"
