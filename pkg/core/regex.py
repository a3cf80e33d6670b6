"""
Regular expressions to minimum DFAs.

Syntax: single-character literals, juxtaposition for concatenation, `+` for union,
postfix `*`, parentheses, and `ε` (or an empty group) for the empty word. Whitespace is
ignored. The pattern is compiled with Thompson's construction, determinized by the
subset construction and minimized.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Set, Tuple

from core.automaton import COMMENT_MARK, EPSILON, Dfa
from core.errors import InputError
from core.minimize import minimize

logger = logging.getLogger(__name__)

_SPECIAL = set("+*()")


@dataclass
class _Nfa:
    """Thompson NFA; states are integers, None labels ε-moves."""
    moves: Dict[int, List[Tuple[object, int]]] = field(default_factory=dict)
    letters: Set[str] = field(default_factory=set)

    def new_state(self) -> int:
        state = len(self.moves)
        self.moves[state] = []
        return state

    def connect(self, src: int, letter, dst: int) -> None:
        self.moves[src].append((letter, dst))


class _Parser:
    """Recursive descent over the pattern, emitting Thompson fragments (start, end)."""

    def __init__(self, pattern: str):
        self.text = "".join(pattern.split())
        self.pos = 0
        self.nfa = _Nfa()

    def parse(self) -> Tuple[int, int]:
        fragment = self._union()
        if self.pos != len(self.text):
            raise InputError(f"unexpected '{self.text[self.pos]}' at position {self.pos}")
        return fragment

    def _peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def _epsilon(self) -> Tuple[int, int]:
        start, end = self.nfa.new_state(), self.nfa.new_state()
        self.nfa.connect(start, None, end)
        return start, end

    def _union(self) -> Tuple[int, int]:
        branches = [self._concat()]
        while self._peek() == "+":
            self.pos += 1
            branches.append(self._concat())
        if len(branches) == 1:
            return branches[0]
        start, end = self.nfa.new_state(), self.nfa.new_state()
        for b_start, b_end in branches:
            self.nfa.connect(start, None, b_start)
            self.nfa.connect(b_end, None, end)
        return start, end

    def _concat(self) -> Tuple[int, int]:
        pieces = []
        while self._peek() is not None and self._peek() not in "+)":
            pieces.append(self._star())
        if not pieces:
            return self._epsilon()
        start, end = pieces[0]
        for p_start, p_end in pieces[1:]:
            self.nfa.connect(end, None, p_start)
            end = p_end
        return start, end

    def _star(self) -> Tuple[int, int]:
        fragment = self._atom()
        while self._peek() == "*":
            self.pos += 1
            inner_start, inner_end = fragment
            start, end = self.nfa.new_state(), self.nfa.new_state()
            self.nfa.connect(start, None, inner_start)
            self.nfa.connect(start, None, end)
            self.nfa.connect(inner_end, None, inner_start)
            self.nfa.connect(inner_end, None, end)
            fragment = (start, end)
        return fragment

    def _atom(self) -> Tuple[int, int]:
        char = self._peek()
        if char == "(":
            self.pos += 1
            fragment = self._union()
            if self._peek() != ")":
                raise InputError(f"missing ')' at position {self.pos}")
            self.pos += 1
            return fragment
        if char == "*":
            raise InputError(f"'*' with nothing to repeat at position {self.pos}")
        if char == COMMENT_MARK:
            raise InputError(f"'{COMMENT_MARK}' cannot be a letter (position {self.pos})")
        self.pos += 1
        if char == EPSILON:
            return self._epsilon()
        start, end = self.nfa.new_state(), self.nfa.new_state()
        self.nfa.connect(start, char, end)
        self.nfa.letters.add(char)
        return start, end


def _closure(nfa: _Nfa, states) -> FrozenSet[int]:
    stack = list(states)
    seen = set(states)
    while stack:
        state = stack.pop()
        for letter, target in nfa.moves[state]:
            if letter is None and target not in seen:
                seen.add(target)
                stack.append(target)
    return frozenset(seen)


def regex_to_dfa(pattern: str) -> Dfa:
    """
    Compile a regular expression to its minimum DFA.

    Args:
        pattern: e.g. "(aa)*+a*ba*"

    Returns:
        Minimum DFA over the letters occurring in the pattern
    """
    parser = _Parser(pattern)
    start, end = parser.parse()
    nfa = parser.nfa
    letters = sorted(nfa.letters)

    first = _closure(nfa, [start])
    names = {first: "q0"}
    delta = {}
    queue = deque([first])
    while queue:
        current = queue.popleft()
        for letter in letters:
            moved = [t for s in current for l, t in nfa.moves[s] if l == letter]
            if not moved:
                continue
            target = _closure(nfa, moved)
            if target not in names:
                names[target] = f"q{len(names)}"
                queue.append(target)
            delta[(names[current], letter)] = names[target]

    finals = [name for subset, name in names.items() if end in subset]
    subset_dfa = Dfa(tuple(names.values()), tuple(letters), "q0", frozenset(finals), delta).trim()
    minimum, _ = minimize(subset_dfa)
    logger.debug(f"Compiled '{pattern}': {len(names)} subsets, {minimum.size} states")
    return minimum
