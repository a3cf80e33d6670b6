"""
Deterministic finite automata with partial transition functions.

A Dfa is immutable once built. Every constructor path validates that the transition
function is deterministic and, unless told otherwise, that every state is useful
(reachable from the initial state and able to reach a final state).
"""
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple, Union

import xxhash

from core.errors import InputError, UselessState

logger = logging.getLogger(__name__)

# Letters are single characters, so a word is simply a string; "" is the empty word.
Word = str
Transition = Tuple[str, str, str]
EPSILON = "ε"
# Starts a comment in the text format, so it can never be a letter.
COMMENT_MARK = "#"


def show_word(word: Word) -> str:
    """Printable form of a word (ε for the empty word)."""
    return word if word else EPSILON


@dataclass(frozen=True)
class Dfa:
    """A partial DFA (Q, Σ, δ, q_I, F)."""
    states: Tuple[str, ...]
    alphabet: Tuple[str, ...]
    initial: str
    finals: FrozenSet[str]
    delta: Mapping[Tuple[str, str], str]

    @classmethod
    def build(cls, states: Iterable[str], alphabet: Iterable[str], initial: str,
              finals: Iterable[str],
              transitions: Union[Iterable[Transition], Mapping[Tuple[str, str], str]],
              check_useful: bool = True) -> "Dfa":
        """
        Validate the parts of an automaton and assemble it.

        Args:
            states: State names; order is kept, duplicates dropped
            alphabet: Letters (single characters)
            initial: Initial state
            finals: Accepting states
            transitions: (source, letter, target) triples or a {(source, letter): target} map
            check_useful: Raise UselessState when some state is not useful

        Returns:
            The validated Dfa
        """
        state_list = list(dict.fromkeys(states))
        known = set(state_list)
        letters = tuple(sorted(set(alphabet)))
        for letter in letters:
            if len(letter) != 1:
                raise InputError(f"letter '{letter}' is not a single character")
            if letter in (COMMENT_MARK, EPSILON) or letter.isspace():
                raise InputError(f"letter {letter!r} is reserved")
        if initial not in known:
            raise InputError(f"initial state {initial} is not a state")
        final_set = frozenset(finals)
        stray = sorted(final_set - known)
        if stray:
            raise InputError(f"final states not declared: {' '.join(stray)}")

        if isinstance(transitions, Mapping):
            triples = [(src, letter, dst) for (src, letter), dst in transitions.items()]
        else:
            triples = list(transitions)

        delta: Dict[Tuple[str, str], str] = {}
        for src, letter, dst in triples:
            if src not in known or dst not in known:
                raise InputError(f"transition {src} {letter} {dst} uses an unknown state")
            if letter not in letters:
                raise InputError(f"transition {src} {letter} {dst} uses a letter outside the alphabet")
            previous = delta.get((src, letter))
            if previous is not None and previous != dst:
                raise InputError(f"state {src} has two transitions on '{letter}'")
            delta[(src, letter)] = dst

        dfa = cls(tuple(state_list), letters, initial, final_set, delta)
        if check_useful:
            useless = dfa.useless_states()
            if useless:
                raise UselessState(useless)
        return dfa

    # -- basic access -------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.states)

    def step(self, state: str, letter: str) -> Optional[str]:
        return self.delta.get((state, letter))

    def run(self, word: Word, start: Optional[str] = None) -> Optional[str]:
        """
        Extend δ to words.

        Returns:
            The state reached from `start` (default: the initial state), or None
            when some step is undefined
        """
        state = self.initial if start is None else start
        if state not in self._index:
            raise InputError(f"unknown state {state}")
        for letter in word:
            if letter not in self.alphabet:
                raise InputError(f"letter '{letter}' is not in the alphabet")
            if state is None:
                continue
            state = self.delta.get((state, letter))
        return state

    def accepts(self, word: Word) -> bool:
        return self.run(word) in self.finals

    def reverse_delta(self, state: str, letter: str) -> FrozenSet[str]:
        """δ^R(state, letter): the states entering `state` on `letter`."""
        if state not in self._index:
            raise InputError(f"unknown state {state}")
        if letter not in self.alphabet:
            raise InputError(f"letter '{letter}' is not in the alphabet")
        return self._reverse.get((state, letter), frozenset())

    def in_letters(self, state: str) -> List[str]:
        """Sorted letters on which `state` has incoming transitions."""
        return [a for a in self.alphabet if (state, a) in self._reverse]

    def successors(self, state: str) -> List[Tuple[str, str]]:
        """(letter, target) pairs leaving `state`, in letter order."""
        return [(a, self.delta[(state, a)]) for a in self.alphabet if (state, a) in self.delta]

    def transitions(self) -> List[Transition]:
        """All transitions, sorted by canonical source index then letter."""
        return [(src, a, dst) for src in self.canonical_order for a, dst in self.successors(src)]

    @cached_property
    def _reverse(self) -> Dict[Tuple[str, str], FrozenSet[str]]:
        preimages: Dict[Tuple[str, str], Set[str]] = {}
        for (src, letter), dst in self.delta.items():
            preimages.setdefault((dst, letter), set()).add(src)
        return {key: frozenset(value) for key, value in preimages.items()}

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {state: i for i, state in enumerate(self.states)}

    # -- canonical order ----------------------------------------------------

    @cached_property
    def canonical_order(self) -> Tuple[str, ...]:
        """States in BFS order from the initial state, letters explored in sorted order."""
        seen = {self.initial}
        order = [self.initial]
        queue = deque([self.initial])
        while queue:
            state = queue.popleft()
            for _, target in self.successors(state):
                if target not in seen:
                    seen.add(target)
                    order.append(target)
                    queue.append(target)
        order.extend(s for s in self.states if s not in seen)
        return tuple(order)

    @cached_property
    def canonical_index(self) -> Dict[str, int]:
        return {state: i for i, state in enumerate(self.canonical_order)}

    def sort_states(self, states: Iterable[str]) -> List[str]:
        """Sort states by canonical index."""
        return sorted(states, key=self.canonical_index.__getitem__)

    def canonical_form(self) -> Tuple:
        """A renaming-invariant description; equal forms mean isomorphic automata."""
        index = self.canonical_index
        used = tuple(sorted({letter for (_, letter) in self.delta}))
        finals = tuple(sorted(index[s] for s in self.finals))
        edges = tuple((index[src], a, index[dst]) for src, a, dst in self.transitions())
        return (self.size, used, finals, edges)

    def fingerprint(self) -> str:
        """xxHash3-64 hex digest of the canonical form."""
        return xxhash.xxh3_64(repr(self.canonical_form()).encode("utf-8")).hexdigest()

    # -- usefulness ---------------------------------------------------------

    def reachable_states(self, start: Optional[str] = None) -> Set[str]:
        origin = self.initial if start is None else start
        seen = {origin}
        queue = deque([origin])
        while queue:
            state = queue.popleft()
            for _, target in self.successors(state):
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
        return seen

    def productive_states(self) -> Set[str]:
        seen = set(self.finals)
        queue = deque(self.finals)
        while queue:
            state = queue.popleft()
            for letter in self.alphabet:
                for source in self._reverse.get((state, letter), ()):
                    if source not in seen:
                        seen.add(source)
                        queue.append(source)
        return seen

    def useless_states(self) -> List[str]:
        useful = self.reachable_states() & self.productive_states()
        return [s for s in self.states if s not in useful]

    def trim(self) -> "Dfa":
        """Drop every state that is unreachable or cannot reach a final state."""
        useful = self.reachable_states() & self.productive_states()
        if self.initial not in useful:
            raise InputError("the automaton accepts no word")
        if len(useful) == self.size:
            return self
        logger.debug(f"Trimming {self.size - len(useful)} useless states")
        delta = {(src, a): dst for (src, a), dst in self.delta.items()
                 if src in useful and dst in useful}
        return Dfa(tuple(s for s in self.states if s in useful), self.alphabet, self.initial,
                   self.finals & useful, delta)

    # -- derived automata ---------------------------------------------------

    def shortest_words(self, start: Optional[str] = None,
                       within: Optional[Set[str]] = None) -> Dict[str, Word]:
        """
        Shortest word from `start` to every state it reaches.

        Args:
            start: Origin state (default: initial)
            within: Restrict the search to these states

        Returns:
            {state: word}; BFS with sorted letters, so ties go to the smaller word
        """
        origin = self.initial if start is None else start
        words = {origin: ""}
        queue = deque([origin])
        while queue:
            state = queue.popleft()
            for letter, target in self.successors(state):
                if target in words or (within is not None and target not in within):
                    continue
                words[target] = words[state] + letter
                queue.append(target)
        return words


def run(dfa: Dfa, word: Word) -> Optional[str]:
    """State reached from the initial state on `word`, or None if undefined."""
    return dfa.run(word)


def reverse_delta(dfa: Dfa, state: str, letter: str) -> FrozenSet[str]:
    return dfa.reverse_delta(state, letter)


def fresh_name(base: str, taken: Set[str]) -> str:
    """`base`, or `base` with a numeric suffix, avoiding every name in `taken`."""
    if base not in taken:
        return base
    i = 1
    while f"{base}.{i}" in taken:
        i += 1
    return f"{base}.{i}"
