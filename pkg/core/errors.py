"""
Exceptions raised by the revkit core.

Library code raises these and never prints; the CLI maps any RevkitError to exit code 2.
"""
from typing import Iterable, Optional


class RevkitError(Exception):
    """Base class for every error revkit raises on purpose."""
    pass


class InputError(RevkitError):
    """Raised when an automaton, word or parameter is malformed."""
    pass


class FormatError(InputError):
    """Raised when automaton text cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UselessState(InputError):
    """Raised when an automaton has unreachable or unproductive states."""

    def __init__(self, states: Iterable[str]):
        self.states = tuple(states)
        super().__init__(f"useless states: {' '.join(self.states)}")


class NotMinimized(RevkitError):
    """Raised when an operation needs the minimum DFA but got a larger one."""
    pass


class ForbiddenPattern(RevkitError):
    """Raised when the language is not reversible; carries the pattern witness."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            f"forbidden pattern: {witness.p} and {witness.q} enter {witness.r} "
            f"on '{witness.a}', closing word '{witness.w}'"
        )


class NotReversible(RevkitError):
    """Raised when a reversible DFA was required."""
    pass


class NotEquivalent(RevkitError):
    """Raised when two automata that should accept the same language do not."""
    pass


class NoMorphism(RevkitError):
    """Raised when no morphism exists between two automata."""
    pass


class HypothesisViolated(RevkitError):
    """Raised when a state with several copies is entered on more than one letter."""

    def __init__(self, state: str):
        self.state = state
        super().__init__(f"state {state} has several copies and several entry letters")


class NotEquivalentStates(RevkitError):
    """Raised when asked to merge two inequivalent states."""
    pass


class UniqueMinimal(RevkitError):
    """Raised when the language has a single minimal reversible DFA."""
    pass


class WitnessInvalid(RevkitError):
    """Raised when a hypothesis witness does not hold for the given automaton."""
    pass


class NTooSmall(RevkitError):
    """Raised when the requested loop size is below the copy count of the loop component."""
    pass
