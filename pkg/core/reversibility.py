"""
Irreversible states, the reversible/irreversible split and the forbidden pattern.

A state is irreversible when two transitions on the same letter enter it. A regular
language is reversible iff its minimum DFA has no irreversible state r entered on some
letter from a state lying in r's own SCC.
"""
import logging
from collections import deque
from typing import List, Optional, Set

from core.automaton import Dfa
from core.errors import NotMinimized
from core.minimize import minimize
from core.models import ForbiddenPatternWitness, PartSplit
from core.scc import sccs

logger = logging.getLogger(__name__)


def irreversible_states(dfa: Dfa) -> Set[str]:
    """States with at least two incoming transitions on a same letter."""
    return {
        state for state in dfa.states
        if any(len(dfa.reverse_delta(state, letter)) > 1 for letter in dfa.alphabet)
    }


def split_parts(dfa: Dfa) -> PartSplit:
    """Irreversible part = everything reachable from an irreversible state."""
    irreversible = set(irreversible_states(dfa))
    queue = deque(irreversible)
    while queue:
        state = queue.popleft()
        for _, target in dfa.successors(state):
            if target not in irreversible:
                irreversible.add(target)
                queue.append(target)
    reversible = frozenset(s for s in dfa.states if s not in irreversible)
    border = frozenset(
        (src, letter, dst) for (src, letter), dst in dfa.delta.items()
        if src in reversible and dst in irreversible
    )
    return PartSplit(reversible, frozenset(irreversible), border)


def is_reversible_dfa(dfa: Dfa) -> bool:
    return not irreversible_states(dfa)


def find_pattern_in(dfa: Dfa) -> Optional[ForbiddenPatternWitness]:
    """
    Search a same-letter in-pair at r with one source inside r's SCC.

    No minimality check; find_forbidden_pattern adds it.
    """
    decomposition = sccs(dfa)
    for r in dfa.canonical_order:
        for letter in dfa.alphabet:
            sources = dfa.sort_states(dfa.reverse_delta(r, letter))
            if len(sources) < 2:
                continue
            inside = [s for s in sources if decomposition.same_component(s, r)]
            if not inside:
                continue
            q = inside[0]
            p = next(s for s in sources if s != q)
            # shortest r -> q path stays in the component
            w = dfa.shortest_words(r, within=set(decomposition.component(r)))[q]
            witness = ForbiddenPatternWitness(p=p, q=q, a=letter, w=w, r=r)
            logger.debug(f"Forbidden pattern at {r}: {witness}")
            return witness
    return None


def _has_equivalent_states(dfa: Dfa) -> bool:
    minimum, _ = minimize(dfa)
    return minimum.size != dfa.size


def find_forbidden_pattern(min_dfa: Dfa) -> Optional[ForbiddenPatternWitness]:
    """
    Look for the forbidden pattern in a minimum DFA.

    Args:
        min_dfa: The minimum DFA of the language (checked)

    Returns:
        A ForbiddenPatternWitness, or None when the language is reversible
    """
    require_minimum(min_dfa, "find_forbidden_pattern")
    return find_pattern_in(min_dfa)


def is_reversible_language(dfa: Dfa) -> bool:
    minimum, _ = minimize(dfa)
    return find_pattern_in(minimum) is None


def require_minimum(dfa: Dfa, operation: str) -> None:
    """Raise NotMinimized unless dfa is a minimum DFA."""
    if _has_equivalent_states(dfa):
        raise NotMinimized(f"{operation} needs a minimum DFA")


def irreversible_letters(dfa: Dfa, state: str) -> List[str]:
    """Letters on which `state` is entered at least twice."""
    return [a for a in dfa.alphabet if len(dfa.reverse_delta(state, a)) > 1]
