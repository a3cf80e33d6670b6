"""
Morphisms between automata, isomorphism and quotients.
"""
import logging
from collections import deque
from typing import Dict, Iterable, Mapping, Optional

from core.automaton import Dfa
from core.models import Morphism

logger = logging.getLogger(__name__)


def find_morphism(a: Dfa, b: Dfa) -> Optional[Morphism]:
    """
    The unique morphism from a onto b, if any.

    Propagates φ(initial_a) = initial_b along transitions; fails on an inconsistent
    image, a finality mismatch, or a letter defined on one side only.
    """
    letters = sorted(set(a.alphabet) | set(b.alphabet))
    mapping: Dict[str, str] = {a.initial: b.initial}
    queue = deque([a.initial])
    while queue:
        state = queue.popleft()
        image = mapping[state]
        if (state in a.finals) != (image in b.finals):
            return None
        for letter in letters:
            target = a.delta.get((state, letter))
            target_image = b.delta.get((image, letter))
            if (target is None) != (target_image is None):
                return None
            if target is None:
                continue
            known = mapping.get(target)
            if known is None:
                mapping[target] = target_image
                queue.append(target)
            elif known != target_image:
                return None
    if len(mapping) != a.size or len(set(mapping.values())) != b.size:
        return None
    return Morphism(a, b, mapping)


def isomorphic(a: Dfa, b: Dfa) -> bool:
    """Same automaton up to renaming of states."""
    return a.canonical_form() == b.canonical_form()


def quotient(dfa: Dfa, classes: Iterable[Iterable[str]]) -> Dfa:
    """
    Merge each class of states into its canonical-first member.

    The caller is responsible for the classes being transition-closed; conflicting
    targets would make the result nondeterministic and are rejected by Dfa.build.
    """
    representative: Dict[str, str] = {}
    for members in classes:
        ordered = dfa.sort_states(members)
        for s in ordered:
            representative[s] = ordered[0]
    return rename_onto(dfa, representative)


def rename_onto(dfa: Dfa, representative: Mapping[str, str]) -> Dfa:
    name = lambda s: representative.get(s, s)
    states = [s for s in dfa.canonical_order if name(s) == s]
    transitions = [(name(src), a, name(dst)) for src, a, dst in dfa.transitions()]
    return Dfa.build(states, dfa.alphabet, name(dfa.initial),
                     {name(s) for s in dfa.finals}, transitions)
