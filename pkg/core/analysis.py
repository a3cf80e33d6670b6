"""
Decision procedures on reversible DFAs.

Minimality of a reversible DFA, uniqueness of the minimal reversible DFA of a language,
the W_q sets that count copies, and reduced-ness with greedy reduction by merging
equivalent states.
"""
import logging
from collections import deque
from multiprocessing import Pool
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from core.automaton import Dfa, Word
from core.conversion import copy_counts
from core.errors import (ForbiddenPattern, HypothesisViolated, InputError, NoMorphism,
                         NotEquivalent, NotEquivalentStates, NotReversible)
from core.minimize import minimize
from core.models import (CopyCount, MergeClosure, MinimalityWitness, Morphism,
                         UniquenessWitness, WSet)
from core.morphism import find_morphism, quotient
from core.reversibility import (find_pattern_in, irreversible_letters, irreversible_states,
                                is_reversible_dfa, require_minimum, split_parts)
from core.scc import sccs
from core.unionfind import UnionFind

logger = logging.getLogger(__name__)


def _require_pattern_free(m: Dfa, operation: str) -> None:
    require_minimum(m, operation)
    witness = find_pattern_in(m)
    if witness is not None:
        raise ForbiddenPattern(witness)


def _require_reversible(a: Dfa) -> None:
    if not is_reversible_dfa(a):
        raise NotReversible(f"states {' '.join(a.sort_states(irreversible_states(a)))} "
                            f"are entered twice on a letter")


def fiber_sizes(a: Dfa, m: Dfa) -> Dict[str, int]:
    """#φ⁻¹(s) for every state s of m, φ the morphism a → m."""
    morphism = find_morphism(a, m)
    if morphism is None:
        raise NoMorphism("no morphism from the first automaton onto the second")
    return morphism.fiber_sizes()


def backward_split(a: Dfa, morphism: Morphism, states: Sequence[str]
                   ) -> Optional[Tuple[Word, Tuple[str, str], Tuple[str, str]]]:
    """
    Find x such that every state in `states` can be reached by x and two of the
    x-predecessors have different images under `morphism`.

    Backward steps in a reversible DFA are partial functions, so the search runs over
    tuples of states and visits each tuple once.

    Returns:
        (x, (p', p''), (q', q'')) with δ(p', x) = q' and δ(p'', x) = q'', or None
    """
    start = tuple(states)
    seen = {start}
    queue = deque([(start, "")])
    while queue:
        current, word = queue.popleft()
        for letter in a.alphabet:
            previous = []
            for state in current:
                sources = a.reverse_delta(state, letter)
                if not sources:
                    break
                previous.append(next(iter(sources)))
            else:
                origins = tuple(previous)
                x = letter + word
                images = [morphism(s) for s in origins]
                for i in range(len(origins)):
                    for j in range(i + 1, len(origins)):
                        if images[i] != images[j]:
                            return x, (origins[i], origins[j]), (start[i], start[j])
                if origins not in seen:
                    seen.add(origins)
                    queue.append((origins, x))
    return None


def is_minimal_revdfa(a: Dfa, m: Dfa) -> Tuple[bool, Dict[str, MinimalityWitness]]:
    """
    Decide whether a reversible DFA is minimal among the reversible DFAs for L(m).

    Args:
        a: Reversible DFA
        m: Minimum DFA of the same language

    Returns:
        (minimal, witnesses); one witness per state of m with several copies in a.
        On False the failing state has no witness.
    """
    _require_reversible(a)
    morphism = find_morphism(a, m)
    if morphism is None:
        raise NotEquivalent("the reversible DFA does not map onto the minimum DFA")

    witnesses: Dict[str, MinimalityWitness] = {}
    for q in m.canonical_order:
        fiber = morphism.fiber(q)
        if len(fiber) < 2:
            continue
        found = backward_split(a, morphism, fiber)
        if found is None:
            logger.info(f"Copies of {q} cannot be told apart backward: not minimal")
            return False, witnesses
        x, pair, targets = found
        witnesses[q] = MinimalityWitness(q=q, x=x, pair=pair, targets=targets)
    return True, witnesses


def has_unique_minimal(m: Dfa) -> Tuple[bool, Optional[UniquenessWitness]]:
    """
    True iff every state with several copies is entered on a single letter.

    Returns:
        (unique, witness); the witness names a state with c > 1 and two entry letters
    """
    _require_pattern_free(m, "has_unique_minimal")
    counts = copy_counts(m)
    for p in m.canonical_order:
        letters = m.in_letters(p)
        if counts[p] > 1 and len(letters) >= 2:
            return False, UniquenessWitness(p=p, a=letters[0], b=letters[1])
    return True, None


def check_loop_condition(m: Dfa) -> Optional[UniquenessWitness]:
    """
    Look for an irreversible state with an infinite right language.

    The witness is a state p of a nontrivial SCC reached from it, a letter a entering p
    from inside its SCC and a letter b entering p from outside.
    """
    _require_pattern_free(m, "check_loop_condition")
    decomposition = sccs(m)
    for q in m.sort_states(irreversible_states(m)):
        if decomposition.on_loop(q):
            p, b = q, irreversible_letters(m, q)[0]
        else:
            words = m.shortest_words(q)
            on_loop = [s for s in words if decomposition.on_loop(s)]
            if not on_loop:
                continue
            p = min(on_loop, key=lambda s: (len(words[s]), m.canonical_index[s]))
            b = words[p][-1]
        inside = [x for x in m.in_letters(p)
                  if any(decomposition.same_component(src, p) for src in m.reverse_delta(p, x))]
        return UniquenessWitness(p=p, a=inside[0], b=b)
    return None


def w_set(m: Dfa, q: str, counts: Optional[CopyCount] = None) -> WSet:
    """
    W_q: pairs (r, x) with c(r) = 1, δ(r, x) = q and only copied states strictly between.

    Needs every state with c > 1 to be entered on a single letter.
    """
    _require_pattern_free(m, "w_set")
    if q not in m.states:
        raise InputError(f"unknown state {q}")
    counts = counts or copy_counts(m)
    for p in m.canonical_order:
        if counts[p] > 1 and len(m.in_letters(p)) > 1:
            raise HypothesisViolated(p)
    if counts[q] == 1:
        return WSet(q, frozenset({(q, "")}))

    pairs = set()
    stack = [(q, "")]
    while stack:
        state, suffix = stack.pop()
        if len(suffix) > m.size:
            # loops among copied states are excluded by the hypothesis
            raise HypothesisViolated(state)
        for letter in m.alphabet:
            for source in m.reverse_delta(state, letter):
                word = letter + suffix
                if counts[source] == 1:
                    pairs.add((source, word))
                else:
                    stack.append((source, word))
    return WSet(q, frozenset(pairs))


def _close(a: Dfa, seeds: Iterable[Tuple[str, str]]) -> MergeClosure:
    """Transition closure of the identifications in `seeds`."""
    sets = UnionFind(a.canonical_order)
    worklist = list(seeds)
    while worklist:
        x, y = worklist.pop()
        if not sets.union(x, y):
            continue
        for letter in a.alphabet:
            nx, ny = a.step(x, letter), a.step(y, letter)
            if nx is not None and ny is not None:
                worklist.append((nx, ny))
    classes = [tuple(a.sort_states(group)) for group in sets.groups()]
    classes.sort(key=lambda c: a.canonical_index[c[0]])
    return MergeClosure(tuple(classes))


def merge_closure(a: Dfa, p: str, q: str) -> MergeClosure:
    """Smallest transition-closed partition of a's states that identifies p and q."""
    _, to_minimum = minimize(a)
    if to_minimum(p) != to_minimum(q):
        raise NotEquivalentStates(f"{p} and {q} are not equivalent")
    return _close(a, [(p, q)])


def _merge_keeps_reversible(task: Tuple[Dfa, str, str]) -> bool:
    a, p, q = task
    merged = quotient(a, _close(a, [(p, q)]).classes)
    return is_reversible_dfa(merged)


def _equivalent_pairs(a: Dfa) -> List[Tuple[str, str]]:
    _, to_minimum = minimize(a)
    order = a.canonical_order
    return [(p, q) for i, p in enumerate(order) for q in order[i + 1:]
            if to_minimum(p) == to_minimum(q)]


def is_reduced(a: Dfa, jobs: int = 1) -> Tuple[bool, Optional[Tuple[str, str]]]:
    """
    True iff merging any pair of distinct equivalent states (with its closure) breaks
    reversibility.

    Args:
        a: Reversible DFA
        jobs: Worker processes for evaluating seed pairs

    Returns:
        (reduced, pair); pair is the first mergeable pair in canonical order
    """
    _require_reversible(a)
    pairs = _equivalent_pairs(a)
    tasks = [(a, p, q) for p, q in pairs]
    if jobs > 1 and len(tasks) > 1:
        with Pool(processes=jobs) as pool:
            for pair, keeps in zip(pairs, pool.imap(_merge_keeps_reversible, tasks)):
                if keeps:
                    return False, pair
        return True, None
    for task in tasks:
        if _merge_keeps_reversible(task):
            return False, (task[1], task[2])
    return True, None


def reduce(a: Dfa, jobs: int = 1) -> Dfa:
    """Merge equivalent states greedily while the result stays reversible."""
    _require_reversible(a)
    current = a
    while True:
        reduced, pair = is_reduced(current, jobs=jobs)
        if reduced:
            break
        closure = _close(current, [pair])
        current = quotient(current, closure.classes)
        logger.info(f"Merged {pair[0]} with {pair[1]}: {current.size} states left")
    return current


def collapse_reversible_part(a: Dfa, m: Dfa) -> Dfa:
    """
    Merge, in a, all copies of each reversible-part state of m (and what that forces).

    The result is reversible whenever L(m) has a unique minimal reversible DFA.
    """
    morphism = find_morphism(a, m)
    if morphism is None:
        raise NoMorphism("no morphism from the first automaton onto the second")
    split = split_parts(m)
    seeds = []
    for s in m.sort_states(split.reversible_part):
        fiber = morphism.fiber(s)
        seeds.extend((fiber[0], other) for other in fiber[1:])
    return quotient(a, _close(a, seeds).classes)
