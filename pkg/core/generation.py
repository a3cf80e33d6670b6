"""
Constructions producing reversible DFAs.

- gen_alt_minimal: a second minimal reversible DFA, nonisomorphic to a given one.
- find_irrev_hypothesis / witness_from_irrev_loop: locate a loop and a state s entered on
  two letters, the configuration that yields infinitely many reduced reversible DFAs.
- gen_reduced: the reversible DFA with an N-state loop built from such a witness.
- random_dfa / inflate_revdfa: seeded generators for fuzzing.
"""
import logging
import random
import string
from collections import deque
from typing import Dict, Iterable, List, Optional, Tuple

from core.analysis import backward_split, has_unique_minimal
from core.automaton import Dfa, Word, fresh_name
from core.conversion import copy_counts, to_minimal_revdfa, to_revdfa_general
from core.errors import (ForbiddenPattern, InputError, NotEquivalent, NotReversible,
                         NTooSmall, UniqueMinimal, WitnessInvalid)
from core.models import (CopyCount, HypothesisCase, IrrevHypothesisWitness, Morphism,
                         RandomDfaParams, SccDecomposition)
from core.morphism import find_morphism
from core.reversibility import find_pattern_in, is_reversible_dfa, require_minimum, split_parts
from core.scc import sccs

logger = logging.getLogger(__name__)


def _require_pattern_free(m: Dfa, operation: str) -> None:
    require_minimum(m, operation)
    witness = find_pattern_in(m)
    if witness is not None:
        raise ForbiddenPattern(witness)


def _b_source(delta: Dict[Tuple[str, str], str], target: str, letter: str) -> Optional[str]:
    for (src, x), dst in delta.items():
        if x == letter and dst == target:
            return src
    return None


# -- alternative minimal reversible DFA -------------------------------------

def gen_alt_minimal(a: Dfa, m: Dfa) -> Dfa:
    """
    Rewire one letter's transitions into the copies of a state to get another minimal
    reversible DFA with the same number of states.

    Args:
        a: Minimal reversible DFA
        m: Minimum DFA of the same language

    Returns:
        A minimal reversible DFA equivalent to a but not isomorphic to it
    """
    if not is_reversible_dfa(a):
        raise NotReversible("gen_alt_minimal needs a reversible DFA")
    unique, witness = has_unique_minimal(m)
    if unique:
        raise UniqueMinimal("the language has a single minimal reversible DFA")
    morphism = find_morphism(a, m)
    if morphism is None:
        raise NotEquivalent("the reversible DFA does not map onto the minimum DFA")

    p = witness.p
    w = m.shortest_words()[p]
    last = w[-1]
    b = next(x for x in m.in_letters(p) if x != last)
    p_hat = a.run(w)
    fiber = morphism.fiber(p)
    delta = dict(a.delta)

    def entry(state: str) -> Optional[str]:
        sources = a.reverse_delta(state, b)
        return next(iter(sources)) if sources else None

    q_hat = entry(p_hat)
    others = [s for s in fiber if s != p_hat]
    if q_hat is None:
        p_tilde = next(s for s in others if entry(s) is not None)
        delta[(entry(p_tilde), b)] = p_hat
        case = "moved"
    else:
        entered = [s for s in others if entry(s) is not None]
        if entered:
            p_tilde = entered[0]
            q_tilde = entry(p_tilde)
            delta[(q_tilde, b)] = p_hat
            delta[(q_hat, b)] = p_tilde
            case = "swapped"
        else:
            p_tilde = others[0]
            delta[(q_hat, b)] = p_tilde
            case = "redirected"
    logger.info(f"Alternative minimal DFA: {case} '{b}'-transitions around {p_hat} and {p_tilde}")
    return Dfa.build(a.states, a.alphabet, a.initial, a.finals, delta)


# -- hypothesis witnesses ---------------------------------------------------

def _classify(m: Dfa, counts: CopyCount, s: str, b: str
              ) -> Optional[Tuple[HypothesisCase, Optional[str]]]:
    sources = m.sort_states(m.reverse_delta(s, b))
    if len(sources) > 1:
        return HypothesisCase.DOUBLE_B_INDEGREE, None
    copied = [r for r in sources if counts[r] > 1]
    if copied:
        return HypothesisCase.IRREVERSIBLE_B_SOURCE, copied[0]
    return None


def find_irrev_hypothesis(m: Dfa) -> Optional[IrrevHypothesisWitness]:
    """
    Search a loop state q, a word u ending in a with δ(q, u) = s, and a letter b ≠ a
    entering s twice or from a state with several copies.

    Loop components are tried downstream first; within one, witnesses entering s twice
    are preferred, then smaller s, shorter u, and letter order.
    """
    _require_pattern_free(m, "find_irrev_hypothesis")
    counts = copy_counts(m)
    decomposition = sccs(m)
    index = m.canonical_index
    loops = [i for i, flag in enumerate(decomposition.nontrivial) if flag]
    loops.sort(key=lambda i: (len(decomposition.reach[i]), i))

    for component in loops:
        best = None
        for q in m.sort_states(decomposition.components[component]):
            words = m.shortest_words(q)
            for t in m.sort_states(words):
                for a, s in m.successors(t):
                    u = words[t] + a
                    for b in m.in_letters(s):
                        if b == a:
                            continue
                        found = _classify(m, counts, s, b)
                        if found is None:
                            continue
                        case, r = found
                        rank = 0 if case is HypothesisCase.DOUBLE_B_INDEGREE else 1
                        key = (rank, index[q], index[s], len(u), u, b)
                        if best is None or key < best[0]:
                            best = (key, IrrevHypothesisWitness(q, u, s, a, b, case, r))
        if best is not None:
            logger.debug(f"Hypothesis witness: {best[1]}")
            return best[1]
    return None


def witness_from_irrev_loop(m: Dfa) -> Optional[IrrevHypothesisWitness]:
    """
    Witness for a nontrivial SCC lying in the irreversible part: an entry r -b-> s from
    outside with r copied or s entered twice on b, and the shortest cycle through s.
    """
    _require_pattern_free(m, "witness_from_irrev_loop")
    counts = copy_counts(m)
    decomposition = sccs(m)
    split = split_parts(m)
    index = m.canonical_index
    for i, component in enumerate(decomposition.components):
        if not decomposition.nontrivial[i] or not component <= split.irreversible_part:
            continue
        entries = sorted(
            ((s, r, b) for (r, b), s in m.delta.items() if s in component and r not in component),
            key=lambda e: (index[e[0]], index[e[1]], e[2]),
        )
        for s, r, b in entries:
            double = len(m.reverse_delta(s, b)) > 1
            if not double and counts[r] == 1:
                continue
            cycle = _shortest_cycle(m, s, component)
            case = HypothesisCase.DOUBLE_B_INDEGREE if double else HypothesisCase.IRREVERSIBLE_B_SOURCE
            return IrrevHypothesisWitness(s, cycle, s, cycle[-1], b, case,
                                          None if double else r)
    return None


def _shortest_cycle(m: Dfa, state: str, component) -> Word:
    words: Dict[str, Word] = {}
    queue = deque()
    for letter, target in m.successors(state):
        if target == state:
            return letter
        if target in component and target not in words:
            words[target] = letter
            queue.append(target)
    while queue:
        current = queue.popleft()
        for letter, target in m.successors(current):
            if target == state:
                return words[current] + letter
            if target in component and target not in words:
                words[target] = words[current] + letter
                queue.append(target)
    raise InputError(f"{state} is not on a cycle")


def _check_witness(m: Dfa, w: IrrevHypothesisWitness, counts: CopyCount,
                   decomposition: SccDecomposition) -> None:
    problems = []
    if w.loop_state not in m.states or w.s not in m.states:
        raise WitnessInvalid("witness names unknown states")
    if not decomposition.on_loop(w.loop_state):
        problems.append(f"{w.loop_state} is not on a loop")
    if not w.path or w.path[-1] != w.a:
        problems.append("path must be nonempty and end with a")
    if w.a == w.b:
        problems.append("letters a and b must differ")
    if any(x not in m.alphabet for x in w.path + w.a + w.b):
        problems.append("witness uses letters outside the alphabet")
    elif m.run(w.path, start=w.loop_state) != w.s:
        problems.append(f"path does not lead from {w.loop_state} to {w.s}")
    elif not m.reverse_delta(w.s, w.b):
        problems.append(f"{w.s} has no entry on '{w.b}'")
    elif w.case is HypothesisCase.DOUBLE_B_INDEGREE:
        if len(m.reverse_delta(w.s, w.b)) < 2:
            problems.append(f"{w.s} is entered once on '{w.b}'")
    elif w.r is None or m.step(w.r, w.b) != w.s or counts[w.r] < 2:
        problems.append(f"{w.r} is not a copied '{w.b}'-source of {w.s}")
    if problems:
        raise WitnessInvalid("; ".join(problems))


# -- large reduced reversible DFAs -----------------------------------------

def gen_reduced(m: Dfa, witness: IrrevHypothesisWitness, n: int) -> Dfa:
    """
    Build a reversible DFA for L(m) whose loop component is unrolled into n copies.

    For prime n the result is reduced.

    Args:
        m: Minimum DFA of a reversible language
        witness: Hypothesis witness for m
        n: Number of copies of the loop component

    Returns:
        Reversible DFA equivalent to m with at least n states
    """
    _require_pattern_free(m, "gen_reduced")
    counts = copy_counts(m)
    decomposition = sccs(m)
    _check_witness(m, witness, counts, decomposition)

    q = witness.loop_state
    cq_id = decomposition.component_of[q]
    loop = decomposition.components[cq_id]
    needed = counts.of_component(loop)
    if n < needed:
        raise NTooSmall(f"n={n} is below the {needed} copies the loop component needs")

    a, phi, _ = to_minimal_revdfa(m)

    # states of the minimal reversible DFA outside C_q and its descendants
    def kept_state(s: str) -> bool:
        return not decomposition.precedes(cq_id, decomposition.component_of[phi(s)])

    kept = [s for s in a.canonical_order if kept_state(s)]
    downstream = [d for d in m.canonical_order
                  if d not in loop and decomposition.precedes(cq_id, decomposition.component_of[d])]

    a_sccs = sccs(a)
    over_loop = [s for s in a.canonical_order if phi(s) in loop]
    copy_ids = sorted({a_sccs.component_of[s] for s in over_loop})
    copy_index = {s: copy_ids.index(a_sccs.component_of[s]) for s in over_loop}

    taken = set(kept)
    copy_name: Dict[Tuple[str, int], str] = {}
    for r in m.sort_states(loop):
        for i in range(n):
            copy_name[(r, i)] = fresh_name(f"{r}_{i}", taken)
            taken.add(copy_name[(r, i)])
    down_name: Dict[str, str] = {}
    for d in downstream:
        down_name[d] = fresh_name(d, taken)
        taken.add(down_name[d])

    def image(target: str) -> str:
        if kept_state(target):
            return target
        origin = phi(target)
        if origin in loop:
            return copy_name[(origin, copy_index[target])]
        return down_name[origin]

    # transitions of the kept part, entries into the first c(q) copies
    delta: Dict[Tuple[str, str], str] = {}
    for src in kept:
        for letter, dst in a.successors(src):
            delta[(src, letter)] = image(dst)

    # n copies of C_q, one transition rotated through the copies
    sigma, _ = next((x, t) for x, t in m.successors(q) if t in loop)
    for r in m.sort_states(loop):
        for letter, target in m.successors(r):
            for i in range(n):
                if target in loop:
                    j = (i + 1) % n if (r, letter) == (q, sigma) else i
                    delta[(copy_name[(r, i)], letter)] = copy_name[(target, j)]
                else:
                    delta[(copy_name[(r, i)], letter)] = down_name[target]

    # one copy of each downstream state, then replicate components of the whole
    for d in downstream:
        for letter, target in m.successors(d):
            delta[(down_name[d], letter)] = down_name[target]

    states = kept + [copy_name[(r, i)] for i in range(n) for r in m.sort_states(loop)] \
        + [down_name[d] for d in downstream]
    initial = image(a.initial)
    finals = {s for s in kept if s in a.finals}
    finals |= {name for (r, _), name in copy_name.items() if r in m.finals}
    finals |= {down_name[d] for d in downstream if d in m.finals}
    skeleton = Dfa(tuple(states), m.alphabet, initial, frozenset(finals), delta).trim()
    logger.info(f"gen_reduced n={n}: skeleton with {skeleton.size} states")
    a_n, _ = to_revdfa_general(skeleton)

    # make the two b-entries of s land on copies reached from the loop copies
    result = _relocate_entries(m, a_n, witness, [copy_name[(q, i)] for i in range(n)])
    logger.info(f"gen_reduced n={n}: {result.size} states")
    return result


def _relocate_entries(m: Dfa, a_n: Dfa, witness: IrrevHypothesisWitness,
                      loop_copies: List[str]) -> Dfa:
    b = witness.b
    phi = find_morphism(a_n, m)
    landing = [a_n.run(witness.path, start=q_i) for q_i in loop_copies if q_i in a_n.states]
    landing = [s for s in dict.fromkeys(landing) if s is not None]
    if len(landing) < 2:
        logger.warning("Fewer than two loop copies reach s; relocation skipped")
        return a_n

    if witness.case is HypothesisCase.DOUBLE_B_INDEGREE:
        r1, r2 = m.sort_states(m.reverse_delta(witness.s, b))[:2]
        sources = (phi.fiber(r1)[0], phi.fiber(r2)[0])
    else:
        sources = _split_copies(a_n, phi, witness.r)
        if sources is None:
            logger.warning(f"No backward split among copies of {witness.r}; relocation skipped")
            return a_n

    delta = dict(a_n.delta)
    first = _relocate(delta, sources[0], b, delta[(sources[0], b)], landing,
                      other=delta[(sources[1], b)])
    _relocate(delta, sources[1], b, delta[(sources[1], b)], landing, other=first)
    relocated = Dfa(a_n.states, a_n.alphabet, a_n.initial, a_n.finals, delta).trim()
    return Dfa.build(relocated.states, relocated.alphabet, relocated.initial,
                     relocated.finals, relocated.delta)


def _split_copies(a_n: Dfa, phi: Morphism, r: str) -> Optional[Tuple[str, str]]:
    fiber = phi.fiber(r)
    for i in range(len(fiber)):
        for j in range(i + 1, len(fiber)):
            if backward_split(a_n, phi, (fiber[i], fiber[j])) is not None:
                return fiber[i], fiber[j]
    return None


def _relocate(delta: Dict[Tuple[str, str], str], source: str, b: str, current: str,
              landing: List[str], other: str) -> str:
    """Point source's b-transition into `landing`, swapping with an existing entry if needed."""
    if current in landing:
        return current
    candidates = [s for s in landing if s != other]
    for target in candidates:
        if _b_source(delta, target, b) is None:
            delta[(source, b)] = target
            return target
    target = candidates[0]
    entering = _b_source(delta, target, b)
    delta[(source, b)] = target
    delta[(entering, b)] = current
    return target


def reduced_family(m: Dfa, sizes: Iterable[int]) -> List[Dfa]:
    """gen_reduced for each size with the canonical witness; duplicates dropped."""
    witness = find_irrev_hypothesis(m)
    if witness is None:
        raise WitnessInvalid("the minimum DFA has no loop satisfying the hypothesis")
    family: Dict[str, Dfa] = {}
    for n in sizes:
        built = gen_reduced(m, witness, n)
        family.setdefault(built.fingerprint(), built)
    return list(family.values())


# -- fuzzing ----------------------------------------------------------------

def random_dfa(seed: int, n_states: int, n_letters: int, density: float) -> Dfa:
    """
    Seeded random DFA, trimmed to its useful states.

    Args:
        seed: Random seed; equal seeds give equal automata
        n_states: Number of states before trimming
        n_letters: Alphabet size (letters a, b, ...)
        density: Probability that a (state, letter) transition exists
    """
    params = RandomDfaParams(seed, n_states, n_letters, density)
    errors = params.validate()
    if errors:
        raise InputError("; ".join(errors))

    rng = random.Random(seed)
    states = [f"q{i}" for i in range(n_states)]
    letters = tuple(string.ascii_lowercase[:n_letters])
    delta = {}
    for state in states:
        for letter in letters:
            if rng.random() < density:
                delta[(state, letter)] = states[rng.randrange(n_states)]
    finals = {s for s in states if rng.random() < 0.5}
    if not finals:
        finals.add(states[rng.randrange(n_states)])
    dfa = Dfa(tuple(states), letters, states[0], frozenset(finals), delta)
    if dfa.initial not in dfa.productive_states():
        dfa = Dfa(dfa.states, letters, dfa.initial, dfa.finals | {dfa.initial}, delta)
    return dfa.trim()


def inflate_revdfa(a: Dfa, seed: int, width: int) -> Dfa:
    """
    Product of a reversible DFA with a seeded permutation automaton on `width` states.

    Every letter permutes the second component, so the product stays reversible and
    accepts the same language.
    """
    if not is_reversible_dfa(a):
        raise NotReversible("inflate_revdfa needs a reversible DFA")
    if width < 1:
        raise InputError("width must be at least 1")
    rng = random.Random(seed)
    permutation = {}
    for letter in a.alphabet:
        image = list(range(width))
        rng.shuffle(image)
        permutation[letter] = image

    name = lambda pair: f"{pair[0]}.{pair[1]}"
    start = (a.initial, 0)
    seen = {start}
    order = [start]
    queue = deque([start])
    delta = {}
    while queue:
        state, g = queue.popleft()
        for letter, target in a.successors(state):
            nxt = (target, permutation[letter][g])
            delta[(name((state, g)), letter)] = name(nxt)
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    finals = {name(p) for p in order if p[0] in a.finals}
    return Dfa.build([name(p) for p in order], a.alphabet, name(start), finals, delta)
