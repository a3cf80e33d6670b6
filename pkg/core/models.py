"""
Data models for revkit: analysis records, witnesses and configuration.
"""
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple

from core.automaton import Dfa, Transition, Word


@dataclass(frozen=True)
class SccDecomposition:
    """SCC partition of a Dfa plus the reachability order between components."""
    components: Tuple[FrozenSet[str], ...]  # ordered by smallest canonical index
    component_of: Dict[str, int]
    nontrivial: Tuple[bool, ...]
    reach: Tuple[FrozenSet[int], ...]  # components reachable from each one, itself excluded

    def precedes(self, i: int, j: int) -> bool:
        """C_i ⪯ C_j."""
        return i == j or j in self.reach[i]

    def component(self, state: str) -> FrozenSet[str]:
        return self.components[self.component_of[state]]

    def same_component(self, p: str, q: str) -> bool:
        return self.component_of[p] == self.component_of[q]

    def on_loop(self, state: str) -> bool:
        """True when the state lies in a nontrivial component."""
        return self.nontrivial[self.component_of[state]]


@dataclass(frozen=True)
class Morphism:
    """State map φ from `source` onto the equivalent automaton `target`."""
    source: Dfa
    target: Dfa
    mapping: Dict[str, str]

    def __call__(self, state: str) -> str:
        return self.mapping[state]

    def fiber(self, state: str) -> List[str]:
        """φ⁻¹(state), in the source's canonical order."""
        return [s for s in self.source.canonical_order if self.mapping[s] == state]

    def fiber_sizes(self) -> Dict[str, int]:
        sizes = {s: 0 for s in self.target.canonical_order}
        for image in self.mapping.values():
            sizes[image] += 1
        return sizes


@dataclass(frozen=True)
class PartSplit:
    """Reversible/irreversible parts of a Dfa and the transitions between them."""
    reversible_part: FrozenSet[str]
    irreversible_part: FrozenSet[str]
    border: FrozenSet[Transition]


@dataclass(frozen=True)
class ForbiddenPatternWitness:
    """δ(p,a) = δ(q,a) = r with p ≠ q and δ(q, a·w) = q."""
    p: str
    q: str
    a: str
    w: Word
    r: str


@dataclass(frozen=True)
class CopyCount:
    """c(q): how many copies of q any minimal reversible DFA holds."""
    counts: Dict[str, int]

    def __getitem__(self, state: str) -> int:
        return self.counts[state]

    def of_component(self, states) -> int:
        return max(self.counts[s] for s in states)


@dataclass(frozen=True)
class ConversionStep:
    """One replication: component, number of copies, copy index chosen per entering transition."""
    component: Tuple[str, ...]
    alpha: int
    redistribution: Dict[Transition, int]


@dataclass
class ConversionTrace:
    steps: List[ConversionStep] = field(default_factory=list)


@dataclass(frozen=True)
class MinimalityWitness:
    """x leads backward from every copy of q; two of the origins are inequivalent."""
    q: str
    x: Word
    pair: Tuple[str, str]  # inequivalent origins, δ(pair[i], x) = targets[i]
    targets: Tuple[str, str]


@dataclass(frozen=True)
class UniquenessWitness:
    """p has several copies and is entered on both a and b."""
    p: str
    a: str
    b: str


@dataclass(frozen=True)
class WSet:
    """W_q: reversible-part states r with the words x leading from r to q."""
    q: str
    pairs: FrozenSet[Tuple[str, Word]]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class MergeClosure:
    """Smallest transition-closed partition identifying a forced pair of states."""
    classes: Tuple[Tuple[str, ...], ...]

    @property
    def merged(self) -> List[Tuple[str, ...]]:
        """Classes with more than one member."""
        return [members for members in self.classes if len(members) > 1]


class HypothesisCase(str, Enum):
    DOUBLE_B_INDEGREE = "double_b_indegree"
    IRREVERSIBLE_B_SOURCE = "irreversible_b_source"


@dataclass(frozen=True)
class IrrevHypothesisWitness:
    """A loop state, a path u ending in a from it to s, and a second letter b entering s."""
    loop_state: str
    path: Word
    s: str
    a: str
    b: str
    case: HypothesisCase
    r: Optional[str] = None  # only for IRREVERSIBLE_B_SOURCE


@dataclass
class RandomDfaParams:
    """Parameters of the random automaton generator."""
    seed: int
    n_states: int
    n_letters: int
    density: float

    def validate(self) -> List[str]:
        """Validate parameters and return list of errors."""
        errors = []
        if self.n_states < 1:
            errors.append("number of states must be at least 1")
        if not 1 <= self.n_letters <= 26:
            errors.append("number of letters must be between 1 and 26")
        if not 0 < self.density <= 1:
            errors.append("density must be in (0, 1]")
        return errors


def default_corpus_dir() -> Path:
    override = os.environ.get("REVKIT_CORPUS")
    if override:
        return Path(override)
    return Path(__file__).resolve().parent.parent / "corpus"


@dataclass
class AppConfig:
    """Application configuration for one CLI invocation."""
    corpus_dir: Path = field(default_factory=default_corpus_dir)
    allow_useless: bool = False
    show_witness: bool = False
    jobs: int = 1
    verbose: bool = False
    log_file: Optional[str] = None

    def validate(self) -> List[str]:
        """Validate configuration and return list of errors."""
        errors = []
        if self.jobs < 1:
            errors.append("--jobs must be at least 1")
        if os.environ.get("REVKIT_CORPUS") and not Path(self.corpus_dir).is_dir():
            errors.append(f"Corpus directory does not exist: {self.corpus_dir}")
        return errors
