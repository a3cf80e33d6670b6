"""
The revkit command group.

Automaton-producing commands write the text format to stdout. Predicates print `true` or
`false` and exit 0 or 1; any RevkitError is reported on stderr with exit code 2.
"""
import functools
import logging
import sys
from dataclasses import fields, is_dataclass
from enum import Enum
from multiprocessing import Pool
from typing import List, Optional, Sequence, Tuple

import click

from cli.corpus import DFA, check_corpus, corpus_entries, load_dfa
from core.analysis import (check_loop_condition, has_unique_minimal, is_minimal_revdfa,
                           is_reduced, reduce, w_set)
from core.automaton import Dfa, show_word
from core.conversion import copy_counts, to_minimal_revdfa
from core.dot import emit_dot
from core.errors import RevkitError, WitnessInvalid
from core.generation import (find_irrev_hypothesis, gen_alt_minimal, gen_reduced,
                             inflate_revdfa, random_dfa, witness_from_irrev_loop)
from core.minimize import equivalent, minimize
from core.models import AppConfig
from core.morphism import isomorphic
from core.regex import regex_to_dfa
from core.reversibility import (find_forbidden_pattern, irreversible_states,
                                is_reversible_dfa, split_parts)
from core.textformat import emit_dfa

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def setup_logging(verbose: bool = False, log_file: Optional[str] = None):
    """Setup logging configuration; stdout stays reserved for automata."""
    level = logging.DEBUG if verbose else logging.WARNING
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def handle_errors(func):
    """Report RevkitError as `Error: ...` on stderr and exit 2."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RevkitError as e:
            logger.error(f"{func.__name__} failed: {e}")
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_ERROR)
    return wrapper


def _show(value) -> str:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (tuple, list, frozenset, set)):
        return " ".join(_show(v) for v in value)
    if isinstance(value, str):
        return show_word(value)
    return str(value)


def echo_record(record, err: bool = False) -> None:
    """Print a witness record as `field: value` lines."""
    for f in fields(record):
        value = getattr(record, f.name)
        if value is not None:
            click.echo(f"{f.name}: {_show(value)}", err=err)


def verdict(value: bool, witness=None) -> None:
    """Print the answer of a predicate and exit with its code."""
    click.echo("true" if value else "false")
    config = click.get_current_context().find_object(AppConfig)
    if witness is not None and config is not None and config.show_witness:
        if is_dataclass(witness):
            echo_record(witness)
        else:
            click.echo(witness)
    sys.exit(EXIT_TRUE if value else EXIT_FALSE)


def emit(dfa: Dfa) -> None:
    click.echo(emit_dfa(dfa), nl=False)


def as_minimum(dfa: Dfa) -> Dfa:
    minimum, _ = minimize(dfa)
    if minimum.size != dfa.size:
        logger.info(f"Input has {dfa.size} states; using its minimum DFA ({minimum.size})")
    return minimum


def _config() -> AppConfig:
    return click.get_current_context().find_object(AppConfig)


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='Verbose logging')
@click.option('--log-file', type=click.Path(dir_okay=False), help='Also write the log to this file')
@click.option('--allow-useless', is_flag=True, help='Trim useless states instead of rejecting them')
@click.option('--witness', '-w', is_flag=True, help='Print witness records for predicates')
@click.pass_context
def cli(ctx, verbose, log_file, allow_useless, witness):
    """
    revkit - reversible deterministic finite automata.

    FILE arguments accept a path, `-` for stdin, or `corpus:NAME` for a bundled fixture.
    """
    setup_logging(verbose, log_file)
    config = AppConfig(
        allow_useless=allow_useless,
        show_witness=witness,
        verbose=verbose,
        log_file=log_file,
    )
    errors = config.validate()
    if errors:
        click.echo("Configuration errors:", err=True)
        for error in errors:
            click.echo(f"  - {error}", err=True)
        sys.exit(EXIT_ERROR)
    ctx.obj = config


# -- core automata ----------------------------------------------------------

@cli.command('minimize')
@click.argument('dfa', type=DFA)
@handle_errors
def minimize_cmd(dfa):
    """Write the minimum DFA."""
    emit(minimize(dfa)[0])


@cli.command()
@click.argument('first', type=DFA)
@click.argument('second', type=DFA)
@handle_errors
def equiv(first, second):
    """Decide whether two automata accept the same language."""
    same, word = equivalent(first, second)
    verdict(same, None if same else f"word: {show_word(word)}")


@cli.command()
@click.argument('first', type=DFA)
@click.argument('second', type=DFA)
@handle_errors
def iso(first, second):
    """Decide whether two automata are isomorphic."""
    verdict(isomorphic(first, second))


@cli.command()
@click.argument('pattern')
@handle_errors
def regex(pattern):
    """Write the minimum DFA of a regular expression (+, *, parentheses, ε)."""
    emit(regex_to_dfa(pattern))


@cli.command()
@click.option('--seed', default=0, type=int, help='Random seed')
@click.option('--states', 'n_states', default=5, type=int, help='Number of states before trimming')
@click.option('--letters', 'n_letters', default=2, type=int, help='Alphabet size')
@click.option('--density', default=0.8, type=float, help='Probability of each transition')
@handle_errors
def random(seed, n_states, n_letters, density):
    """Write a seeded random DFA."""
    emit(random_dfa(seed, n_states, n_letters, density))


@cli.command()
@click.argument('dfa', type=DFA)
@click.option('--split', 'highlight', is_flag=True, help='Shade reversible and irreversible parts')
@handle_errors
def dot(dfa, highlight):
    """Write a Graphviz DOT rendering."""
    click.echo(emit_dot(dfa, split_parts(dfa) if highlight else None), nl=False)


# -- reversibility ----------------------------------------------------------

@cli.command()
@click.argument('dfa', type=DFA)
@handle_errors
def reversible(dfa):
    """Decide whether the language is accepted by some reversible DFA."""
    witness = find_forbidden_pattern(as_minimum(dfa))
    verdict(witness is None, witness)


@cli.command()
@click.argument('dfa', type=DFA)
@handle_errors
def revdfa(dfa):
    """Decide whether the automaton itself is reversible."""
    irreversible = dfa.sort_states(irreversible_states(dfa))
    verdict(not irreversible, f"irreversible: {' '.join(irreversible)}" if irreversible else None)


@cli.command()
@click.argument('dfa', type=DFA)
@handle_errors
def forbidden(dfa):
    """Print the forbidden-pattern witness of the minimum DFA, or `none`."""
    witness = find_forbidden_pattern(as_minimum(dfa))
    if witness is None:
        click.echo("none")
    else:
        echo_record(witness)


@cli.command()
@click.argument('dfa', type=DFA)
@handle_errors
def split(dfa):
    """Print the reversible and irreversible parts and the border transitions."""
    parts = split_parts(dfa)
    click.echo(f"reversible: {' '.join(dfa.sort_states(parts.reversible_part))}")
    click.echo(f"irreversible: {' '.join(dfa.sort_states(parts.irreversible_part))}")
    index = dfa.canonical_index
    for src, letter, dst in sorted(parts.border, key=lambda t: (index[t[0]], t[1])):
        click.echo(f"border: {src} {letter} {dst}")


# -- conversion -------------------------------------------------------------

@cli.command()
@click.argument('dfa', type=DFA)
@handle_errors
def convert(dfa):
    """Write the minimal reversible DFA built from the minimum DFA."""
    result, _, trace = to_minimal_revdfa(as_minimum(dfa))
    if _config().show_witness:
        for step in trace.steps:
            click.echo(f"replicated: {' '.join(step.component)} x{step.alpha}", err=True)
            for (src, letter, dst), k in sorted(step.redistribution.items()):
                click.echo(f"  {src} {letter} {dst} -> copy {k}", err=True)
    emit(result)


@cli.command()
@click.argument('dfa', type=DFA)
@handle_errors
def counts(dfa):
    """Print c(q), the copies of each state in any minimal reversible DFA."""
    m = as_minimum(dfa)
    c = copy_counts(m)
    for state in m.canonical_order:
        click.echo(f"{state}: {c[state]}")


# -- analysis ---------------------------------------------------------------

@cli.command('is-minimal')
@click.argument('revdfa', type=DFA)
@click.argument('minimum', type=DFA)
@handle_errors
def is_minimal(revdfa, minimum):
    """Decide whether REVDFA is a minimal reversible DFA for L(MINIMUM)."""
    minimal, witnesses = is_minimal_revdfa(revdfa, as_minimum(minimum))
    lines = [f"{q}: x={w.x} pair={','.join(w.pair)} targets={','.join(w.targets)}"
             for q, w in witnesses.items()]
    verdict(minimal, "\n".join(lines) if lines else None)


@cli.command()
@click.argument('dfa', type=DFA)
@handle_errors
def unique(dfa):
    """Decide whether the language has a single minimal reversible DFA."""
    single, witness = has_unique_minimal(as_minimum(dfa))
    verdict(single, witness)


@cli.command()
@click.argument('dfa', type=DFA)
@handle_errors
def loopcond(dfa):
    """Decide whether an irreversible state reaches a loop (true: minimal DFA not unique)."""
    witness = check_loop_condition(as_minimum(dfa))
    verdict(witness is not None, witness)


@cli.command()
@click.argument('dfa', type=DFA)
@click.argument('state')
@handle_errors
def wset(dfa, state):
    """Print W_q as `r x` lines."""
    m = as_minimum(dfa)
    result = w_set(m, state)
    index = m.canonical_index
    for r, x in sorted(result.pairs, key=lambda pair: (index[pair[0]], pair[1])):
        click.echo(f"{r} {show_word(x)}")


@cli.command('is-reduced')
@click.argument('dfa', type=DFA)
@click.option('--jobs', '-j', default=1, type=click.IntRange(min=1), help='Worker processes')
@handle_errors
def is_reduced_cmd(dfa, jobs):
    """Decide whether no pair of equivalent states can be merged reversibly."""
    reduced, pair = is_reduced(dfa, jobs=jobs)
    verdict(reduced, f"pair: {' '.join(pair)}" if pair else None)


@cli.command('reduce')
@click.argument('dfa', type=DFA)
@click.option('--jobs', '-j', default=1, type=click.IntRange(min=1), help='Worker processes')
@handle_errors
def reduce_cmd(dfa, jobs):
    """Merge equivalent states while the automaton stays reversible."""
    emit(reduce(dfa, jobs=jobs))


# -- generation -------------------------------------------------------------

@cli.command('alt-minimal')
@click.argument('revdfa', type=DFA)
@click.argument('minimum', type=DFA, required=False)
@handle_errors
def alt_minimal(revdfa, minimum):
    """Write a second minimal reversible DFA, not isomorphic to REVDFA."""
    m = as_minimum(minimum if minimum is not None else revdfa)
    emit(gen_alt_minimal(revdfa, m))


def _hypothesis_witness(m: Dfa, from_loop: bool):
    return witness_from_irrev_loop(m) if from_loop else find_irrev_hypothesis(m)


@cli.command()
@click.argument('dfa', type=DFA)
@click.option('--from-loop', is_flag=True, help='Derive the witness from a loop in the irreversible part')
@handle_errors
def hypothesis(dfa, from_loop):
    """Find a loop and a doubly entered state that give infinitely many reduced DFAs."""
    witness = _hypothesis_witness(as_minimum(dfa), from_loop)
    if witness is None:
        click.echo("none")
        sys.exit(EXIT_FALSE)
    echo_record(witness)


@cli.command('gen-reduced')
@click.argument('dfa', type=DFA)
@click.option('--n', 'n', required=True, type=click.IntRange(min=1), help='Copies of the loop component')
@click.option('--from-loop', is_flag=True, help='Derive the witness from a loop in the irreversible part')
@handle_errors
def gen_reduced_cmd(dfa, n, from_loop):
    """Write a reversible DFA whose loop is unrolled N times (reduced for prime N)."""
    m = as_minimum(dfa)
    witness = _hypothesis_witness(m, from_loop)
    if witness is None:
        raise WitnessInvalid("the minimum DFA has no loop satisfying the hypothesis")
    emit(gen_reduced(m, witness, n))


@cli.command()
@click.argument('dfa', type=DFA)
@click.option('--seed', default=0, type=int, help='Random seed')
@click.option('--width', default=2, type=click.IntRange(min=1), help='States of the permutation automaton')
@handle_errors
def inflate(dfa, seed, width):
    """Write an equivalent, larger reversible DFA."""
    emit(inflate_revdfa(dfa, seed, width))


# -- corpus -----------------------------------------------------------------

@cli.group()
def corpus():
    """Bundled example automata."""
    pass


@corpus.command('list')
@handle_errors
def corpus_list():
    """List fixtures and their caption regexes."""
    for entry in corpus_entries(_config().corpus_dir):
        click.echo(f"{entry.name}\t{entry.regex or '-'}")


@corpus.command('check')
@handle_errors
def corpus_check():
    """Check every fixture against its caption regex."""
    results = check_corpus(_config().corpus_dir)
    for result in results:
        status = "ok" if result.ok else f"FAILED ({result.detail})"
        click.echo(f"{result.entry.name}: {status}")
    sys.exit(EXIT_TRUE if all(r.ok for r in results) else EXIT_FALSE)


# -- batch ------------------------------------------------------------------

def _batch_minimize(dfa: Dfa) -> str:
    return f"{minimize(dfa)[0].size} states"


def _batch_convert(dfa: Dfa) -> str:
    return f"{to_minimal_revdfa(as_minimum(dfa))[0].size} states"


BATCH_COMMANDS = {
    "reversible": lambda dfa: str(find_forbidden_pattern(as_minimum(dfa)) is None).lower(),
    "revdfa": lambda dfa: str(is_reversible_dfa(dfa)).lower(),
    "unique": lambda dfa: str(has_unique_minimal(as_minimum(dfa))[0]).lower(),
    "is-reduced": lambda dfa: str(is_reduced(dfa)[0]).lower(),
    "minimize": _batch_minimize,
    "convert": _batch_convert,
    "fingerprint": lambda dfa: dfa.fingerprint(),
}


def _batch_one(task: Tuple[str, str, AppConfig]) -> Tuple[str, bool]:
    command, source, config = task
    try:
        dfa = load_dfa(source, config)
        return f"{source}: {BATCH_COMMANDS[command](dfa)}", True
    except RevkitError as e:
        return f"{source}: error: {e}", False


@cli.command()
@click.argument('command', type=click.Choice(sorted(BATCH_COMMANDS)))
@click.argument('sources', nargs=-1, required=True)
@click.option('--jobs', '-j', default=1, type=click.IntRange(min=1), help='Worker processes')
def batch(command, sources, jobs):
    """Run COMMAND on every file, one `FILE: result` line each."""
    config = _config()
    config.jobs = jobs
    tasks = [(command, source, config) for source in sources]
    if jobs > 1 and len(tasks) > 1:
        with Pool(processes=jobs) as pool:
            results = pool.map(_batch_one, tasks)
    else:
        results = [_batch_one(task) for task in tasks]
    for line, _ in results:
        click.echo(line)
    failed = sum(1 for _, ok in results if not ok)
    if failed:
        logger.warning(f"{failed} of {len(results)} files failed")
        sys.exit(EXIT_ERROR)


def dispatch(argv: Sequence[str]) -> int:
    """Run the command group on argv and return its exit code."""
    try:
        cli.main(args=list(argv), prog_name="revkit")
    except SystemExit as e:
        if e.code is None:
            return EXIT_TRUE
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    return EXIT_TRUE
