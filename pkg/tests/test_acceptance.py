"""
End-to-end acceptance checks on the bundled corpus, through the library and the CLI.

The random-automaton property suite lives in test_properties.py and test_extensive.py.
"""
import pytest
from click.testing import CliRunner

from cli.app import cli
from cli.corpus import check_corpus
from core.analysis import is_minimal_revdfa, is_reduced, reduce
from core.conversion import to_minimal_revdfa
from core.generation import find_irrev_hypothesis, gen_alt_minimal, gen_reduced, inflate_revdfa
from core.minimize import equivalent, minimize
from core.morphism import isomorphic
from core.regex import regex_to_dfa
from core.reversibility import find_forbidden_pattern, is_reversible_dfa, split_parts
from core.textformat import parse_dfa
from tests.oracles import assert_valid_pattern

PRIMES = [2, 3, 5, 7, 11, 13]


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args, input=None):
    return runner.invoke(cli, list(args), input=input)


class TestTwoMinimalAutomata:
    """(aa)*+a*ba* has two nonisomorphic minimal reversible DFAs."""

    def test_library(self):
        m = regex_to_dfa("(aa)*+a*ba*")
        assert m.size == 3
        a, _, _ = to_minimal_revdfa(m)
        assert a.size == 4
        alt = gen_alt_minimal(a, m)
        assert alt.size == 4
        assert not isomorphic(a, alt)
        assert is_minimal_revdfa(alt, m)[0]

    def test_cli(self, runner):
        minimum = run(runner, "regex", "(aa)*+a*ba*").output
        assert parse_dfa(minimum).size == 3
        converted = run(runner, "convert", "-", input=minimum).output
        assert parse_dfa(converted).size == 4
        alt = run(runner, "alt-minimal", "-", "corpus:fig3_min", input=converted).output
        assert parse_dfa(alt).size == 4
        assert run(runner, "iso", "-", "corpus:fig3_rev1", input=alt).exit_code == 1
        assert run(runner, "unique", "-", input=minimum).exit_code == 1


class TestLoopUnrolling:
    """gen-reduced on (aa)*+a*ba*."""

    def test_five_copies(self, runner):
        built = run(runner, "gen-reduced", "corpus:fig3_min", "--n", "5").output
        assert parse_dfa(built).size == 7
        assert run(runner, "iso", "-", "corpus:fig4", input=built).exit_code == 0
        assert run(runner, "is-reduced", "-", input=built).exit_code == 0
        assert run(runner, "is-minimal", "-", "corpus:fig3_min", input=built).exit_code == 1

    def test_six_copies(self, runner):
        built = run(runner, "gen-reduced", "corpus:fig3_min", "--n", "6").output
        assert run(runner, "is-reduced", "-", input=built).exit_code == 1

    def test_prime_family(self, corpus):
        """Test that prime sizes give pairwise distinct reduced automata of the language."""
        m = corpus("fig3_min")
        witness = find_irrev_hypothesis(m)
        minimal_size = to_minimal_revdfa(m)[0].size
        family = [gen_reduced(m, witness, n) for n in PRIMES]
        for n, a in zip(PRIMES, family):
            assert a.size == n + 2
            assert a.size > m.size
            if n >= 3:
                assert a.size > minimal_size
            assert is_reversible_dfa(a)
            assert equivalent(a, m) == (True, None)
            assert is_reduced(a)[0], n
        for i, first in enumerate(family):
            for second in family[i + 1:]:
                assert not isomorphic(first, second)


class TestNonReversibleLanguage:
    """a*b* is not accepted by any reversible DFA."""

    def test_witness(self, runner):
        m = regex_to_dfa("a*b*")
        witness = find_forbidden_pattern(m)
        assert witness is not None
        assert_valid_pattern(m, witness)
        result = run(runner, "--witness", "reversible", "-", input=run(runner, "regex", "a*b*").output)
        assert result.exit_code == 1
        assert result.output.startswith("false\n")


class TestCopyCountsOnSink:
    """(bb+a)(ab+b)a: the accepting sink needs two copies."""

    def test_cli(self, runner, corpus):
        assert "q: 2" in run(runner, "counts", "corpus:fig8_min").output.splitlines()
        assert run(runner, "wset", "corpus:fig8_min", "q").output.splitlines() == ["r1 ba", "r2 ba"]
        assert run(runner, "unique", "corpus:fig8_min").exit_code == 0
        converted = parse_dfa(run(runner, "convert", "corpus:fig8_min").output)
        assert converted.size == 8
        assert isomorphic(converted, corpus("fig8_minrev"))


class TestUniqueLanguageReduces:
    """Every reduced reversible DFA for (aa)*+a*b is the minimal one."""

    def test_unique(self, runner):
        assert run(runner, "unique", "corpus:fig9_min").exit_code == 0

    @pytest.mark.parametrize("seed", range(20))
    def test_inflated(self, corpus, seed):
        minimal = corpus("fig9_minrev")
        inflated = inflate_revdfa(minimal, seed, 2 + seed % 3)
        if seed % 2:
            inflated = inflate_revdfa(inflated, seed + 100, 2)
        assert equivalent(inflated, minimal)[0]
        assert isomorphic(reduce(inflated), minimal)


class TestHypothesisTriage:
    """Which languages admit the loop-unrolling construction."""

    @pytest.mark.parametrize("name, found", [
        ("fig5_min", True),
        ("fig6_min", True),
        ("fig7_min", False),
    ])
    def test_hypothesis(self, runner, name, found):
        result = run(runner, "hypothesis", f"corpus:{name}")
        assert (result.exit_code == 0) == found


class TestCorpusIntegrity:
    """Fixtures agree with their caption regexes."""

    def test_all_fixtures(self, corpus_dir):
        results = check_corpus(corpus_dir)
        assert [r.entry.name for r in results if not r.ok] == []

    def test_split(self, corpus):
        parts = split_parts(corpus("fig1"))
        assert parts.reversible_part == {"qI", "q1", "q2"}
        assert parts.irreversible_part == {"q3", "q4"}


class TestFiniteLanguage:
    """A reduced automaton for a finite language that is not minimal."""

    def test_reduced_not_minimal(self, corpus):
        a = corpus("fig10_reduced")
        m = corpus("fig10_min")
        assert is_reversible_dfa(a)
        assert is_reduced(a)[0]
        assert not is_minimal_revdfa(a, m)[0]
        assert isomorphic(minimize(a)[0], m)
