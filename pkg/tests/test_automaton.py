"""
Tests for core.automaton module.
"""
import pytest

from core.automaton import Dfa, fresh_name, reverse_delta, run, show_word
from core.errors import InputError, UselessState
from tests.oracles import CORPUS_NAMES, words_up_to, with_alphabet
from tests.oracles import renamed as rename_states


class TestBuild:
    """Tests for Dfa.build validation."""

    def test_build_simple(self, small_dfa):
        """Test building a valid automaton."""
        assert small_dfa.size == 2
        assert small_dfa.alphabet == ("a", "b")
        assert small_dfa.initial == "q0"
        assert small_dfa.finals == frozenset({"q1"})

    def test_accepts_mapping_transitions(self):
        """Test that a {(source, letter): target} map is accepted."""
        dfa = Dfa.build(["s", "t"], "a", "s", ["t"], {("s", "a"): "t"})
        assert dfa.step("s", "a") == "t"

    def test_nondeterministic_rejected(self):
        """Test that two targets for one (state, letter) raise."""
        with pytest.raises(InputError, match="two transitions"):
            Dfa.build(["q0", "q1"], "a", "q0", ["q1"],
                      [("q0", "a", "q0"), ("q0", "a", "q1")])

    def test_unknown_initial_rejected(self):
        with pytest.raises(InputError):
            Dfa.build(["q0"], "a", "nope", ["q0"], [])

    def test_unknown_letter_rejected(self):
        with pytest.raises(InputError, match="outside the alphabet"):
            Dfa.build(["q0", "q1"], "a", "q0", ["q1"], [("q0", "b", "q1")])

    def test_multichar_letter_rejected(self):
        with pytest.raises(InputError, match="single character"):
            Dfa.build(["q0"], ["ab"], "q0", ["q0"], [])

    @pytest.mark.parametrize("letter", ["#", " ", "\t", "ε"])
    def test_reserved_letter_rejected(self, letter):
        """Test that letters the text format cannot carry are refused."""
        with pytest.raises(InputError, match="reserved"):
            Dfa.build(["q0"], ["a", letter], "q0", ["q0"], [("q0", letter, "q0")])

    def test_useless_state_rejected(self):
        """Test that unreachable or unproductive states are reported by name."""
        with pytest.raises(UselessState) as info:
            Dfa.build(["q0", "q1", "dead"], "ab", "q0", ["q1"],
                      [("q0", "a", "q1"), ("q0", "b", "dead")])
        assert info.value.states == ("dead",)

    def test_useless_allowed_then_trimmed(self):
        """Test check_useful=False followed by trim."""
        dfa = Dfa.build(["q0", "q1", "dead", "lost"], "ab", "q0", ["q1"],
                        [("q0", "a", "q1"), ("q0", "b", "dead")], check_useful=False)
        assert dfa.useless_states() == ["dead", "lost"]
        trimmed = dfa.trim()
        assert trimmed.states == ("q0", "q1")
        assert trimmed.delta == {("q0", "a"): "q1"}

    def test_trim_empty_language(self):
        """Test that an automaton accepting nothing cannot be trimmed."""
        dfa = Dfa.build(["q0"], "a", "q0", [], [("q0", "a", "q0")], check_useful=False)
        with pytest.raises(InputError, match="accepts no word"):
            dfa.trim()


class TestRun:
    """Tests for δ extended to words."""

    def test_run_defined(self, small_dfa):
        assert small_dfa.run("aab") == "q1"
        assert run(small_dfa, "") == "q0"

    def test_run_undefined(self, small_dfa):
        """Test that a missing transition yields None."""
        assert small_dfa.run("ba") is None
        assert small_dfa.run("bb") is None

    def test_run_from_state(self, fig3_min):
        assert fig3_min.run("aa", start="p") == "p"

    def test_bad_letter(self, small_dfa):
        with pytest.raises(InputError):
            small_dfa.run("ac")

    def test_unknown_start(self, small_dfa):
        with pytest.raises(InputError):
            small_dfa.run("a", start="zz")

    def test_accepts(self, small_dfa):
        assert small_dfa.accepts("aaab")
        assert not small_dfa.accepts("aaa")
        assert not small_dfa.accepts("bab")


class TestReverse:
    """Tests for reverse transitions."""

    def test_reverse_delta(self, fig3_min):
        """Test that q is entered on b from both qI and p."""
        assert fig3_min.reverse_delta("q", "b") == frozenset({"qI", "p"})
        assert reverse_delta(fig3_min, "q", "a") == frozenset({"q"})
        assert fig3_min.reverse_delta("qI", "b") == frozenset()

    def test_reverse_delta_errors(self, fig3_min):
        with pytest.raises(InputError):
            fig3_min.reverse_delta("missing", "a")
        with pytest.raises(InputError):
            fig3_min.reverse_delta("q", "z")

    def test_in_and_out_letters(self, fig3_min):
        assert fig3_min.in_letters("q") == ["a", "b"]
        assert fig3_min.in_letters("qI") == ["a"]
        assert [a for a, _ in fig3_min.successors("q")] == ["a"]


class TestCanonical:
    """Tests for canonical order, canonical form and fingerprints."""

    def test_canonical_order(self, fig3_min):
        """Test BFS order with sorted letters."""
        assert fig3_min.canonical_order == ("qI", "p", "q")
        assert fig3_min.canonical_index == {"qI": 0, "p": 1, "q": 2}

    def test_transitions_sorted(self, fig9_min):
        assert fig9_min.transitions() == [
            ("qI", "a", "p"), ("qI", "b", "q"), ("p", "a", "qI"), ("p", "b", "q"),
        ]

    def test_renaming_keeps_form(self, fig3_min):
        """Test that renaming states does not change the canonical form."""
        renamed = rename_states(fig3_min, {"qI": "x", "p": "y", "q": "z"})
        assert renamed.states != fig3_min.states
        assert renamed.canonical_form() == fig3_min.canonical_form()
        assert renamed.fingerprint() == fig3_min.fingerprint()

    def test_different_automata_differ(self, fig3_min, fig9_min):
        assert fig3_min.fingerprint() != fig9_min.fingerprint()

    def test_unused_letters_ignored(self, small_dfa):
        """Test that declared but unused letters do not change the form."""
        wider = with_alphabet(small_dfa, "abc")
        assert wider.alphabet == ("a", "b", "c")
        assert wider.canonical_form() == small_dfa.canonical_form()

    def test_fingerprint_is_hex(self, small_dfa):
        digest = small_dfa.fingerprint()
        assert len(digest) == 16
        int(digest, 16)

    def test_sort_states(self, fig3_min):
        assert fig3_min.sort_states({"q", "qI"}) == ["qI", "q"]


class TestShortestWords:
    """Tests for shortest_words."""

    def test_from_initial(self, fig3_min):
        assert fig3_min.shortest_words() == {"qI": "", "p": "a", "q": "b"}

    def test_from_state(self, fig3_min):
        assert fig3_min.shortest_words("p") == {"p": "", "qI": "a", "q": "b"}

    def test_within(self, fig3_min):
        """Test restricting the search to a set of states."""
        assert fig3_min.shortest_words("qI", within={"qI", "p"}) == {"qI": "", "p": "a"}


class TestHelpers:
    """Tests for module helpers."""

    def test_fresh_name(self):
        assert fresh_name("q", set()) == "q"
        assert fresh_name("q", {"q"}) == "q.1"
        assert fresh_name("q", {"q", "q.1"}) == "q.2"

    def test_show_word(self):
        assert show_word("") == "ε"
        assert show_word("ab") == "ab"


class TestCorpusConsistency:
    """run and reverse_delta agree with δ on every fixture."""

    @pytest.mark.parametrize("name", CORPUS_NAMES)
    def test_reverse_delta_inverts_step(self, corpus, name):
        dfa = corpus(name)
        for state in dfa.states:
            for letter in dfa.alphabet:
                expected = {p for p in dfa.states if dfa.step(p, letter) == state}
                assert set(dfa.reverse_delta(state, letter)) == expected
                assert set(reverse_delta(dfa, state, letter)) == expected

    @pytest.mark.parametrize("name", CORPUS_NAMES)
    def test_run_composes_steps(self, corpus, name):
        dfa = corpus(name)
        for start in dfa.states:
            for word in words_up_to(dfa.alphabet, 3):
                state = start
                for letter in word:
                    state = dfa.step(state, letter) if state is not None else None
                assert dfa.run(word, start=start) == state
        for word in words_up_to(dfa.alphabet, 3):
            assert run(dfa, word) == dfa.run(word, start=dfa.initial)
