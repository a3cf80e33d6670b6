"""
Tests for core.regex module.
"""
import pytest

from core.errors import InputError
from core.minimize import equivalent
from core.morphism import isomorphic
from core.regex import regex_to_dfa


class TestRegexToDfa:
    """Tests for regex_to_dfa."""

    def test_star_star(self, ab_star):
        """Test that a*b* gives the two-state minimum DFA."""
        dfa = regex_to_dfa("a*b*")
        assert dfa.size == 2
        assert isomorphic(dfa, ab_star)

    def test_twocopy_language(self, fig3_min):
        dfa = regex_to_dfa("(aa)*+a*ba*")
        assert dfa.size == 3
        assert isomorphic(dfa, fig3_min)

    def test_words(self):
        """Test membership on a few words."""
        dfa = regex_to_dfa("a+(aa+ba)(a+b)")
        for word in ("a", "aaa", "aab", "baa", "bab"):
            assert dfa.accepts(word)
        for word in ("", "aa", "ba", "b", "aaaa"):
            assert not dfa.accepts(word)

    def test_epsilon(self):
        """Test ε and the empty group as the empty word."""
        dfa = regex_to_dfa("a(ε+b)")
        assert dfa.accepts("a")
        assert dfa.accepts("ab")
        assert equivalent(dfa, regex_to_dfa("a(+b)"))[0]

    def test_whitespace_ignored(self):
        assert equivalent(regex_to_dfa("a b *"), regex_to_dfa("ab*"))[0]

    def test_alphabet_from_pattern(self):
        assert regex_to_dfa("c(a+b)").alphabet == ("a", "b", "c")

    @pytest.mark.parametrize("pattern", ["(a", "a)", "*a", "a+(b*"])
    def test_syntax_errors(self, pattern):
        with pytest.raises(InputError):
            regex_to_dfa(pattern)

    @pytest.mark.parametrize("pattern", ["#", "a#b", "(a+#)*"])
    def test_comment_mark_rejected(self, pattern):
        """Test that '#' is refused, since the automaton could not be written out."""
        with pytest.raises(InputError, match="cannot be a letter"):
            regex_to_dfa(pattern)
