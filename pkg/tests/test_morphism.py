"""
Tests for core.morphism module.
"""
import pytest

from core.errors import InputError
from core.morphism import find_morphism, isomorphic, quotient
from tests.oracles import renamed


class TestFindMorphism:
    """Tests for find_morphism and fibers."""

    def test_onto_minimum(self, corpus, fig3_min):
        """Test that both copies of q map onto q."""
        morphism = find_morphism(corpus("fig3_rev1"), fig3_min)
        assert morphism is not None
        assert morphism("q'") == morphism("q''") == "q"
        assert morphism.fiber("q") == ["q'", "q''"]
        assert morphism.fiber_sizes() == {"qI": 1, "p": 1, "q": 2}

    def test_different_languages(self, fig3_min, fig9_min):
        assert find_morphism(fig3_min, fig9_min) is None

    def test_not_onto_smaller(self, fig3_min, corpus):
        """Test that there is no morphism from a smaller automaton to a larger one."""
        assert find_morphism(fig3_min, corpus("fig3_rev1")) is None

    def test_identity(self, fig9_min):
        morphism = find_morphism(fig9_min, fig9_min)
        assert all(morphism(s) == s for s in fig9_min.states)


class TestIsomorphic:
    """Tests for isomorphic."""

    def test_two_minimal_automata_differ(self, corpus):
        """Test the two nonisomorphic minimal reversible DFAs of (aa)*+a*ba*."""
        assert not isomorphic(corpus("fig3_rev1"), corpus("fig3_rev2"))

    def test_renamed(self, fig3_min):
        assert isomorphic(fig3_min, renamed(fig3_min, {"p": "other"}))


class TestQuotient:
    """Tests for quotient."""

    def test_merge_copies(self, corpus, fig3_min):
        merged = quotient(corpus("fig3_rev1"), [("q''", "q'")])
        assert merged.size == 3
        assert "q'" in merged.states
        assert isomorphic(merged, fig3_min)

    def test_conflicting_classes(self, corpus):
        """Test that a class that is not transition-closed is rejected."""
        with pytest.raises(InputError):
            quotient(corpus("fig3_rev2"), [("qI", "p")])
