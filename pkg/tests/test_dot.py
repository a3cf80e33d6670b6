"""
Tests for core.dot module.
"""
from core.dot import IRREVERSIBLE_FILL, REVERSIBLE_FILL, emit_dot
from core.reversibility import split_parts


class TestEmitDot:
    """Tests for emit_dot."""

    def test_plain(self, fig3_min):
        """Test that accepting states are double-circled and nothing is shaded."""
        source = emit_dot(fig3_min)
        assert source.startswith("digraph dfa {")
        assert "doublecircle" in source
        assert "fillcolor" not in source
        assert "dashed" not in source
        assert "__start -> qI" in source

    def test_letters_grouped(self, corpus):
        """Test that q3 -a,b-> q4 is drawn as one edge."""
        source = emit_dot(corpus("fig1"))
        assert "q3 -> q4 [label=\"a,b\"]" in source

    def test_split(self, corpus):
        """Test the two tones and the two dashed border edges of fig1."""
        dfa = corpus("fig1")
        source = emit_dot(dfa, split_parts(dfa))
        assert source.count(REVERSIBLE_FILL) == 3
        assert source.count(IRREVERSIBLE_FILL) == 2
        assert source.count("dashed") == 2
        assert "class=irreversible" in source

    def test_quoted_names(self, corpus):
        source = emit_dot(corpus("fig3_rev1"))
        assert "\"q''\"" in source
