"""
Graphviz DOT export.
"""
from typing import Dict, List, Optional, Tuple

from graphviz import Digraph

from core.automaton import Dfa
from core.models import PartSplit

REVERSIBLE_FILL = "#dbe8f7"
IRREVERSIBLE_FILL = "#f7dcd9"


def emit_dot(dfa: Dfa, highlight: Optional[PartSplit] = None, name: str = "dfa") -> str:
    """
    Render a Dfa as a DOT digraph.

    Args:
        dfa: Automaton to draw
        highlight: Optional part split; parts get two fill colours and border
            transitions are dashed
        name: Graph name

    Returns:
        DOT source text
    """
    dot = Digraph(name=name)
    dot.attr(rankdir="LR")
    dot.node("__start", label="", shape="none", width="0", height="0")

    for state in dfa.canonical_order:
        attrs = {"shape": "doublecircle" if state in dfa.finals else "circle"}
        if highlight is not None:
            reversible = state in highlight.reversible_part
            attrs.update(style="filled",
                         fillcolor=REVERSIBLE_FILL if reversible else IRREVERSIBLE_FILL,
                         **{"class": "reversible" if reversible else "irreversible"})
        dot.node(state, **attrs)
    dot.edge("__start", dfa.initial)

    # one edge per (source, target), letters joined
    grouped: Dict[Tuple[str, str], List[str]] = {}
    for src, letter, dst in dfa.transitions():
        grouped.setdefault((src, dst), []).append(letter)
    for (src, dst), letters in grouped.items():
        attrs = {"label": ",".join(letters)}
        if highlight is not None and (src, letters[0], dst) in highlight.border:
            attrs["style"] = "dashed"
        dot.edge(src, dst, **attrs)
    return dot.source
