"""
Strongly connected components and their reachability order.
"""
import logging

import networkx as nx

from core.automaton import Dfa
from core.models import SccDecomposition

logger = logging.getLogger(__name__)


def transition_graph(dfa: Dfa) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(dfa.states)
    graph.add_edges_from((src, dst) for (src, _), dst in dfa.delta.items())
    return graph


def sccs(dfa: Dfa) -> SccDecomposition:
    """
    Decompose a Dfa into SCCs.

    Components are numbered by their smallest canonical index; `reach[i]` holds every
    component reachable from component i in the condensation.
    """
    graph = transition_graph(dfa)
    index = dfa.canonical_index
    found = [frozenset(c) for c in nx.strongly_connected_components(graph)]
    components = tuple(sorted(found, key=lambda c: min(index[s] for s in c)))
    component_of = {s: i for i, c in enumerate(components) for s in c}

    nontrivial = tuple(
        len(c) > 1 or any(graph.has_edge(s, s) for s in c) for c in components
    )

    dag = nx.condensation(graph, scc=list(components))
    # condensation numbers nodes in the order of the scc list given
    reach = tuple(frozenset(nx.descendants(dag, i)) for i in range(len(components)))
    logger.debug(f"{len(components)} components, {sum(nontrivial)} nontrivial")
    return SccDecomposition(components, component_of, nontrivial, reach)
