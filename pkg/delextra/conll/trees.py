import networkx as nx

from delextra.api import Sentence


def dependency_graph(heads):
    """Build the directed graph head -> dependent over nodes 0..n"""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(heads) + 1))
    graph.add_edges_from((h, d) for d, h in enumerate(heads, start=1))
    return graph


def is_tree(heads):
    """True iff ``heads`` form a tree over {0..n} rooted at 0.

    heads[d - 1] holds the head of token d.
    """
    n = len(heads)
    if n == 0:
        return True
    for d, h in enumerate(heads, start=1):
        if not 0 <= h <= n or h == d:
            return False
    # Node 0 has no incoming edge and every other node has exactly one,
    # so a spanning arborescence can only be rooted at 0
    return nx.is_arborescence(dependency_graph(heads))


def validate_tree(sentence: Sentence):
    return is_tree(sentence.heads)


def tree_problem(heads):
    """Describe why ``heads`` is not a tree, or return None"""
    n = len(heads)
    for d, h in enumerate(heads, start=1):
        if not 0 <= h <= n:
            return f'head {h} of token {d} is out of range [0, {n}]'
        if h == d:
            return f'token {d} is its own head'
    graph = dependency_graph(heads)
    try:
        cycle = nx.find_cycle(graph, source=None)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        nodes = ', '.join(str(edge[0]) for edge in cycle)
        return f'cycle through tokens {nodes}'
    unreachable = set(graph) - nx.descendants(graph, 0) - {0}
    if unreachable:
        return f'tokens {sorted(unreachable)} are not reachable from the root'
    return None
