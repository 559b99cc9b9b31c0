from dataclasses import dataclass
import logging

import numpy as np

from delextra.api import ParseTree, Sentence
from delextra.parsing.features import sentence_features
from delextra.parsing.model import ParserModel


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeScores:
    """Scores of all candidate edges of a sentence of ``n`` tokens.

    ``matrix[h, d]`` is the score of the edge h -> d; it has shape
    (n + 1, n + 1) and holds -inf on the diagonal and in column 0, the
    root having no head.
    """

    matrix: np.ndarray

    @property
    def n(self):
        return self.matrix.shape[0] - 1

    def __getitem__(self, edge):
        return self.matrix[edge]

    def tree_score(self, heads):
        dependents = np.arange(1, len(heads) + 1)
        return float(self.matrix[np.asarray(heads), dependents].sum())

    @classmethod
    def from_matrix(cls, matrix):
        matrix = np.array(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f'Expected a square matrix, got {matrix.shape}')
        np.fill_diagonal(matrix, -np.inf)
        matrix[:, 0] = -np.inf
        return cls(matrix)


def score_edges(model: ParserModel, sentence: Sentence, features=None):
    """Score each candidate edge as the sum of the weights of its active
    features. ``features`` may hold precomputed sentence features.
    """
    if features is None:
        features = sentence_features(sentence, lexical=not model.meta.delex)
    n = len(sentence)
    matrix = np.zeros((n + 1, n + 1))
    for (h, d), edge_features in features.items():
        matrix[h, d] = model.score(edge_features)
    return EdgeScores.from_matrix(matrix)


def _find_cycle(heads):
    """Return the nodes of a cycle in ``heads`` (heads[0] is ignored),
    or None"""
    state = np.zeros(len(heads), dtype=int)  # 0 new, 1 on path, 2 done
    state[0] = 2
    for start in range(1, len(heads)):
        path = []
        node = start
        while state[node] == 0:
            state[node] = 1
            path.append(node)
            node = heads[node]
        if state[node] == 1:
            return path[path.index(node):]
        for visited in path:
            state[visited] = 2
    return None


def _chu_liu_edmonds(matrix):
    """Maximum spanning arborescence rooted at 0 of the complete graph
    ``matrix[h, d]``. Returns heads with heads[0] = -1.

    Ties go to the lowest head index (np.argmax keeps the first maximum).
    """
    size = matrix.shape[0]
    heads = np.argmax(matrix, axis=0)
    heads[0] = -1
    cycle = _find_cycle(heads)
    if cycle is None:
        return heads

    in_cycle = np.zeros(size, dtype=bool)
    in_cycle[cycle] = True
    cycle_nodes = np.flatnonzero(in_cycle)
    rest = np.flatnonzero(~in_cycle)
    k = len(rest)
    cycle_scores = matrix[heads[cycle_nodes], cycle_nodes]

    # Contract the cycle into node k. Entering it at v breaks the cycle
    # edge into v, hence the score correction.
    entering = matrix[np.ix_(rest, cycle_nodes)] - cycle_scores
    entry_choice = np.argmax(entering, axis=1)
    leaving = matrix[np.ix_(cycle_nodes, rest)]
    exit_choice = np.argmax(leaving, axis=0)

    contracted = np.full((k + 1, k + 1), -np.inf)
    contracted[:k, :k] = matrix[np.ix_(rest, rest)]
    contracted[:k, k] = entering[np.arange(k), entry_choice]
    contracted[k, :k] = leaving[exit_choice, np.arange(k)]
    contracted[:, 0] = -np.inf
    np.fill_diagonal(contracted, -np.inf)

    contracted_heads = _chu_liu_edmonds(contracted)

    result = np.full(size, -1)
    for i in range(1, k):
        h = contracted_heads[i]
        if h == k:
            result[rest[i]] = cycle_nodes[exit_choice[i]]
        else:
            result[rest[i]] = rest[h]
    result[cycle_nodes] = heads[cycle_nodes]
    cycle_head = contracted_heads[k]
    result[cycle_nodes[entry_choice[cycle_head]]] = rest[cycle_head]
    return result


def decode(scores: EdgeScores) -> ParseTree:
    """Find the maximum spanning arborescence rooted at the technical root
    with the Chu-Liu-Edmonds algorithm"""
    n = scores.n
    if n < 1:
        raise ValueError('Cannot decode an empty sentence')
    heads = _chu_liu_edmonds(scores.matrix)[1:]
    heads = tuple(int(h) for h in heads)
    return ParseTree(heads, scores.tree_score(heads))
