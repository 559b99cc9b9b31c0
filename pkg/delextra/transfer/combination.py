import logging
from typing import Mapping, Optional, Sequence

from joblib import Parallel, delayed
import numpy as np

from delextra.api import ParseTree, Style, Treebank
from delextra.conll.constants import MULTI_LANGUAGE
from delextra.errors import ShapeMismatchError
from delextra.parsing.decoder import EdgeScores, decode
from delextra.parsing.model import ParserModel, check_compatible
from delextra.parsing.parser import parse_treebank
from delextra.transform import convert_treebank
from delextra.utils import worker_count


logger = logging.getLogger(__name__)


def concat_treebanks(treebanks: Sequence[Treebank]) -> Treebank:
    if not treebanks:
        raise ValueError('Nothing to concatenate')
    sentences = tuple(s for tb in treebanks for s in tb)
    return Treebank(MULTI_LANGUAGE, sentences)


def vote_graph(trees: Sequence[ParseTree], weights: Sequence[float]) -> EdgeScores:
    if not trees:
        raise ShapeMismatchError('No parse tree to combine')
    if len(trees) != len(weights):
        raise ShapeMismatchError(
            f'{len(trees)} trees but {len(weights)} weights'
        )
    n = len(trees[0])
    if any(len(t) != n for t in trees):
        raise ShapeMismatchError('Trees to combine differ in length')
    if any(w < 0 for w in weights) or not sum(weights) > 0:
        raise ValueError('Weights must be non-negative with a positive sum')
    matrix = np.zeros((n + 1, n + 1))
    dependents = np.arange(1, n + 1)
    for tree, weight in zip(trees, weights):
        matrix[np.asarray(tree.heads), dependents] += weight
    return EdgeScores.from_matrix(matrix)


def combine_parses(trees: Sequence[ParseTree],
                   weights: Optional[Sequence[float]] = None) -> ParseTree:
    if weights is None:
        weights = [1.0] * len(trees)
    return decode(vote_graph(trees, weights))


def combine_treebanks(parses: Sequence[Treebank],
                      weights: Optional[Sequence[float]] = None) -> Treebank:
    """Combine parallel parses of one treebank sentence by sentence"""
    if not parses:
        raise ShapeMismatchError('No parse to combine')
    if len({len(p) for p in parses}) > 1:
        raise ShapeMismatchError('Parsed treebanks differ in sentence count')
    combined = []
    for sentences in zip(*(p.sentences for p in parses)):
        trees = [ParseTree(s.heads) for s in sentences]
        tree = combine_parses(trees, weights)
        combined.append(sentences[0].with_heads(tree.heads))
    return parses[0].with_sentences(combined)


def _weights_for(names, weights):
    if weights is None:
        return [1.0] * len(names)
    return [float(weights.get(name, 0.0)) for name in names]


def parse_with_each(models: Mapping[str, ParserModel], target: Treebank,
                    n_jobs=None):
    """Parse ``target`` with every model, in the order of ``models``"""
    names = list(models)
    parses = Parallel(n_jobs=worker_count(n_jobs))(
        delayed(parse_treebank)(models[name], target) for name in names
    )
    return dict(zip(names, parses))


def transfer_tree_combination(models: Mapping[str, ParserModel],
                              target: Treebank,
                              weights: Optional[Mapping[str, float]] = None,
                              styles: Optional[Mapping[str, Style]] = None,
                              combine_style: Style = Style.PRAGUE,
                              n_jobs=None) -> Treebank:
    """Parse ``target`` with each source model and combine the parses.

    ``weights`` maps model names to vote weights (uniform when omitted).
    When ``styles`` gives the annotation style a model was trained in, its
    parses are first converted to ``combine_style``.
    """
    if not models:
        raise ValueError('At least one source model is needed')
    check_compatible(models.values())
    names = list(models)
    parses = parse_with_each(models, target, n_jobs)
    if styles:
        parses = {name: convert_treebank(parse, styles[name], combine_style)
                  for name, parse in parses.items()}
    vote_weights = _weights_for(names, weights)
    logger.info('Combining ' + ', '.join(
        f'{name} ({weight:.6g})' for name, weight in zip(names, vote_weights)
    ))
    return combine_treebanks([parses[name] for name in names], vote_weights)
