import logging
from typing import Mapping

from delextra.api import Treebank
from delextra.evaluation import uas
from delextra.parsing.model import ParserModel
from delextra.transfer.combination import parse_with_each


logger = logging.getLogger(__name__)


def oracle_source(models: Mapping[str, ParserModel], gold: Treebank, n_jobs=None):
    """The single source whose parser scores best against the
    ``gold`` trees, as (language, uas); ties go to the lowest language code.

    Uses the target's gold trees, so this is an upper bound for source
    selection rather than a transfer method.
    """
    if not models:
        raise ValueError('No source model to choose from')
    parses = parse_with_each(models, gold, n_jobs)
    scores = {name: uas(gold, parse) for name, parse in parses.items()}
    best = min(scores, key=lambda name: (-scores[name], name))
    logger.info(f'Oracle source {best} (UAS {scores[best]:.4f})')
    return best, scores[best]
