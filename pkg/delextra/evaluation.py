from collections import Counter
import logging

from delextra.api import EvaluationReport, Treebank
from delextra.conll.constants import PUNCT
from delextra.errors import ShapeMismatchError


logger = logging.getLogger(__name__)


def _aligned_tokens(gold: Treebank, pred: Treebank):
    if len(gold) != len(pred):
        raise ShapeMismatchError(
            f'Gold has {len(gold)} sentences, prediction has {len(pred)}'
        )
    for number, (g, p) in enumerate(zip(gold, pred), start=1):
        if len(g) != len(p):
            raise ShapeMismatchError(
                f'sentence {number}: gold has {len(g)} tokens, '
                f'prediction has {len(p)}'
            )
        yield from zip(g, p)


def _ratio(pairs):
    correct = total = 0
    for g, p in pairs:
        total += 1
        correct += g.head == p.head
    return correct, total


def uas(gold: Treebank, pred: Treebank):
    correct, total = _ratio(_aligned_tokens(gold, pred))
    if not total:
        raise ShapeMismatchError('Cannot score an empty treebank')
    return correct / total


def uas_nonpunct(gold: Treebank, pred: Treebank):
    """UAS over tokens whose gold tag is not '.'"""
    pairs = (pair for pair in _aligned_tokens(gold, pred) if pair[0].upos != PUNCT)
    correct, total = _ratio(pairs)
    if not total:
        raise ShapeMismatchError('No non-punctuation token to score')
    return correct / total


def per_pos_accuracy(gold: Treebank, pred: Treebank):
    """Attachment accuracy by gold UPOS of the dependent, for tags that
    occur in ``gold``"""
    correct = Counter()
    total = Counter()
    for g, p in _aligned_tokens(gold, pred):
        total[g.upos] += 1
        correct[g.upos] += g.head == p.head
    return {tag: correct[tag] / total[tag] for tag in sorted(total)}


def evaluate(gold: Treebank, pred: Treebank) -> EvaluationReport:
    """All the scores at once. Non-punctuation UAS is left out when the
    gold treebank is nothing but punctuation."""
    try:
        nonpunct = uas_nonpunct(gold, pred)
    except ShapeMismatchError:
        # Shape problems resurface in uas below
        nonpunct = None
    report = EvaluationReport(
        uas=uas(gold, pred),
        uas_nonpunct=nonpunct,
        per_pos=per_pos_accuracy(gold, pred),
        tokens=gold.token_count,
    )
    logger.info(f'UAS {report.uas:.4f} over {report.tokens} tokens')
    return report
