import logging

from delextra.api import ParseTree, Sentence, Treebank
from delextra.parsing.decoder import decode, score_edges
from delextra.parsing.model import ParserModel


logger = logging.getLogger(__name__)


def parse_tree(model: ParserModel, sentence: Sentence) -> ParseTree:
    return decode(score_edges(model, sentence))


def parse_sentence(model: ParserModel, sentence: Sentence) -> Sentence:
    """Return ``sentence`` with the heads predicted by ``model``"""
    return sentence.with_heads(parse_tree(model, sentence).heads)


def parse_treebank(model: ParserModel, treebank: Treebank) -> Treebank:
    logger.debug(f'Parsing {len(treebank)} sentences with the '
                 f'{model.meta.language or "unnamed"} model')
    return treebank.with_sentences(parse_sentence(model, s) for s in treebank)
