import logging

from delextra.api import Sentence, Style
from delextra.conll.constants import ADP, CONJ, PUNCT
from delextra.conll.trees import tree_problem
from delextra.errors import TreeStructureError


logger = logging.getLogger(__name__)


def _check(sentence):
    problem = tree_problem(sentence.heads)
    if problem:
        raise TreeStructureError(problem)


def _children(heads, node):
    return [d for d, h in enumerate(heads, start=1) if h == node]


def _lexical_child(heads, tags, adposition):
    """Left-most non-adpositional child of ``adposition``, looking inside
    compound adpositions (adpositional children) when it has none.
    """
    children = _children(heads, adposition)
    for child in children:
        if tags[child - 1] != ADP:
            return child
    for child in children:
        found = _lexical_child(heads, tags, child)
        if found is not None:
            return found
    return None


def _first_conjunct(heads, tags, node):
    """Dive through coordinating conjunctions down to the left-most
    conjunct. Adpositions and punctuation are not conjuncts.
    """
    while tags[node - 1] == CONJ:
        conjuncts = [c for c in _children(heads, node)
                     if tags[c - 1] not in (ADP, PUNCT)]
        if not conjuncts:
            break
        node = conjuncts[0]
    return node


def prague_to_stanford(sentence: Sentence) -> Sentence:
    _check(sentence)
    heads = list(sentence.heads)
    tags = sentence.tags
    for adposition in range(1, len(heads) + 1):
        if tags[adposition - 1] != ADP:
            continue
        child = _lexical_child(heads, tags, adposition)
        if child is None:
            continue
        target = _first_conjunct(heads, tags, child)
        others = [c for c in _children(heads, adposition)
                  if c != target and tags[c - 1] != ADP]
        heads[target - 1] = heads[adposition - 1]
        heads[adposition - 1] = target
        for other in others:
            heads[other - 1] = target
    return sentence.with_heads(heads)


def stanford_to_prague(sentence: Sentence) -> Sentence:
    _check(sentence)
    heads = list(sentence.heads)
    tags = sentence.tags
    for adposition in range(1, len(heads) + 1):
        if tags[adposition - 1] != ADP:
            continue
        head = heads[adposition - 1]
        if head == 0 or tags[head - 1] == ADP:
            continue
        heads[adposition - 1] = heads[head - 1]
        heads[head - 1] = adposition
    return sentence.with_heads(heads)


CONVERTERS = {
    (Style.PRAGUE, Style.STANFORD): prague_to_stanford,
    (Style.STANFORD, Style.PRAGUE): stanford_to_prague,
}


def convert(sentence: Sentence, source: Style, target: Style) -> Sentence:
    if source == target:
        return sentence
    return CONVERTERS[source, target](sentence)


def convert_treebank(treebank, source: Style, target: Style):
    if source == target:
        return treebank
    logger.debug(f'Converting {treebank.language or "treebank"} '
                 f'from {source} to {target}')
    return treebank.with_sentences(
        convert(s, source, target) for s in treebank
    )
