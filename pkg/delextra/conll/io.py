from collections import Counter
import logging
from typing import Iterable, Mapping, TextIO

from delextra.api import Sentence, Token, Treebank
from delextra.conll.constants import ADP, COLUMN, EMPTY, UNKNOWN
from delextra.conll.simple_types import ST_UniversalTag
from delextra.conll.trees import tree_problem
from delextra.errors import ConllFormatError, TreeStructureError


logger = logging.getLogger(__name__)


class ConllReader:
    """Read sentences in the tab-separated column layout

        index, form, lemma, upos, head[, deprel]

    Blank lines end a sentence and lines starting with '#' are comments.
    Tags outside the coarse tagset are folded (see ST_UniversalTag) or
    replaced by X; the replacements are counted in ``unknown_tags``.
    """

    min_columns = COLUMN.HEAD + 1

    def __init__(self):
        self.unknown_tags = Counter()

    def read(self, lines: Iterable[str], language='') -> Treebank:
        sentences = []
        tokens = []
        line_number = 0
        for line_number, line in enumerate(lines, start=1):
            line = line.rstrip('\r\n')
            if line.startswith('#'):
                continue
            if not line.strip():
                if tokens:
                    sentences.append(self.close_sentence(tokens, len(sentences) + 1))
                    tokens = []
                continue
            tokens.append(self.parse_token(line, line_number, len(tokens) + 1))
        if tokens:
            sentences.append(self.close_sentence(tokens, len(sentences) + 1))
        if self.unknown_tags:
            logger.warning(
                f'{sum(self.unknown_tags.values())} tokens with unknown tags '
                f'read as {UNKNOWN}: {dict(self.unknown_tags)}'
            )
        logger.debug(f'Read {len(sentences)} sentences ({language or "?"})')
        return Treebank(language, tuple(sentences))

    def parse_token(self, line, line_number, expected_index):
        columns = line.split('\t')
        if len(columns) < self.min_columns:
            raise ConllFormatError(
                f'expected at least {self.min_columns} tab-separated columns, '
                f'found {len(columns)}',
                line_number,
            )
        try:
            index = int(columns[COLUMN.INDEX])
            head = int(columns[COLUMN.HEAD])
        except ValueError:
            raise ConllFormatError('index and head must be integers', line_number)
        if index != expected_index:
            raise ConllFormatError(
                f'token index {index} found where {expected_index} was expected',
                line_number,
            )
        deprel = EMPTY
        if len(columns) > COLUMN.DEPREL and columns[COLUMN.DEPREL]:
            deprel = columns[COLUMN.DEPREL]
        return Token(
            index=index,
            form=self.normalize_empty(columns[COLUMN.FORM]),
            lemma=self.normalize_empty(columns[COLUMN.LEMMA]),
            upos=self.fold_upos(columns[COLUMN.UPOS]),
            head=head,
            deprel=deprel,
        )

    @classmethod
    def normalize_empty(cls, value):
        return '' if value == EMPTY else value

    def fold_upos(self, tag):
        upos = ST_UniversalTag.upos_value(tag)
        if upos is None:
            self.unknown_tags[tag] += 1
            return UNKNOWN
        return upos

    @classmethod
    def close_sentence(cls, tokens, sentence_number):
        problem = tree_problem([t.head for t in tokens])
        if problem:
            raise TreeStructureError(problem, sentence_number)
        return Sentence(tuple(tokens))


def read_treebank(source: Iterable[str], language='') -> Treebank:
    return ConllReader().read(source, language)


def open_treebank(filename, language=''):
    with open(filename, encoding='utf-8', newline='') as file:
        return read_treebank(file, language)


def format_token(token: Token):
    columns = (
        str(token.index),
        token.form or EMPTY,
        token.lemma or EMPTY,
        token.upos,
        str(token.head),
        token.deprel or EMPTY,
    )
    return '\t'.join(columns)


def write_treebank(treebank: Treebank, sink: TextIO):
    for sentence in treebank:
        for token in sentence:
            sink.write(format_token(token) + '\n')
        sink.write('\n')


def save_treebank(treebank: Treebank, filename):
    with open(filename, 'w', encoding='utf-8', newline='\n') as file:
        write_treebank(treebank, file)


def fold_upos(tag):
    """Map a UD or coarse tag onto the coarse tagset, X when unknown"""
    return ST_UniversalTag.upos_value(tag) or UNKNOWN


def adposition_ratio(treebank: Treebank):
    """Share of ADP tokens among all tokens of the treebank"""
    total = treebank.token_count
    if not total:
        return 0.0
    adpositions = sum(1 for s in treebank for t in s if t.upos == ADP)
    return adpositions / total


def treebank_statistics(treebank: Treebank):
    return {
        'sentences': len(treebank),
        'tokens': treebank.token_count,
        'adp_ratio': adposition_ratio(treebank),
    }


def select_treebanks(treebanks: Mapping[str, Treebank], min_tokens=0,
                     min_adp_ratio=0.0, max_adp_ratio=1.0):
    """Keep the treebanks with at least ``min_tokens`` tokens whose share of
    adpositions lies in [min_adp_ratio, max_adp_ratio]"""
    selected = {}
    for language, treebank in treebanks.items():
        tokens = treebank.token_count
        ratio = adposition_ratio(treebank)
        if tokens < min_tokens:
            logger.info(f'Dropping {language}: {tokens} tokens')
        elif not min_adp_ratio <= ratio <= max_adp_ratio:
            logger.info(f'Dropping {language}: adposition ratio {ratio:.3f}')
        else:
            selected[language] = treebank
    return selected
