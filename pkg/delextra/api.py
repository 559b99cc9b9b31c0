from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterator, Optional, Sequence


@dataclass(frozen=True)
class Token:
    index: int
    """1-based position of the token in its sentence"""

    form: str = ''
    """Surface string, empty when the column holds '_'"""

    lemma: str = ''

    upos: str = 'X'
    """One of the 12 coarse universal POS tags"""

    head: int = 0
    """Index of the governing token, 0 being the technical root"""

    deprel: str = '_'
    """Dependency label. It is carried through for output but never used
    by the parser, which is unlabelled.
    """


@dataclass(frozen=True)
class Sentence:
    tokens: tuple = ()

    def __len__(self):
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def __getitem__(self, index):
        """Return the token at the 1-based ``index``"""
        return self.tokens[index - 1]

    @property
    def heads(self):
        return tuple(t.head for t in self.tokens)

    @property
    def tags(self):
        return tuple(t.upos for t in self.tokens)

    def with_heads(self, heads: Sequence[int]) -> 'Sentence':
        """Return a copy of the sentence whose heads are replaced"""
        if len(heads) != len(self.tokens):
            raise ValueError(
                f'Expected {len(self.tokens)} heads, got {len(heads)}'
            )
        tokens = tuple(replace(t, head=int(h))
                       for t, h in zip(self.tokens, heads))
        return Sentence(tokens)

    def children(self, index):
        """Indices of the dependents of ``index`` in surface order"""
        return [t.index for t in self.tokens if t.head == index]


@dataclass(frozen=True)
class Treebank:
    language: str
    sentences: tuple = ()

    def __len__(self):
        return len(self.sentences)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    @property
    def token_count(self):
        return sum(len(s) for s in self.sentences)

    def retag(self, language) -> 'Treebank':
        return Treebank(language, self.sentences)

    def with_sentences(self, sentences) -> 'Treebank':
        return Treebank(self.language, tuple(sentences))


@dataclass(frozen=True)
class ParseTree:
    heads: tuple
    """heads[d - 1] is the head of token d"""

    score: Optional[float] = None
    """Total score of the tree when it was produced by a decoder"""

    def __len__(self):
        return len(self.heads)


class Style(Enum):
    """Adposition annotation style"""

    PRAGUE = 'P'
    """The adposition heads its noun phrase"""

    STANFORD = 'S'
    """The adposition is a leaf under the lexical head"""

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class StyleSetup:
    """Where style conversions happen in a transfer experiment, written
    as ``parsing/combination/output``, eg. ``P,S/S/P``
    """

    parse_styles: tuple = (Style.PRAGUE,)
    combine_style: Style = Style.PRAGUE
    output_style: Style = Style.PRAGUE

    def __str__(self):
        parse = ','.join(s.value for s in self.parse_styles)
        return f'{parse}/{self.combine_style}/{self.output_style}'


@dataclass
class EvaluationReport:
    uas: float
    uas_nonpunct: Optional[float] = None
    per_pos: dict = field(default_factory=dict)
    tokens: int = 0
