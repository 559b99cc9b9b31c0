UPOS_TAGS = (
    'NOUN', 'VERB', '.', 'ADJ', 'ADP', 'PRON',
    'CONJ', 'ADV', 'PRT', 'NUM', 'DET', 'X',
)

ADP = 'ADP'
CONJ = 'CONJ'
PUNCT = '.'
UNKNOWN = 'X'

# Sentinel tags
ROOT_TAG = 'ROOT'
BOS_TAG = 'BOS'
EOS_TAG = 'EOS'

EMPTY = '_'


class COLUMN:
    INDEX = 0
    FORM = 1
    LEMMA = 2
    UPOS = 3
    HEAD = 4
    DEPREL = 5

MULTI_LANGUAGE = 'multi'
"""Language code of treebanks and models built from several sources"""
