from delextra.conll.constants import UPOS_TAGS


class TagTable:

    @classmethod
    def upos_value(cls, tag):
        return cls.tags2upos.get(tag, None)


class ST_UniversalTag(TagTable):
    """Folding of the 17 Universal Dependencies tags onto the 12 coarse
    universal POS tags. The coarse tags map onto themselves so that both
    tagsets can be read with the same table.
    """

    tags2upos = {
        'AUX': 'VERB',
        'CCONJ': 'CONJ',
        'INTJ': 'X',
        'PART': 'PRT',
        'PROPN': 'NOUN',
        'PUNCT': '.',
        'SCONJ': 'CONJ',
        'SYM': 'X',

        **{tag: tag for tag in UPOS_TAGS},
    }
