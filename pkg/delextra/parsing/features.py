from abc import ABC, abstractmethod

from delextra.api import Sentence
from delextra.conll.constants import BOS_TAG, EOS_TAG, ROOT_TAG


TEMPLATE_VERSION = 'first-order-1'
"""Identifies the template inventory below. Bump it whenever a template is
added, removed or renamed: models trained with different inventories do not
share feature strings.
"""


def bucket_distance(distance):
    """Bucket a signed head/dependent distance.

    Exact buckets are used up to 4; beyond that the >=5 and >=11 buckets
    are cumulative thresholds, so a distance of 12 falls in both.
    """
    if distance == 0:
        raise ValueError('The head and the dependent must differ')
    size = abs(distance)
    if distance > 0:
        sign, bound = '+', '>='
    else:
        sign, bound = '-', '<='
    if size <= 4:
        return (f'{sign}{size}',)
    buckets = (f'{bound}{sign}5',)
    if size >= 11:
        buckets += (f'{bound}{sign}11',)
    return buckets


class EdgeContext:
    """Everything the templates may look at for one candidate edge"""

    def __init__(self, sentence: Sentence, head, dependent):
        n = len(sentence)
        if not 0 <= head <= n or not 1 <= dependent <= n:
            raise IndexError(
                f'Edge {head}->{dependent} out of range for {n} tokens'
            )
        if head == dependent:
            raise ValueError(f'Self loop on token {head}')
        self.sentence = sentence
        self.head = head
        self.dependent = dependent
        self.buckets = bucket_distance(dependent - head)

    def tag(self, position):
        """Tag of the token at ``position``, BOS/EOS beyond the sentence"""
        if position < 1:
            return BOS_TAG
        if position > len(self.sentence):
            return EOS_TAG
        return self.sentence[position].upos

    @property
    def head_tag(self):
        return ROOT_TAG if self.head == 0 else self.tag(self.head)

    @property
    def dependent_tag(self):
        return self.tag(self.dependent)

    def between_tags(self):
        """Distinct tags strictly between the head and the dependent, in
        order of first appearance"""
        low, high = sorted((self.head, self.dependent))
        tags = (self.sentence[i].upos for i in range(low + 1, high))
        return tuple(dict.fromkeys(tags))

    def head_token(self):
        if self.head == 0:
            return None
        return self.sentence[self.head]

    def dependent_token(self):
        return self.sentence[self.dependent]


class FeatureTemplate(ABC):
    """A feature template yields tuples of values; each tuple becomes the
    feature string ``name:value1|value2|...``
    """

    name = None
    lexical = False
    with_distance = False
    """Also emit every instantiation with the distance bucket appended"""

    @abstractmethod
    def values(self, context: EdgeContext):
        pass

    def extract(self, context: EdgeContext):
        for values in self.values(context):
            yield f'{self.name}:{"|".join(values)}'
            if self.with_distance:
                for bucket in context.buckets:
                    yield f'{self.name}|dist:{"|".join(values)}|{bucket}'


class FeatureTemplateFactory:

    def __init__(self):
        self.__templates = {}

    def register(self, template_class):
        self.__templates[template_class.name] = template_class()

    def templates(self, lexical=False):
        for template in self.__templates.values():
            if lexical or not template.lexical:
                yield template


FACTORY = FeatureTemplateFactory()


def extract_edge_features(sentence: Sentence, head, dependent, lexical=False,
                          factory=None):
    """Return the feature strings of the edge head -> dependent.

    The result is a tuple without duplicates, in template order, so
    that sums over it are reproducible.
    """
    factory = factory or FACTORY
    context = EdgeContext(sentence, head, dependent)
    features = {}
    for template in factory.templates(lexical):
        for feature in template.extract(context):
            features[feature] = None
    return tuple(features)


def sentence_features(sentence: Sentence, lexical=False):
    """Features of every candidate edge of a sentence, keyed by
    (head, dependent)"""
    n = len(sentence)
    return {
        (h, d): extract_edge_features(sentence, h, d, lexical)
        for d in range(1, n + 1)
        for h in range(0, n + 1)
        if h != d
    }


########################################################################
#                                                                      #
# POS Templates                                                        #
#                                                                      #
########################################################################

class HeadTagTemplate(FeatureTemplate):
    name = 'hP'

    def values(self, context):
        yield (context.head_tag,)


class DependentTagTemplate(FeatureTemplate):
    name = 'dP'

    def values(self, context):
        yield (context.dependent_tag,)


class TagPairTemplate(FeatureTemplate):
    name = 'hP|dP'
    with_distance = True

    def values(self, context):
        yield context.head_tag, context.dependent_tag


class InnerNeighboursTemplate(FeatureTemplate):
    """Tags of the head, the token after it, the token before the
    dependent, and the dependent"""
    name = 'hP|hP+1|dP-1|dP'
    with_distance = True

    def values(self, context):
        yield (
            context.head_tag,
            context.tag(context.head + 1),
            context.tag(context.dependent - 1),
            context.dependent_tag,
        )


class OuterNeighboursTemplate(FeatureTemplate):
    name = 'hP-1|hP|dP|dP+1'
    with_distance = True

    def values(self, context):
        yield (
            context.tag(context.head - 1),
            context.head_tag,
            context.dependent_tag,
            context.tag(context.dependent + 1),
        )


class BetweenTagTemplate(FeatureTemplate):
    name = 'hP|bP|dP'
    with_distance = True

    def values(self, context):
        for tag in context.between_tags():
            yield context.head_tag, tag, context.dependent_tag


FACTORY.register(HeadTagTemplate)
FACTORY.register(DependentTagTemplate)
FACTORY.register(TagPairTemplate)
FACTORY.register(InnerNeighboursTemplate)
FACTORY.register(OuterNeighboursTemplate)
FACTORY.register(BetweenTagTemplate)


########################################################################
#                                                                      #
# Lexical Templates                                                    #
#                                                                      #
########################################################################

class LexicalTemplate(FeatureTemplate, ABC):
    lexical = True
    with_distance = True

    @property
    @abstractmethod
    def attributes(self):
        """Pairs of (node, token attribute), node being 'h' or 'd'"""

    def values(self, context):
        tokens = {'h': context.head_token(), 'd': context.dependent_token()}
        values = []
        for node, attribute in self.attributes:
            token = tokens[node]
            values.append(ROOT_TAG if token is None else getattr(token, attribute))
        yield tuple(values)


class HeadFormTemplate(LexicalTemplate):
    name = 'hForm'
    attributes = (('h', 'form'),)


class HeadLemmaTemplate(LexicalTemplate):
    name = 'hLemma'
    attributes = (('h', 'lemma'),)


class DependentFormTemplate(LexicalTemplate):
    name = 'dForm'
    attributes = (('d', 'form'),)


class DependentLemmaTemplate(LexicalTemplate):
    name = 'dLemma'
    attributes = (('d', 'lemma'),)


class FormPairTemplate(LexicalTemplate):
    name = 'hForm|dForm'
    attributes = (('h', 'form'), ('d', 'form'))


class LemmaPairTemplate(LexicalTemplate):
    name = 'hLemma|dLemma'
    attributes = (('h', 'lemma'), ('d', 'lemma'))


FACTORY.register(HeadFormTemplate)
FACTORY.register(HeadLemmaTemplate)
FACTORY.register(DependentFormTemplate)
FACTORY.register(DependentLemmaTemplate)
FACTORY.register(FormPairTemplate)
FACTORY.register(LemmaPairTemplate)
