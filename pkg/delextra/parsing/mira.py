import logging

from delextra.api import Treebank
from delextra.parsing.decoder import decode, score_edges
from delextra.parsing.features import TEMPLATE_VERSION, sentence_features
from delextra.parsing.model import ModelMeta, ParserModel


logger = logging.getLogger(__name__)


DEFAULT_ITERATIONS = 3
DEFAULT_C = 1.0


def tree_features(features, heads):
    """Feature counts of a whole tree, in a reproducible order"""
    counts = {}
    for d, h in enumerate(heads, start=1):
        for feature in features[h, d]:
            counts[feature] = counts.get(feature, 0) + 1
    return counts


def hamming_loss(gold_heads, predicted_heads):
    return sum(1 for g, p in zip(gold_heads, predicted_heads) if g != p)


class MiraTrainer:

    def __init__(self, iterations=DEFAULT_ITERATIONS, lexical=False, c=DEFAULT_C,
                 average=True):
        self.iterations = iterations
        self.lexical = lexical
        self.c = c
        self.average = average
        self.weights = {}
        self.__totals = {}
        self.steps = 0
        """Sentences seen so far"""

    def model(self):
        """A snapshot of the current (optionally averaged) weights"""
        if self.average and self.steps:
            # Mean of the weights after each sentence
            weights = {f: w - self.__totals.get(f, 0.0) / self.steps
                       for f, w in self.weights.items()}
        else:
            weights = dict(self.weights)
        return ParserModel(weights, self.meta())

    def meta(self, language=''):
        return ModelMeta(
            template_version=TEMPLATE_VERSION,
            language=language,
            delex=not self.lexical,
            provenance={
                'trainer': 'mira-single-best',
                'iterations': str(self.iterations),
                'mira_c': str(self.c),
                'averaged': str(self.average).lower(),
                'shuffle': 'none',
            },
        )

    def update(self, gold_counts, predicted_counts, loss, margin):
        """Move the weights towards the gold tree by the smallest step that
        makes it outscore the prediction by ``loss``, capped at C"""
        delta = dict(gold_counts)
        for feature, count in predicted_counts.items():
            delta[feature] = delta.get(feature, 0) - count
        delta = {f: v for f, v in delta.items() if v != 0}
        norm = sum(v * v for v in delta.values())
        if norm == 0:
            return 0.0
        tau = min(self.c, max(0.0, (loss - margin) / norm))
        if tau == 0.0:
            return tau
        for feature, value in delta.items():
            change = tau * value
            self.weights[feature] = self.weights.get(feature, 0.0) + change
            self.__totals[feature] = (self.__totals.get(feature, 0.0)
                                      + self.steps * change)
        return tau

    def score(self, features):
        weights = self.weights
        return sum(weights.get(f, 0.0) for f in features)

    def train_sentence(self, sentence, features):
        scores = score_edges(self, sentence, features)
        predicted = decode(scores).heads
        gold = sentence.heads
        loss = hamming_loss(gold, predicted)
        if loss:
            margin = scores.tree_score(gold) - scores.tree_score(predicted)
            self.update(
                tree_features(features, gold),
                tree_features(features, predicted),
                loss,
                margin,
            )
        self.steps += 1
        return loss

    def train(self, treebank: Treebank) -> ParserModel:
        if not len(treebank):
            raise ValueError('Cannot train on an empty treebank')
        cached = [(s, sentence_features(s, self.lexical)) for s in treebank]
        tokens = treebank.token_count
        for iteration in range(1, self.iterations + 1):
            errors = sum(self.train_sentence(s, f) for s, f in cached)
            logger.info(
                f'{treebank.language or "treebank"}: iteration {iteration}/'
                f'{self.iterations}, training UAS {1 - errors / tokens:.4f}'
            )
        model = self.model()
        return model.with_meta(self.meta(treebank.language))


def train_mira(treebank: Treebank, iterations=DEFAULT_ITERATIONS, lexical=False,
               c=DEFAULT_C, average=True) -> ParserModel:
    trainer = MiraTrainer(iterations, lexical=lexical, c=c, average=average)
    return trainer.train(treebank)
