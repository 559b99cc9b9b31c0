from collections import Counter
from dataclasses import dataclass, field
import logging
import math
from typing import Iterable, Mapping, Sequence, TextIO, Union

from delextra.api import Treebank
from delextra.conll.constants import BOS_TAG, EOS_TAG
from delextra.conll.io import fold_upos


logger = logging.getLogger(__name__)


LOG_BASE = 'e'
SMOOTHING = 'unseen-count-1-renormalized'

IKL_EXPONENT = 4
IKL_EPSILON = 1e-3


@dataclass(frozen=True)
class TrigramDistribution:
    counts: Counter = field(default_factory=Counter)

    @property
    def total(self):
        return sum(self.counts.values())

    def __contains__(self, trigram):
        return self.counts.get(trigram, 0) > 0

    def __len__(self):
        return len(self.counts)

    def freq(self, trigram):
        return self.counts.get(trigram, 0) / self.total

    def frequencies(self):
        total = self.total
        return {t: c / total for t, c in self.counts.items()}


def read_tagged_text(lines: Union[TextIO, Iterable[str]]):
    """Read POS-tagged text: one sentence per line, whitespace-separated
    tags. Blank lines are skipped."""
    sentences = []
    for line in lines:
        tags = line.split()
        if tags:
            sentences.append(tuple(fold_upos(t) for t in tags))
    return sentences


def _tag_sequences(corpus):
    if isinstance(corpus, Treebank):
        return [s.tags for s in corpus]
    return [tuple(tags) for tags in corpus]


def trigram_distribution(corpus: Union[Treebank, Iterable[Sequence[str]]]):
    """Count the (previous, current, next) tag trigram at every token, with
    BOS/EOS at sentence boundaries; a sentence of length L contributes
    exactly L trigrams."""
    counts = Counter()
    for tags in _tag_sequences(corpus):
        padded = (BOS_TAG,) + tuple(tags) + (EOS_TAG,)
        for i in range(1, len(padded) - 1):
            counts[padded[i - 1], padded[i], padded[i + 1]] += 1
    if not counts:
        raise ValueError('Cannot estimate trigram frequencies on an empty corpus')
    return TrigramDistribution(counts)


def kl_cpos3(target: TrigramDistribution, source: TrigramDistribution):
    """Divergence of ``target`` from ``source`` over the target's trigrams.

    Target trigrams unseen in the source get a source count of 1 and the
    source total grows by their number.
    """
    unseen = sum(1 for t in target.counts if t not in source)
    source_total = source.total + unseen
    divergence = 0.0
    for trigram, target_freq in target.frequencies().items():
        source_count = source.counts.get(trigram, 0) or 1
        source_freq = source_count / source_total
        divergence += target_freq * math.log(target_freq / source_freq)
    return divergence


def select_source(target: TrigramDistribution,
                  sources: Mapping[str, TrigramDistribution]):
    """The source language closest to the target, ties broken by
    language code"""
    if not sources:
        raise ValueError('No source language to select from')
    divergences = {lang: kl_cpos3(target, sources[lang]) for lang in sorted(sources)}
    selected = min(divergences, key=lambda lang: (divergences[lang], lang))
    logger.info(f'Selected source {selected} (KL {divergences[selected]:.4f})')
    return selected


def weight_ikl(kl, exponent=IKL_EXPONENT, epsilon=IKL_EPSILON):
    """Turn a divergence into a source weight: the inverted divergence to
    the ``exponent`` power. Divergences below ``epsilon`` are clamped."""
    return (1.0 / max(kl, epsilon)) ** exponent


def ikl_weights(target: TrigramDistribution,
                sources: Mapping[str, TrigramDistribution],
                exponent=IKL_EXPONENT):
    weights = {}
    for language in sorted(sources):
        kl = kl_cpos3(target, sources[language])
        weights[language] = weight_ikl(kl, exponent)
        logger.debug(f'{language}: KL {kl:.6f}, weight {weights[language]:.6g}')
    return weights


def similarity_matrix(targets: Mapping[str, TrigramDistribution],
                      sources: Mapping[str, TrigramDistribution]):
    """KL divergences as {target: {source: kl}}; a language is never
    compared to itself"""
    return {
        target: {
            source: kl_cpos3(targets[target], sources[source])
            for source in sorted(sources)
            if source != target
        }
        for target in sorted(targets)
    }


def weight_matrix(matrix, exponent=IKL_EXPONENT):
    return {
        target: {source: weight_ikl(kl, exponent) for source, kl in row.items()}
        for target, row in matrix.items()
    }
