import logging
from typing import Mapping, Optional, Sequence

import numpy as np

from delextra.api import Treebank
from delextra.conll.constants import MULTI_LANGUAGE
from delextra.parsing.model import ModelMeta, ParserModel, check_compatible
from delextra.parsing.parser import parse_treebank
from delextra.utils import format_float


logger = logging.getLogger(__name__)


MIN_DEVIATION = 1e-12


def weight_deviation(model: ParserModel):
    """Uncorrected sample standard deviation of the stored weights"""
    return float(np.std(np.fromiter(model.values(), dtype=float, count=len(model))))


def normalize_model(model: ParserModel) -> ParserModel:
    """Divide every weight by the standard deviation of the weights. The
    mean is not subtracted. Empty and degenerate models (all weights
    equal) are returned unchanged and flagged in their provenance.
    """
    if not len(model):
        logger.warning(
            f'The {model.meta.language or "unnamed"} model has no weights; it '
            f'adds nothing to an interpolation'
        )
        return model.with_meta(model.meta.with_provenance(normalization='empty'))
    deviation = weight_deviation(model)
    if deviation < MIN_DEVIATION:
        logger.warning(
            f'Weights of the {model.meta.language or "unnamed"} model do not '
            f'vary; the model is left unnormalized'
        )
        return model.with_meta(model.meta.with_provenance(normalization='degenerate'))
    meta = model.meta.with_provenance(
        normalization='sd',
        deviation=format_float(deviation),
    )
    return model.scaled(1.0 / deviation, meta)


def interpolate(models: Sequence[ParserModel],
                weights: Optional[Sequence[float]] = None) -> ParserModel:
    """Weighted sum of ``models`` over the union of their features"""
    if not models:
        raise ValueError('Nothing to interpolate')
    check_compatible(models)
    if weights is None:
        weights = [1.0] * len(models)
    if len(weights) != len(models):
        raise ValueError(f'{len(models)} models but {len(weights)} weights')
    if any(w < 0 for w in weights) or not sum(weights) > 0:
        raise ValueError('Weights must be non-negative with a positive sum')

    combined = {}
    for model, weight in zip(models, weights):
        if weight == 0:
            continue
        for feature, value in model.items():
            combined[feature] = combined.get(feature, 0.0) + weight * value

    first = models[0].meta
    languages = ','.join(m.meta.language or '?' for m in models)
    meta = ModelMeta(
        template_version=first.template_version,
        language=MULTI_LANGUAGE if len(models) > 1 else first.language,
        delex=all(m.meta.delex for m in models),
        provenance={
            'interpolated_sources': languages,
            'interpolation_weights': ','.join(format_float(w) for w in weights),
        },
    )
    return ParserModel(combined, meta)


def interpolate_sources(models: Mapping[str, ParserModel],
                        weights: Optional[Mapping[str, float]] = None,
                        normalize=True) -> ParserModel:
    """Normalize (optionally) and interpolate named source models"""
    names = list(models)
    sources = [models[name] for name in names]
    if normalize:
        sources = [normalize_model(m) for m in sources]
    vector = None
    if weights is not None:
        vector = [float(weights.get(name, 0.0)) for name in names]
    return interpolate(sources, vector)


def transfer_model_interpolation(models: Mapping[str, ParserModel],
                                 target: Treebank,
                                 weights: Optional[Mapping[str, float]] = None):
    """Parse ``target`` with the interpolation of the normalized ``models``"""
    model = interpolate_sources(models, weights)
    logger.info(f'Interpolated {len(models)} models into {len(model)} features')
    return parse_treebank(model, target)
