from collections.abc import Mapping
from dataclasses import dataclass, field, replace
import logging
import math
from typing import Iterable, TextIO

from delextra.errors import ModelFormatError, ModelMismatchError
from delextra.parsing.features import TEMPLATE_VERSION
from delextra.utils import format_float


logger = logging.getLogger(__name__)


MODEL_MAGIC = 'delextra-model 1'


@dataclass(frozen=True)
class ModelMeta:
    template_version: str = TEMPLATE_VERSION
    language: str = ''
    delex: bool = True

    provenance: dict = field(default_factory=dict)
    """Free-form string pairs describing how the model was produced
    (training settings, normalization, interpolated sources)
    """

    def with_provenance(self, **values):
        provenance = dict(self.provenance)
        provenance.update({k: str(v) for k, v in values.items()})
        return replace(self, provenance=provenance)


class ParserModel(Mapping):
    """Sparse feature weights. Features without a stored weight weigh 0,
    so zero weights are never stored.
    """

    def __init__(self, weights=None, meta: ModelMeta = None):
        self.__weights = {}
        self.meta = meta or ModelMeta()
        for feature, weight in (weights or {}).items():
            weight = float(weight)
            if not math.isfinite(weight):
                raise ValueError(f'Weight of "{feature}" is not finite')
            if weight != 0.0:
                self.__weights[feature] = weight

    def __getitem__(self, k):
        return self.__weights[k]

    def __len__(self) -> int:
        return len(self.__weights)

    def __iter__(self):
        return iter(self.__weights)

    def __eq__(self, other):
        if not isinstance(other, ParserModel):
            return NotImplemented
        return self.meta == other.meta and self.__weights == other.__weights

    def __repr__(self):
        return (f'ParserModel({len(self)} features, '
                f'language={self.meta.language!r})')

    def weight(self, feature):
        return self.__weights.get(feature, 0.0)

    def score(self, features: Iterable[str]):
        """Sum of the weights of the active ``features``"""
        weights = self.__weights
        return sum(weights.get(f, 0.0) for f in features)

    def scaled(self, factor, meta=None) -> 'ParserModel':
        weights = {f: w * factor for f, w in self.__weights.items()}
        return ParserModel(weights, meta or self.meta)

    def with_meta(self, meta) -> 'ParserModel':
        return ParserModel(self.__weights, meta)


def check_compatible(models):
    """Raise unless all ``models`` share one template inventory"""
    versions = {m.meta.template_version for m in models}
    if len(versions) > 1:
        raise ModelMismatchError(
            f'Models use different feature templates: {sorted(versions)}'
        )


def save_model(model: ParserModel, sink: TextIO):
    meta = model.meta
    sink.write(f'# {MODEL_MAGIC}\n')
    sink.write(f'# template_version = {meta.template_version}\n')
    sink.write(f'# delex = {str(meta.delex).lower()}\n')
    sink.write(f'# language = {meta.language}\n')
    for key, value in meta.provenance.items():
        sink.write(f'# {key} = {value}\n')
    for feature, weight in model.items():
        sink.write(f'{feature}\t{format_float(weight)}\n')


def load_model(source: Iterable[str]) -> ParserModel:
    header = {}
    weights = {}
    lines = iter(source)
    first = next(lines, '').rstrip('\r\n')
    if first != f'# {MODEL_MAGIC}':
        raise ModelFormatError(f'Not a delextra model file: {first[:40]!r}')
    for line_number, line in enumerate(lines, start=2):
        line = line.rstrip('\r\n')
        if not line:
            continue
        if line.startswith('# '):
            key, sep, value = line[2:].partition(' = ')
            if not sep:
                raise ModelFormatError(f'line {line_number}: bad header line')
            header[key] = value
            continue
        feature, sep, weight = line.rpartition('\t')
        if not sep:
            raise ModelFormatError(f'line {line_number}: expected feature<TAB>weight')
        try:
            weights[feature] = float(weight)
        except ValueError:
            raise ModelFormatError(f'line {line_number}: bad weight {weight!r}')
    meta = ModelMeta(
        template_version=header.pop('template_version', TEMPLATE_VERSION),
        delex=header.pop('delex', 'true') == 'true',
        language=header.pop('language', ''),
        provenance=header,
    )
    logger.debug(f'Loaded model with {len(weights)} features ({meta.language})')
    return ParserModel(weights, meta)


def open_model(filename) -> ParserModel:
    with open(filename, encoding='utf-8') as file:
        return load_model(file)


def write_model(model: ParserModel, filename):
    with open(filename, 'w', encoding='utf-8', newline='\n') as file:
        save_model(model, file)
