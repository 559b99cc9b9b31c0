import logging
from pathlib import Path
import re
from typing import Dict, Iterable, Literal, Optional

import pydantic

from delextra.api import Style, StyleSetup
from delextra.errors import ConfigError, StyleSetupError
from delextra.parsing.mira import DEFAULT_ITERATIONS
from delextra.transfer.similarity import IKL_EXPONENT


logger = logging.getLogger(__name__)


STYLE_GRAMMAR = (
    'STYLES/COMBINE/OUTPUT where STYLES is a comma-separated list of '
    'distinct P or S, and COMBINE and OUTPUT are each P or S (eg. P,S/S/P)'
)

_STYLE_SETUP = re.compile(r'([PS](?:,[PS])*)/([PS])/([PS])')

SOURCE_PREFIX = 'source.'

PATH_KEYS = ('target', 'out')


def parse_style_setup(text: str) -> StyleSetup:
    """Parse the ``parsing/combination/output`` notation"""
    match = _STYLE_SETUP.fullmatch(text)
    if match is None:
        raise StyleSetupError(f'Invalid style setup {text!r}, expected {STYLE_GRAMMAR}')
    letters = match.group(1).split(',')
    if len(set(letters)) != len(letters):
        raise StyleSetupError(
            f'Style listed twice in {text!r}, expected {STYLE_GRAMMAR}'
        )
    return StyleSetup(
        parse_styles=tuple(Style(letter) for letter in letters),
        combine_style=Style(match.group(2)),
        output_style=Style(match.group(3)),
    )


class ExperimentConfig(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True, extra='forbid')

    sources: Dict[str, Path]
    target: Path
    target_language: str = 'target'
    method: Literal['concat', 'tree-comb', 'model-interp', 'single-source', 'oracle'] = 'tree-comb'
    weighting: Literal['none', 'ikl'] = 'none'
    style: str = 'P/P/P'
    input_style: Style = Style.PRAGUE
    out: Path = Path('out')
    iterations: int = pydantic.Field(DEFAULT_ITERATIONS, ge=1)
    lexical: bool = False
    ikl_exponent: float = pydantic.Field(IKL_EXPONENT, gt=0)
    min_source_tokens: int = pydantic.Field(0, ge=0)
    min_adp_ratio: float = pydantic.Field(0.0, ge=0, le=1)
    max_adp_ratio: float = pydantic.Field(1.0, ge=0, le=1)
    threads: Optional[int] = pydantic.Field(None, ge=1)

    @pydantic.field_validator('sources')
    @classmethod
    def check_sources(cls, sources):
        if not sources:
            raise ValueError('at least one source treebank is needed')
        return sources

    @pydantic.field_validator('style')
    @classmethod
    def check_style(cls, style):
        # Normalized to its canonical spelling
        return str(parse_style_setup(style))

    @pydantic.model_validator(mode='after')
    def check_adp_ratios(self):
        if self.min_adp_ratio > self.max_adp_ratio:
            raise ValueError('min_adp_ratio is above max_adp_ratio')
        return self

    @property
    def style_setup(self) -> StyleSetup:
        return parse_style_setup(self.style)


def read_config(lines: Iterable[str]) -> dict:
    """Read ``key = value`` lines into a dict ready for ExperimentConfig.

    Lines starting with ``#`` are comments and sources are declared one
    per line::

        target = data/sv.conll
        source.de = data/de.conll
        source.cs = data/cs.conll
        style = P,S/S/P
    """
    values = {}
    sources = {}
    for line_number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        key, sep, value = line.partition('=')
        if not sep:
            raise ConfigError(f'Expected "key = value", got {line!r}', line_number)
        key, value = key.strip(), value.strip()
        if key.startswith(SOURCE_PREFIX):
            language = key[len(SOURCE_PREFIX):]
            if not language:
                raise ConfigError('Source without a language code', line_number)
            if language in sources:
                raise ConfigError(f'Source {language} declared twice', line_number)
            sources[language] = value
        elif key in values:
            raise ConfigError(f'Key {key} set twice', line_number)
        else:
            values[key] = value
    if sources:
        values['sources'] = sources
    return values


def _resolve(values, base: Path):
    for key in PATH_KEYS:
        if key in values and not Path(values[key]).is_absolute():
            values[key] = base / values[key]
    if 'sources' in values:
        values['sources'] = {
            lang: path if Path(path).is_absolute() else base / path
            for lang, path in values['sources'].items()
        }
    return values


def make_config(values: dict, overrides: Optional[dict] = None) -> ExperimentConfig:
    """Build a validated config; ``overrides`` win over ``values`` and
    None overrides are ignored"""
    merged = dict(values)
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    try:
        return ExperimentConfig(**merged)
    except pydantic.ValidationError as error:
        raise ConfigError(str(error)) from error


def load_config(filename, overrides: Optional[dict] = None) -> ExperimentConfig:
    """Relative paths are resolved against the directory of ``filename``"""
    path = Path(filename)
    with open(path, encoding='utf-8') as f:
        values = read_config(f)
    _resolve(values, path.parent)
    logger.debug(f'Read {len(values)} settings from {path}')
    return make_config(values, overrides)
