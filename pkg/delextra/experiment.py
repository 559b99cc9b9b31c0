from contextlib import contextmanager
from dataclasses import dataclass, field
import logging
from pathlib import Path
from typing import Dict, Optional

from joblib import Parallel, delayed

from delextra.api import EvaluationReport, Style, Treebank
from delextra.config import ExperimentConfig
from delextra.conll.constants import MULTI_LANGUAGE
from delextra.conll.io import open_treebank, save_treebank, select_treebanks
from delextra.conll.trees import validate_tree
from delextra.errors import ExperimentError, TreeStructureError
from delextra.evaluation import evaluate
from delextra.parsing.features import TEMPLATE_VERSION
from delextra.parsing.mira import train_mira
from delextra.parsing.model import write_model
from delextra.parsing.parser import parse_treebank
from delextra.reports import write_matrix, write_metadata, write_report, write_weights
from delextra.transfer.combination import (
    combine_treebanks,
    concat_treebanks,
    parse_with_each,
)
from delextra.transfer.interpolation import interpolate_sources
from delextra.transfer.oracle import oracle_source
from delextra.transfer.similarity import (
    IKL_EPSILON,
    LOG_BASE,
    SMOOTHING,
    ikl_weights,
    select_source,
    similarity_matrix,
    trigram_distribution,
    weight_matrix,
)
from delextra.transform import convert_treebank
from delextra.utils import worker_count


logger = logging.getLogger(__name__)


VOTE_SHARING = 'each (source, style) parser votes with the full source weight'


@dataclass
class ExperimentResult:
    report: EvaluationReport
    output: Treebank
    """Final parse of the target, in the output style"""

    weights: Optional[Dict[str, float]] = None
    """Source weights, None when sources are weighted uniformly"""

    selected_source: Optional[str] = None
    metadata: dict = field(default_factory=dict)


@contextmanager
def stage(name):
    logger.info(f'Stage: {name}')
    try:
        yield
    except ExperimentError:
        raise
    except (OSError, ValueError, KeyError) as error:
        raise ExperimentError(name, error) from error


def parser_name(language, style: Style):
    return f'{language}.{style}'


def _train(treebank: Treebank, style: Style, cfg: ExperimentConfig):
    model = train_mira(treebank, iterations=cfg.iterations, lexical=cfg.lexical)
    return model.with_meta(model.meta.with_provenance(style=style))


class Experiment:
    """One run of ``cfg``; ``run`` may only be called once.

    Artifacts written under ``cfg.out``::

        models/<lang>.<style>.model    one per trained parser
        parses/<lang>.<style>.conll    target parsed by each source parser
        similarity.tsv                 KL divergences, when computed
        weights.tsv                    source weights
        output.conll                   final parse, in the output style
        report.tsv                     UAS, non-punctuation UAS, per-POS rows
        metadata.tsv                   settings needed to read the above
    """

    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.setup = cfg.style_setup
        self.out = Path(cfg.out)
        self.n_jobs = worker_count(cfg.threads)
        self.sources = {}
        self.target = None
        self.weights = None
        self.selected = None
        self.metadata = {}

    @property
    def training_styles(self):
        """Tree combination parses in every parse style; the other methods
        run one parser per source in the combination style"""
        if self.cfg.method == 'tree-comb':
            return self.setup.parse_styles
        return (self.setup.combine_style,)

    def read(self):
        cfg = self.cfg
        for language, path in cfg.sources.items():
            self.sources[language] = open_treebank(path, language)
            logger.info(f'Read {len(self.sources[language])} sentences of {language}')
        self.sources = select_treebanks(
            self.sources,
            min_tokens=cfg.min_source_tokens,
            min_adp_ratio=cfg.min_adp_ratio,
            max_adp_ratio=cfg.max_adp_ratio,
        )
        if not self.sources:
            raise ValueError('No source treebank passes the size and adposition ratio limits')
        self.target = open_treebank(cfg.target, cfg.target_language)

    def compute_weights(self):
        """KL divergences of the target from each source and, with iKL
        weighting, the source weights"""
        cfg = self.cfg
        target = {cfg.target_language: trigram_distribution(self.target)}
        sources = {lang: trigram_distribution(tb) for lang, tb in self.sources.items()}
        matrix = similarity_matrix(target, sources)
        with open(self.out / 'similarity.tsv', 'w', encoding='utf-8', newline='') as f:
            write_matrix(matrix, f)
        logger.debug(f'Weights: {weight_matrix(matrix, cfg.ikl_exponent)}')
        self.weights = ikl_weights(target[cfg.target_language], sources, cfg.ikl_exponent)
        with open(self.out / 'weights.tsv', 'w', encoding='utf-8', newline='') as f:
            write_weights(self.weights, f)
        return target[cfg.target_language], sources

    def train(self, treebanks):
        """Train one parser per (language, style) in ``treebanks`` and
        save it under models/"""
        names = list(treebanks)
        models = Parallel(n_jobs=self.n_jobs)(
            delayed(_train)(treebanks[name][0], treebanks[name][1], self.cfg)
            for name in names
        )
        models = dict(zip(names, models))
        for name, model in models.items():
            write_model(model, self.out / 'models' / f'{name}.model')
        return models

    def converted(self, languages, style):
        input_style = self.cfg.input_style
        return {
            parser_name(lang, style): (convert_treebank(self.sources[lang], input_style, style), style)
            for lang in languages
        }

    def save_parses(self, parses):
        for name, parse in parses.items():
            save_treebank(parse, self.out / 'parses' / f'{name}.conll')

    def parser_weights(self, names):
        if self.weights is None:
            return None
        return {name: self.weights[name.rsplit('.', 1)[0]] for name in names}

    def transfer(self):
        """Parse the target; the result is in the combination style"""
        cfg = self.cfg
        combine_style = self.setup.combine_style
        languages = list(self.sources)

        if cfg.method == 'concat':
            with stage('convert'):
                treebanks = self.converted(languages, combine_style)
                merged = concat_treebanks([tb for tb, _ in treebanks.values()])
            with stage('train'):
                name = parser_name(MULTI_LANGUAGE, combine_style)
                model = self.train({name: (merged, combine_style)})[name]
            with stage('parse'):
                return parse_treebank(model, self.target)

        if cfg.method == 'single-source':
            with stage('select'):
                if cfg.weighting == 'ikl':
                    target, sources = self.compute_weights()
                    self.selected = select_source(target, sources)
                else:
                    self.selected = languages[0]
                languages = [self.selected]

        with stage('convert'):
            treebanks = {}
            for style in self.training_styles:
                treebanks.update(self.converted(languages, style))
        with stage('train'):
            models = self.train(treebanks)

        if cfg.method == 'oracle':
            with stage('parse'):
                gold = convert_treebank(self.target, cfg.input_style, combine_style)
                name, _ = oracle_source(models, gold, self.n_jobs)
                self.selected = name.rsplit('.', 1)[0]
                return parse_treebank(models[name], self.target)

        if cfg.method == 'model-interp':
            with stage('interpolate'):
                model = interpolate_sources(models, self.parser_weights(models))
                write_model(model, self.out / 'models' / f'{parser_name(MULTI_LANGUAGE, combine_style)}.model')
            with stage('parse'):
                return parse_treebank(model, self.target)

        with stage('parse'):
            parses = parse_with_each(models, self.target, self.n_jobs)
            self.save_parses(parses)
        if cfg.method == 'single-source':
            return parses[parser_name(self.selected, combine_style)]
        with stage('combine'):
            names = list(parses)
            converted = [convert_treebank(parses[name], treebanks[name][1], combine_style)
                         for name in names]
            weights = self.parser_weights(names)
            vector = None if weights is None else [weights[name] for name in names]
            return combine_treebanks(converted, vector)

    def run(self) -> ExperimentResult:
        cfg = self.cfg
        with stage('setup'):
            for directory in (self.out, self.out / 'models', self.out / 'parses'):
                directory.mkdir(parents=True, exist_ok=True)
        with stage('read'):
            self.read()
        if cfg.weighting == 'ikl' and cfg.method != 'single-source':
            with stage('similarity'):
                self.compute_weights()

        parsed = self.transfer()
        if self.weights is None:
            with open(self.out / 'weights.tsv', 'w', encoding='utf-8', newline='') as f:
                write_weights({lang: 1.0 for lang in self.sources}, f)

        with stage('output'):
            output = convert_treebank(parsed, self.setup.combine_style, self.setup.output_style)
            for number, sentence in enumerate(output, start=1):
                if not validate_tree(sentence):
                    raise TreeStructureError('output is not a tree', number)
            save_treebank(output, self.out / 'output.conll')
        with stage('evaluate'):
            gold = convert_treebank(self.target, cfg.input_style, self.setup.output_style)
            report = evaluate(gold, output)
            with open(self.out / 'report.tsv', 'w', encoding='utf-8', newline='') as f:
                write_report(report, f)
            self.metadata = self.describe()
            with open(self.out / 'metadata.tsv', 'w', encoding='utf-8', newline='') as f:
                write_metadata(self.metadata, f)
        return ExperimentResult(report, output, self.weights, self.selected, self.metadata)

    def describe(self):
        cfg = self.cfg
        return {
            'method': cfg.method,
            'weighting': cfg.weighting,
            'style_setup': str(self.setup),
            'input_style': str(cfg.input_style),
            'target_language': cfg.target_language,
            'sources': ','.join(self.sources),
            'selected_source': self.selected or '',
            'template_version': TEMPLATE_VERSION,
            'iterations': cfg.iterations,
            'lexical': str(cfg.lexical).lower(),
            'kl_log_base': LOG_BASE,
            'kl_smoothing': SMOOTHING,
            'ikl_exponent': cfg.ikl_exponent,
            'min_source_tokens': cfg.min_source_tokens,
            'min_adp_ratio': cfg.min_adp_ratio,
            'max_adp_ratio': cfg.max_adp_ratio,
            'ikl_epsilon': IKL_EPSILON,
            'vote_sharing': VOTE_SHARING,
        }


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    return Experiment(cfg).run()
