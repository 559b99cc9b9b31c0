import argparse
from contextlib import contextmanager
import logging
from pathlib import Path
import sys

from delextra.api import Style
from delextra.config import STYLE_GRAMMAR, load_config, make_config
from delextra.conll.io import (
    open_treebank,
    read_treebank,
    select_treebanks,
    treebank_statistics,
    write_treebank,
)
from delextra.errors import DelextraError
from delextra.evaluation import evaluate
from delextra.experiment import run_experiment
from delextra.parsing.mira import DEFAULT_ITERATIONS, train_mira
from delextra.parsing.model import open_model, save_model
from delextra.parsing.parser import parse_treebank
from delextra.reports import read_weights, write_matrix, write_report, write_statistics
from delextra.transfer.combination import combine_treebanks
from delextra.transfer.interpolation import interpolate_sources
from delextra.transfer.similarity import (
    IKL_EXPONENT,
    read_tagged_text,
    similarity_matrix,
    trigram_distribution,
    weight_matrix,
)
from delextra.transform import convert_treebank


logger = logging.getLogger(__name__)


LOG_FORMAT = '%(filename)s:%(lineno)d %(message)s'


def language_path(text):
    """``lang=path``, or a bare path whose stem is the language"""
    language, sep, path = text.partition('=')
    if not sep:
        path = text
        language = Path(text).stem
    if not language or not path:
        raise argparse.ArgumentTypeError(f'expected LANG=PATH, got {text!r}')
    return language, path


@contextmanager
def output(filename):
    if filename is None or filename == '-':
        yield sys.stdout
    else:
        with open(filename, 'w', encoding='utf-8', newline='\n') as file:
            yield file


def read_source(filename, language=''):
    if filename == '-':
        return read_treebank(sys.stdin, language)
    return open_treebank(filename, language)


def run_convert(args):
    treebank = read_source(args.treebank)
    converted = convert_treebank(treebank, Style(args.source_style), Style(args.target_style))
    with output(args.output) as sink:
        write_treebank(converted, sink)


def run_train(args):
    treebank = read_source(args.treebank, args.language)
    model = train_mira(treebank, iterations=args.iterations, lexical=args.lexical)
    with output(args.output) as sink:
        save_model(model, sink)


def run_parse(args):
    model = open_model(args.model)
    treebank = read_source(args.treebank)
    with output(args.output) as sink:
        write_treebank(parse_treebank(model, treebank), sink)


def _distribution(filename, tagged_text):
    if tagged_text:
        with open(filename, encoding='utf-8') as file:
            return trigram_distribution(read_tagged_text(file))
    return trigram_distribution(open_treebank(filename))


def run_similarity(args):
    target_language, target_path = args.target
    targets = {target_language: _distribution(target_path, args.tagged_text)}
    sources = {lang: _distribution(path, False) for lang, path in args.sources}
    matrix = similarity_matrix(targets, sources)
    with output(args.output) as sink:
        write_matrix(matrix, sink)
    if args.weights:
        with output(args.weights) as sink:
            write_matrix(weight_matrix(matrix, args.exponent), sink)


def _weights(args):
    if args.weights is None:
        return None
    return read_weights(args.weights, args.target_language)


def run_combine(args):
    parses = [open_treebank(path, lang) for lang, path in args.parses]
    weights = _weights(args)
    vector = None
    if weights is not None:
        vector = [weights.get(lang, 0.0) for lang, _ in args.parses]
    with output(args.output) as sink:
        write_treebank(combine_treebanks(parses, vector), sink)


def run_interpolate(args):
    models = {lang: open_model(path) for lang, path in args.models}
    model = interpolate_sources(models, _weights(args), normalize=args.normalize)
    with output(args.output) as sink:
        save_model(model, sink)


def run_eval(args):
    gold = open_treebank(args.gold)
    predicted = open_treebank(args.predicted)
    with output(args.output) as sink:
        write_report(evaluate(gold, predicted), sink)


def run_stats(args):
    treebanks = {lang: open_treebank(path, lang) for lang, path in args.treebanks}
    selected = select_treebanks(
        treebanks,
        min_tokens=args.min_tokens,
        min_adp_ratio=args.min_adp_ratio,
        max_adp_ratio=args.max_adp_ratio,
    )
    with output(args.output) as sink:
        write_statistics({lang: treebank_statistics(tb) for lang, tb in selected.items()}, sink)


def run_experiment_command(args):
    sources = dict(args.sources) if args.sources else None
    overrides = dict(
        sources=sources,
        target=args.target,
        target_language=args.target_language,
        method=args.method,
        weighting=args.weighting,
        style=args.style,
        out=args.out,
        iterations=args.iterations,
        threads=args.threads,
        input_style=args.input_style,
        lexical=args.lexical,
        ikl_exponent=args.ikl_exponent,
        min_source_tokens=args.min_source_tokens,
        min_adp_ratio=args.min_adp_ratio,
        max_adp_ratio=args.max_adp_ratio,
    )
    cfg = load_config(args.config, overrides) if args.config else make_config({}, overrides)
    result = run_experiment(cfg)
    print(f'UAS\t{result.report.uas:.4f}')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='delextra',
        description='Cross-lingual transfer of delexicalized dependency parsers',
    )
    parser.add_argument('-v', '--verbose', action='store_true', help='log debugging information')
    commands = parser.add_subparsers(dest='command', required=True)
    styles = [s.value for s in Style]

    convert = commands.add_parser('convert', help='convert adposition annotation style')
    convert.add_argument('treebank', help='CoNLL file, - for stdin')
    convert.add_argument('--from', dest='source_style', choices=styles, default='P')
    convert.add_argument('--to', dest='target_style', choices=styles, default='S')
    convert.add_argument('-o', '--output')
    convert.set_defaults(func=run_convert)

    train = commands.add_parser('train', help='train a parser model with MIRA')
    train.add_argument('treebank')
    train.add_argument('-l', '--language', default='')
    train.add_argument('-i', '--iterations', type=int, default=DEFAULT_ITERATIONS)
    train.add_argument('--lexical', action='store_true', help='also use word forms and lemmas')
    train.add_argument('-o', '--output')
    train.set_defaults(func=run_train)

    parse = commands.add_parser('parse', help='parse a treebank with a model')
    parse.add_argument('model')
    parse.add_argument('treebank')
    parse.add_argument('-o', '--output')
    parse.set_defaults(func=run_parse)

    similarity = commands.add_parser('similarity', help='KL divergence of a target from sources')
    similarity.add_argument('target', type=language_path, help='LANG=PATH of the target')
    similarity.add_argument('sources', type=language_path, nargs='+', help='LANG=PATH')
    similarity.add_argument('--tagged-text', action='store_true',
                            help='the target is POS-tagged text, one sentence per line')
    similarity.add_argument('--exponent', type=float, default=IKL_EXPONENT)
    similarity.add_argument('-w', '--weights', help='also write iKL weights here')
    similarity.add_argument('-o', '--output')
    similarity.set_defaults(func=run_similarity)

    combine = commands.add_parser('combine', help='combine parses of one treebank')
    combine.add_argument('parses', type=language_path, nargs='+', help='LANG=PATH')
    combine.add_argument('-w', '--weights', help='weight TSV (vector or matrix)')
    combine.add_argument('-t', '--target-language', help='row to use in a weight matrix')
    combine.add_argument('-o', '--output')
    combine.set_defaults(func=run_combine)

    interpolate = commands.add_parser('interpolate', help='interpolate parser models')
    interpolate.add_argument('models', type=language_path, nargs='+', help='LANG=PATH')
    interpolate.add_argument('-w', '--weights', help='weight TSV (vector or matrix)')
    interpolate.add_argument('-t', '--target-language', help='row to use in a weight matrix')
    interpolate.add_argument('--no-normalize', dest='normalize', action='store_false')
    interpolate.add_argument('-o', '--output')
    interpolate.set_defaults(func=run_interpolate)

    evaluation = commands.add_parser('eval', help='unlabelled attachment scores')
    evaluation.add_argument('gold')
    evaluation.add_argument('predicted')
    evaluation.add_argument('-o', '--output')
    evaluation.set_defaults(func=run_eval)

    stats = commands.add_parser('stats', help='treebank sizes and adposition ratios')
    stats.add_argument('treebanks', type=language_path, nargs='+', help='LANG=PATH')
    stats.add_argument('--min-tokens', type=int, default=0, help='only list larger treebanks')
    stats.add_argument('--min-adp-ratio', type=float, default=0.0)
    stats.add_argument('--max-adp-ratio', type=float, default=1.0)
    stats.add_argument('-o', '--output')
    stats.set_defaults(func=run_stats)

    experiment = commands.add_parser('experiment', help='run a transfer experiment')
    experiment.add_argument('config', nargs='?',
                            help='key = value config file; without one, --source and --target are needed')
    experiment.add_argument('--source', dest='sources', type=language_path, action='append',
                            help='LANG=PATH of a source treebank, replaces the configured sources')
    experiment.add_argument('--target')
    experiment.add_argument('--target-language')
    experiment.add_argument('--input-style', choices=styles)
    experiment.add_argument('--method',
                            choices=['concat', 'tree-comb', 'model-interp', 'single-source', 'oracle'])
    experiment.add_argument('--weighting', choices=['none', 'ikl'])
    experiment.add_argument('--style', help=STYLE_GRAMMAR)
    experiment.add_argument('--out')
    experiment.add_argument('--iterations', type=int)
    experiment.add_argument('--threads', type=int)
    experiment.add_argument('--lexical', action='store_true', default=None)
    experiment.add_argument('--ikl-exponent', type=float)
    experiment.add_argument('--min-source-tokens', type=int)
    experiment.add_argument('--min-adp-ratio', type=float)
    experiment.add_argument('--max-adp-ratio', type=float)
    experiment.set_defaults(func=run_experiment_command)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(format=LOG_FORMAT,
                        level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        args.func(args)
    except (DelextraError, OSError, ValueError) as error:
        print(f'delextra: {error}', file=sys.stderr)
        return 2
    return 0


if __name__ == '__main__':
    sys.exit(main())
