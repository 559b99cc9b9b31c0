from contextlib import redirect_stderr, redirect_stdout
import io
import os
from pathlib import Path
import tempfile
from unittest import TestCase

from delextra.cli import main
from delextra.config import make_config
from delextra.conll import is_tree, open_treebank, save_treebank
from delextra.errors import ExperimentError
from delextra.experiment import run_experiment
from delextra.parsing import parse_treebank, train_mira
from delextra.reports import read_report, read_weights
from tests.grammars import (
    flat_treebank,
    prague_treebank,
    stanford_treebank,
    target_treebank,
)


class ExperimentTestCase(TestCase):
    """Source a follows the target's conventions, the b, c and d majority
    does not"""

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.root = Path(self.directory.name)
        self.target = target_treebank()
        save_treebank(self.target, self.root / 'tt.conll')
        self.sources = {'a': prague_treebank('a')}
        for language in ('b', 'c', 'd'):
            self.sources[language] = stanford_treebank(language)
        for language, treebank in self.sources.items():
            save_treebank(treebank, self.root / f'{language}.conll')

    def tearDown(self):
        self.directory.cleanup()

    def config(self, languages='abcd', **values):
        values.setdefault('out', self.root / 'out')
        return make_config(dict(
            sources={lang: self.root / f'{lang}.conll' for lang in languages},
            target=self.root / 'tt.conll',
            target_language='tt',
            threads=1,
            **values,
        ))

    def test_weighted_tree_combination(self):
        result = run_experiment(self.config(weighting='ikl'))
        self.assertGreaterEqual(result.report.uas, 0.9)
        out = self.root / 'out'
        for name in ('output.conll', 'report.tsv', 'metadata.tsv', 'similarity.tsv',
                     'weights.tsv', 'models/a.P.model', 'parses/d.P.conll'):
            with self.subTest(name=name):
                self.assertTrue((out / name).is_file())
        report = read_report(out / 'report.tsv')
        self.assertAlmostEqual(result.report.uas, report.uas, places=10)
        self.assertEqual(result.report.tokens, report.tokens)
        weights = read_weights(out / 'weights.tsv')
        self.assertEqual(sorted(self.sources), sorted(weights))
        self.assertGreater(weights['a'], weights['b'])
        saved = open_treebank(out / 'output.conll')
        self.assertEqual([s.heads for s in result.output], [s.heads for s in saved])

    def test_weighting_beats_uniform(self):
        weighted = run_experiment(self.config(weighting='ikl', out=self.root / 'ikl'))
        uniform = run_experiment(self.config(out=self.root / 'none'))
        self.assertIsNone(uniform.weights)
        self.assertEqual({'a': 1.0, 'b': 1.0, 'c': 1.0, 'd': 1.0},
                         read_weights(self.root / 'none' / 'weights.tsv'))
        self.assertLess(uniform.report.uas, weighted.report.uas)

    def test_single_source_tree_combination(self):
        result = run_experiment(self.config(languages='a'))
        expected = parse_treebank(train_mira(self.sources['a']), self.target)
        self.assertEqual([s.heads for s in expected], [s.heads for s in result.output])

    def test_single_source_concatenation(self):
        result = run_experiment(self.config(languages='a', method='concat'))
        expected = parse_treebank(train_mira(self.sources['a']), self.target)
        self.assertEqual([s.heads for s in expected], [s.heads for s in result.output])
        self.assertTrue((self.root / 'out' / 'models' / 'multi.P.model').is_file())

    def test_source_selection(self):
        result = run_experiment(self.config(method='single-source', weighting='ikl'))
        self.assertEqual('a', result.selected_source)
        self.assertEqual('a', result.metadata['selected_source'])
        result = run_experiment(self.config(languages='c', method='single-source', weighting='ikl'))
        self.assertEqual('c', result.selected_source)

    def test_unweighted_selection_takes_first_source(self):
        result = run_experiment(self.config(languages='ba', method='single-source'))
        self.assertEqual('b', result.selected_source)

    def test_model_interpolation(self):
        result = run_experiment(self.config(method='model-interp', weighting='ikl'))
        self.assertGreaterEqual(result.report.uas, 0.9)
        self.assertTrue((self.root / 'out' / 'models' / 'multi.P.model').is_file())

    def test_model_interpolation_with_a_source_without_weights(self):
        save_treebank(flat_treebank('f'), self.root / 'f.conll')
        with self.assertLogs('delextra.transfer.interpolation', level='WARNING'):
            result = run_experiment(self.config(languages='fa', method='model-interp'))
        expected = parse_treebank(train_mira(self.sources['a']), self.target)
        self.assertEqual([s.heads for s in expected], [s.heads for s in result.output])

    def test_oracle(self):
        result = run_experiment(self.config(method='oracle'))
        self.assertEqual('a', result.selected_source)

    def test_both_parse_styles(self):
        result = run_experiment(self.config(weighting='ikl', style='P,S/S/P'))
        models = self.root / 'out' / 'models'
        self.assertTrue((models / 'a.P.model').is_file())
        self.assertTrue((models / 'a.S.model').is_file())
        self.assertEqual('P,S/S/P', result.metadata['style_setup'])
        for sentence in result.output:
            self.assertTrue(is_tree(sentence.heads))

    def test_stanford_output(self):
        result = run_experiment(self.config(languages='a', style='P/P/S'))
        adpositions = [t for s in result.output for t in s if t.upos == 'ADP']
        self.assertTrue(adpositions)
        # Stanford adpositions are leaves
        for sentence in result.output:
            for token in sentence:
                if token.upos == 'ADP':
                    self.assertEqual([], sentence.children(token.index))

    def test_metadata(self):
        result = run_experiment(self.config(method='concat'))
        self.assertEqual('concat', result.metadata['method'])
        self.assertEqual('P', result.metadata['input_style'])
        self.assertEqual('a,b,c,d', result.metadata['sources'])

    def test_sources_by_adposition_ratio(self):
        # b, c and d: 9 adpositions in 111 tokens; a: 9 in 63
        result = run_experiment(self.config(min_adp_ratio=0.1))
        self.assertEqual('a', result.metadata['sources'])
        self.assertEqual('0.1', result.metadata['min_adp_ratio'])
        expected = parse_treebank(train_mira(self.sources['a']), self.target)
        self.assertEqual([s.heads for s in expected], [s.heads for s in result.output])

    def test_no_source_large_enough(self):
        with self.assertRaises(ExperimentError) as context:
            run_experiment(self.config(min_source_tokens=1000))
        self.assertEqual('read', context.exception.stage)

    def test_missing_source(self):
        cfg = make_config(dict(sources={'zz': self.root / 'missing.conll'},
                               target=self.root / 'tt.conll', out=self.root / 'out'))
        with self.assertRaises(ExperimentError) as context:
            run_experiment(cfg)
        self.assertEqual('read', context.exception.stage)


class CommandLineTestCase(TestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.root = Path(self.directory.name)
        save_treebank(target_treebank(), self.root / 'tt.conll')
        save_treebank(prague_treebank('a'), self.root / 'a.conll')
        save_treebank(stanford_treebank('b'), self.root / 'b.conll')
        self.config = self.root / 'experiment.cfg'
        with open(self.config, 'w', encoding='utf-8') as f:
            f.write('target = tt.conll\ntarget_language = tt\n'
                    'source.a = a.conll\nsource.b = b.conll\n'
                    'weighting = ikl\nthreads = 1\n')

    def tearDown(self):
        self.directory.cleanup()

    def run_main(self, *args):
        stdout, stderr = io.StringIO(), io.StringIO()
        with redirect_stdout(stdout), redirect_stderr(stderr):
            status = main([str(a) for a in args])
        return status, stdout.getvalue(), stderr.getvalue()

    def read(self, *parts):
        with open(self.root.joinpath(*parts), 'rb') as f:
            return f.read()

    def test_experiment_is_deterministic(self):
        for out in ('first', 'second'):
            status, stdout, _ = self.run_main('experiment', self.config, '--out', self.root / out)
            self.assertEqual(0, status)
            self.assertTrue(stdout.startswith('UAS\t'))
        for name in ('report.tsv', 'output.conll', 'weights.tsv', 'similarity.tsv',
                     os.path.join('models', 'a.P.model'), os.path.join('models', 'b.P.model')):
            with self.subTest(name=name):
                self.assertEqual(self.read('first', name), self.read('second', name))

    def test_experiment_without_config(self):
        status, stdout, _ = self.run_main(
            'experiment', '--source', f'a={self.root / "a.conll"}', '--source', f'b={self.root / "b.conll"}',
            '--target', self.root / 'tt.conll', '--target-language', 'tt',
            '--method', 'model-interp', '--out', self.root / 'flags', '--threads', 1,
        )
        self.assertEqual(0, status)
        self.assertTrue(stdout.startswith('UAS\t'))
        self.assertTrue((self.root / 'flags' / 'models' / 'multi.P.model').is_file())

    def test_experiment_needs_sources(self):
        status, _, stderr = self.run_main('experiment', '--method', 'concat')
        self.assertEqual(2, status)
        self.assertIn('sources', stderr)

    def test_stats(self):
        status, stdout, _ = self.run_main(
            'stats', f'a={self.root / "a.conll"}', f'b={self.root / "b.conll"}')
        self.assertEqual(0, status)
        lines = stdout.splitlines()
        self.assertEqual('language\tsentences\ttokens\tadp_ratio', lines[0])
        self.assertTrue(lines[1].startswith('a\t12\t63\t0.142857'))
        self.assertTrue(lines[2].startswith('b\t24\t111\t0.081081'))
        status, stdout, _ = self.run_main(
            'stats', f'a={self.root / "a.conll"}', f'b={self.root / "b.conll"}',
            '--min-adp-ratio', 0.1)
        self.assertEqual(['language', 'a'], [line.split('\t')[0] for line in stdout.splitlines()])

    def test_bad_style(self):
        status, _, stderr = self.run_main('experiment', self.config, '--style', 'Q/P/P')
        self.assertEqual(2, status)
        self.assertIn('STYLES/COMBINE/OUTPUT', stderr)

    def test_convert(self):
        status, stdout, _ = self.run_main('convert', 'test_files/adpositions.conll')
        self.assertEqual(0, status)
        converted = self.root / 'converted.conll'
        with open(converted, 'w', encoding='utf-8') as f:
            f.write(stdout)
        status, stdout, _ = self.run_main('convert', converted, '--from', 'S', '--to', 'P')
        self.assertEqual(0, status)
        original = open_treebank('test_files/adpositions.conll')
        back = self.root / 'back.conll'
        with open(back, 'w', encoding='utf-8') as f:
            f.write(stdout)
        self.assertEqual([s.heads for s in original], [s.heads for s in open_treebank(back)])

    def test_train_parse_eval(self):
        model = self.root / 'a.model'
        parsed = self.root / 'parsed.conll'
        report = self.root / 'report.tsv'
        self.assertEqual(0, self.run_main('train', self.root / 'a.conll', '-o', model)[0])
        self.assertEqual(0, self.run_main('parse', model, self.root / 'tt.conll', '-o', parsed)[0])
        self.assertEqual(0, self.run_main('eval', self.root / 'tt.conll', parsed, '-o', report)[0])
        expected = parse_treebank(train_mira(prague_treebank('a')), target_treebank())
        self.assertEqual([s.heads for s in expected], [s.heads for s in open_treebank(parsed)])
        self.assertEqual(read_report(report).tokens, target_treebank().token_count)

    def test_missing_file(self):
        status, _, stderr = self.run_main('eval', self.root / 'nothing.conll', self.root / 'tt.conll')
        self.assertEqual(2, status)
        self.assertIn('delextra:', stderr)
