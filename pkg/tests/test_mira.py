import io
from unittest import TestCase

from delextra.api import Treebank
from delextra.evaluation import uas
from delextra.parsing import parse_treebank, save_model, train_mira
from delextra.parsing.features import TEMPLATE_VERSION, sentence_features
from delextra.parsing.mira import MiraTrainer, hamming_loss, tree_features
from tests.grammars import make_sentence, make_treebank, simple_treebank


class MiraTestCase(TestCase):

    def test_learns_synthetic_grammar(self):
        treebank = simple_treebank(sentences=20)
        model = train_mira(treebank, iterations=3)
        self.assertGreaterEqual(uas(treebank, parse_treebank(model, treebank)), 0.9)

    def test_deterministic(self):
        treebank = simple_treebank(sentences=20)
        first, second = io.StringIO(), io.StringIO()
        save_model(train_mira(treebank), first)
        save_model(train_mira(treebank), second)
        self.assertEqual(first.getvalue(), second.getvalue())
        self.assertEqual(train_mira(treebank), train_mira(treebank))

    def test_fixed_point(self):
        # Ties go to the root, which is the gold tree here
        treebank = make_treebank('xx', [(('VERB',), (0,)), (('NOUN', 'NOUN'), (0, 0))])
        model = train_mira(treebank)
        self.assertEqual(0, len(model))
        self.assertEqual(treebank, parse_treebank(model, treebank))

    def test_empty_treebank(self):
        with self.assertRaises(ValueError):
            train_mira(Treebank('xx'))

    def test_meta(self):
        model = train_mira(simple_treebank(language='de', sentences=5), iterations=2)
        self.assertEqual('de', model.meta.language)
        self.assertTrue(model.meta.delex)
        self.assertEqual(TEMPLATE_VERSION, model.meta.template_version)
        self.assertEqual('2', model.meta.provenance['iterations'])
        self.assertEqual('none', model.meta.provenance['shuffle'])

    def test_lexical(self):
        model = train_mira(simple_treebank(sentences=5), lexical=True)
        self.assertFalse(model.meta.delex)
        self.assertTrue(any(f.startswith('hForm') for f in model))

    def test_delexicalized_model_has_no_lexical_features(self):
        model = train_mira(simple_treebank(sentences=5))
        self.assertFalse(any('Form' in f or 'Lemma' in f for f in model))


class MiraUpdateTestCase(TestCase):

    def test_step_size(self):
        trainer = MiraTrainer(average=False)
        # loss 2, margin 0, ||delta||^2 = 4 -> tau = 0.5
        tau = trainer.update({'a': 1, 'b': 1}, {'c': 1, 'd': 1}, 2, 0.0)
        self.assertEqual(0.5, tau)
        self.assertEqual({'a': 0.5, 'b': 0.5, 'c': -0.5, 'd': -0.5}, trainer.weights)

    def test_step_capped(self):
        trainer = MiraTrainer(c=1.0, average=False)
        tau = trainer.update({'a': 1}, {}, 10, 0.0)
        self.assertEqual(1.0, tau)

    def test_no_violation(self):
        trainer = MiraTrainer()
        self.assertEqual(0.0, trainer.update({'a': 1}, {'b': 1}, 1, 5.0))
        self.assertEqual({}, trainer.weights)

    def test_identical_feature_counts(self):
        trainer = MiraTrainer()
        self.assertEqual(0.0, trainer.update({'a': 1}, {'a': 1}, 1, 0.0))

    def test_averaging(self):
        sentence = make_sentence(['NOUN', 'VERB'], [2, 0])
        features = sentence_features(sentence)
        averaged = MiraTrainer(average=True)
        raw = MiraTrainer(average=False)
        for trainer in (averaged, raw):
            # The zero model attaches everything to the root
            self.assertEqual(1, trainer.train_sentence(sentence, features))
        # One sentence: the average is the weights after it
        self.assertTrue(dict(raw.model()))
        self.assertEqual(dict(raw.model()), dict(averaged.model()))

    def test_average_over_sentences(self):
        trainer = MiraTrainer()
        trainer.update({'a': 1}, {}, 1, 0.0)
        trainer.steps += 1
        trainer.update({'b': 1}, {}, 1, 0.0)
        trainer.steps += 1
        # Weights after each sentence: {a: 1} then {a: 1, b: 1}
        self.assertEqual({'a': 1.0, 'b': 0.5}, dict(trainer.model()))
        self.assertEqual({'a': 1.0, 'b': 1.0}, trainer.weights)


class HelpersTestCase(TestCase):

    def test_hamming_loss(self):
        self.assertEqual(2, hamming_loss((2, 0, 2), (0, 0, 1)))
        self.assertEqual(0, hamming_loss((2, 0), (2, 0)))

    def test_tree_features(self):
        sentence = make_sentence(['NOUN', 'VERB'], [2, 0])
        features = {(2, 1): ('x', 'y'), (0, 2): ('y',), (0, 1): ('z',), (1, 2): ('w',)}
        self.assertEqual({'x': 1, 'y': 2}, tree_features(features, sentence.heads))
