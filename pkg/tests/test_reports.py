import io
from unittest import TestCase

from delextra.api import EvaluationReport
from delextra.errors import ReportFormatError
from delextra.reports import (
    read_matrix,
    read_report,
    read_weights,
    write_matrix,
    write_metadata,
    write_report,
    write_statistics,
    write_weights,
)


def written(writer, value):
    sink = io.StringIO()
    writer(value, sink)
    return sink.getvalue()


class MatrixTestCase(TestCase):

    matrix = {'de': {'cs': 0.25}, 'cs': {'de': 1 / 3}}

    def test_layout(self):
        expected = 'target\tcs\tde\ncs\t\t0.333333333333\nde\t0.25\t\n'
        self.assertEqual(expected, written(write_matrix, self.matrix))

    def test_read(self):
        matrix = read_matrix(io.StringIO(written(write_matrix, self.matrix)))
        self.assertEqual({'cs': {'de': 0.333333333333}, 'de': {'cs': 0.25}}, matrix)

    def test_stable(self):
        reordered = {'cs': {'de': 1 / 3}, 'de': {'cs': 0.25}}
        self.assertEqual(written(write_matrix, self.matrix), written(write_matrix, reordered))


class WeightsTestCase(TestCase):

    def test_vector(self):
        text = written(write_weights, {'sv': 16.0, 'da': 0.5})
        self.assertEqual('source\tweight\nda\t0.5\nsv\t16\n', text)
        self.assertEqual({'da': 0.5, 'sv': 16.0}, read_weights(io.StringIO(text)))

    def test_matrix_row(self):
        text = written(write_matrix, {'no': {'da': 2.0, 'sv': 3.0}, 'da': {'no': 1.0}})
        self.assertEqual({'da': 2.0, 'sv': 3.0}, read_weights(io.StringIO(text), 'no'))
        self.assertEqual({'no': 1.0}, read_weights(io.StringIO(text), 'da'))

    def test_matrix_needs_target(self):
        text = written(write_matrix, {'no': {'da': 2.0}})
        with self.assertRaises(ReportFormatError):
            read_weights(io.StringIO(text))
        with self.assertRaises(ReportFormatError):
            read_weights(io.StringIO(text), 'fi')


class ReportTestCase(TestCase):

    def test_roundtrip(self):
        report = EvaluationReport(uas=0.6, uas_nonpunct=0.75, per_pos={'NOUN': 1.0, 'DET': 0.0}, tokens=5)
        text = written(write_report, report)
        self.assertEqual(
            'metric\tvalue\nuas\t0.6\nuas_nonpunct\t0.75\npos:DET\t0\npos:NOUN\t1\ntokens\t5\n',
            text,
        )
        self.assertEqual(report, read_report(io.StringIO(text)))

    def test_without_nonpunct(self):
        report = EvaluationReport(uas=1.0, tokens=1)
        self.assertEqual(report, read_report(io.StringIO(written(write_report, report))))

    def test_missing_uas(self):
        with self.assertRaises(ReportFormatError):
            read_report(io.StringIO('metric\tvalue\ntokens\t5\n'))


class MetadataTestCase(TestCase):

    def test_layout(self):
        text = written(write_metadata, {'method': 'tree-comb', 'iterations': 3})
        self.assertEqual('key\tvalue\nmethod\ttree-comb\niterations\t3\n', text)


class StatisticsTestCase(TestCase):

    def test_layout(self):
        statistics = {'sv': {'sentences': 4, 'tokens': 40, 'adp_ratio': 0.1},
                      'es': {'sentences': 2, 'tokens': 20, 'adp_ratio': 0.15}}
        expected = ('language\tsentences\ttokens\tadp_ratio\n'
                    'sv\t4\t40\t0.1\n'
                    'es\t2\t20\t0.15\n')
        self.assertEqual(expected, written(write_statistics, statistics))
