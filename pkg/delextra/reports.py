import logging
from typing import Mapping, Optional

import pandas as pd

from delextra.api import EvaluationReport
from delextra.errors import ReportFormatError


logger = logging.getLogger(__name__)


FLOAT_FORMAT = '%.12g'

TSV_OPTIONS = dict(sep='\t', float_format=FLOAT_FORMAT, lineterminator='\n')

READ_OPTIONS = dict(sep='\t', keep_default_na=False, na_values=[''])


def write_matrix(matrix: Mapping[str, Mapping[str, float]], sink, corner='target'):
    """Write {row: {column: value}}; missing cells (self pairs) stay empty"""
    frame = pd.DataFrame.from_dict(
        {row: dict(values) for row, values in matrix.items()}, orient='index'
    )
    frame = frame.sort_index(axis=0).sort_index(axis=1)
    frame.index.name = corner
    frame.to_csv(sink, na_rep='', **TSV_OPTIONS)


def read_matrix(source):
    frame = pd.read_csv(source, index_col=0, dtype=str, **READ_OPTIONS)
    return {
        str(row): {str(col): float(v) for col, v in values.dropna().items()}
        for row, values in frame.iterrows()
    }


def write_weights(weights: Mapping[str, float], sink):
    frame = pd.DataFrame(
        sorted(weights.items()), columns=['source', 'weight']
    )
    frame.to_csv(sink, index=False, **TSV_OPTIONS)


def read_weights(source, target: Optional[str] = None):
    """Read a weight vector: either two columns ``source``/``weight``, or
    the row of ``target`` in a weight matrix"""
    frame = pd.read_csv(source, dtype=str, **READ_OPTIONS)
    if list(frame.columns) == ['source', 'weight']:
        return {row.source: float(row.weight) for row in frame.itertuples(index=False)}
    if target is None:
        raise ReportFormatError(
            'A weight matrix was given; the target language is needed to '
            'pick its row'
        )
    frame = frame.set_index(frame.columns[0])
    if target not in frame.index:
        raise ReportFormatError(f'No weights for target {target!r}')
    row = frame.loc[target].dropna()
    return {str(lang): float(value) for lang, value in row.items()}


def report_rows(report: EvaluationReport):
    rows = [('uas', report.uas)]
    if report.uas_nonpunct is not None:
        rows.append(('uas_nonpunct', report.uas_nonpunct))
    rows.extend((f'pos:{tag}', value) for tag, value in sorted(report.per_pos.items()))
    rows.append(('tokens', report.tokens))
    return rows


def write_report(report: EvaluationReport, sink):
    frame = pd.DataFrame(report_rows(report), columns=['metric', 'value'])
    frame['value'] = frame['value'].astype(float)
    frame.to_csv(sink, index=False, **TSV_OPTIONS)


def read_report(source) -> EvaluationReport:
    frame = pd.read_csv(source, dtype={'metric': str}, **READ_OPTIONS)
    values = dict(zip(frame['metric'], frame['value'].astype(float)))
    try:
        overall = values.pop('uas')
    except KeyError:
        raise ReportFormatError('Report has no uas row') from None
    return EvaluationReport(
        uas=overall,
        uas_nonpunct=values.pop('uas_nonpunct', None),
        per_pos={k[4:]: v for k, v in values.items() if k.startswith('pos:')},
        tokens=int(values.get('tokens', 0)),
    )


def write_metadata(metadata: Mapping[str, object], sink):
    frame = pd.DataFrame(
        [(key, str(value)) for key, value in metadata.items()],
        columns=['key', 'value'],
    )
    frame.to_csv(sink, index=False, **TSV_OPTIONS)


def write_statistics(statistics: Mapping[str, Mapping[str, float]], sink):
    """One row per treebank: sentences, tokens and adposition ratio"""
    frame = pd.DataFrame.from_dict(dict(statistics), orient='index',
                                   columns=['sentences', 'tokens', 'adp_ratio'])
    frame.index.name = 'language'
    frame.to_csv(sink, **TSV_OPTIONS)
