"""Tests del generador de reportes."""

import json

import pytest

from loopw.analytics.reporter import OBLIGATION_COLUMNS, Reporter
from loopw.hoare.vcgen import vcgen


@pytest.fixture
def reporter(corpus):
    return Reporter(vcgen(corpus('consequence')), source='consequence.loopw')


def test_summary_counts_by_status(reporter):
    assert reporter.summary() == {'PROVEN': 2, 'REFUTED': 1, 'UNPROVEN': 0}


def test_obligations_frame_columns(reporter):
    df = reporter.obligations_frame()
    assert list(df.columns) == OBLIGATION_COLUMNS
    assert df['line'].tolist() == [8, 9, 10]


def test_per_procedure(reporter):
    table = reporter.per_procedure()
    assert table.loc['main', 'PROVEN'] == 2
    assert table.loc['main', 'REFUTED'] == 1


def test_empty_program_exports_header_only(corpus, tmp_path):
    target = tmp_path / 'vacio.csv'
    Reporter(vcgen(corpus('double'))).export(str(target))
    assert target.read_text(encoding='utf-8').strip() == ','.join(OBLIGATION_COLUMNS)


def test_export_json(reporter, tmp_path):
    target = tmp_path / 'obligaciones.json'
    reporter.export(str(target))
    data = json.loads(target.read_text(encoding='utf-8'))
    assert data['source'] == 'consequence.loopw'
    assert data['summary']['REFUTED'] == 1
    assert [o['goal'] for o in data['obligations']][-1] == '0 = s(0)'


def test_export_rejects_unknown_suffix(reporter, tmp_path):
    with pytest.raises(ValueError):
        reporter.export(str(tmp_path / 'salida.xlsx'))
