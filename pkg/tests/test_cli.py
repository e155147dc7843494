"""
Tests del CLI: códigos de salida y salida impresa de cada subcomando.
"""

import pytest

from loopw.config.settings import CORPUS_DIR
from loopw.main import EXIT_CHECK, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main

from conftest import ADD_SIG
from test_hoare import CONSEQUENCE_TABLE


def path(name: str) -> str:
    return str(CORPUS_DIR / f"{name}.loopw")


def write(tmp_path, text: str) -> str:
    target = tmp_path / 'programa.loopw'
    target.write_text(text, encoding='utf-8')
    return str(target)


# ==================== check / vcs ====================

def test_check_double_is_ok(capsys):
    assert main(['check', path('double')]) == EXIT_OK
    assert '✅' in capsys.readouterr().out


def test_check_bad_claim_prints_refuted_obligation(capsys):
    assert main(['check', path('bad_claim')]) == EXIT_CHECK
    out = capsys.readouterr().out
    assert 'ERROR\tmain\t2:3\tclaim\t' in out
    assert 'REFUTED' in out


def test_vcs_prints_golden_table(capsys):
    assert main(['vcs', path('consequence')]) == EXIT_CHECK
    assert capsys.readouterr().out.splitlines() == CONSEQUENCE_TABLE


def test_vcs_export_csv(tmp_path):
    target = tmp_path / 'obligaciones.csv'
    assert main(['vcs', path('consequence'), '--export', str(target)]) == EXIT_CHECK
    lines = target.read_text(encoding='utf-8').splitlines()
    assert lines[0] == 'status,proc,line,col,rule,hyps,goal,reason'
    assert len(lines) == 4


def test_vcs_export_unknown_format(tmp_path):
    assert main(['vcs', path('double'), '--export', str(tmp_path / 'x.xml')]) == EXIT_USAGE


def test_strict_turns_unproven_into_errors(tmp_path):
    source = write(tmp_path, ADD_SIG + "proc main[n](in a : nat(n); out) { claim add(n, 0) = n; }")
    assert main(['check', source]) == EXIT_OK
    assert main(['check', source, '--strict']) == EXIT_CHECK


def test_type_error_exit_code(tmp_path):
    text = (CORPUS_DIR / 'double.loopw').read_text(encoding='utf-8')
    source = write(tmp_path, text.replace('nat(add(i, i))', 'nat(add(i, s(i)))'))
    assert main(['check', source]) == EXIT_CHECK


def test_emit_smt(tmp_path):
    out_dir = tmp_path / 'smt'
    assert main(['vcs', path('consequence'), '--emit-smt', str(out_dir)]) == EXIT_CHECK
    assert sorted(p.name for p in out_dir.iterdir()) == ['main_1.smt2', 'main_2.smt2', 'main_3.smt2']


# ==================== run / translate / compare ====================

def test_run_double(capsys):
    assert main(['run', path('double'), '3']) == EXIT_OK
    assert capsys.readouterr().out == '6\n'


def test_run_accepts_options_before_inputs(capsys):
    assert main(['run', path('double'), '--strict', '3']) == EXIT_OK
    assert capsys.readouterr().out == '6\n'


def test_run_accepts_options_between_inputs(capsys):
    assert main(['run', path('add'), '2', '--strict', '3']) == EXIT_OK
    assert capsys.readouterr().out == '5\n'


def test_run_rejects_unknown_extra_arguments():
    assert main(['run', path('double'), '--strict', 'tres']) == EXIT_USAGE


def test_large_literals_do_not_exhaust_the_stack(tmp_path, capsys):
    """Un literal de 1500 se comprueba, se ejecuta y se traduce sin recursión profunda."""
    source = write(tmp_path, "proc main(in; out b : nat(1500)) { b := 1500; }")
    assert main(['check', source]) == EXIT_OK
    capsys.readouterr()
    assert main(['run', source]) == EXIT_OK
    assert capsys.readouterr().out == '1500\n'
    assert main(['compare', source]) == EXIT_OK
    assert capsys.readouterr().out == 'equal\n'


def test_run_escape_is_runtime_error(capsys):
    assert main(['run', path('escape')]) == EXIT_RUNTIME
    assert 'escaped-label' in capsys.readouterr().err


def test_run_wrong_arity(capsys):
    assert main(['run', path('double'), '1', '2']) == EXIT_USAGE


def test_run_negative_input():
    assert main(['run', path('double'), '--', '-1']) == EXIT_USAGE


def test_run_refuses_ill_typed_programs():
    assert main(['run', path('bad_claim')]) == EXIT_CHECK


def test_translate_prints_core(capsys):
    assert main(['translate', path('early_exit')]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith('(define main (lambda ')
    assert lines[-1] == '(main main)'


def test_compare_double_is_equal(capsys):
    assert main(['compare', path('double'), '--max', '5']) == EXIT_OK
    assert capsys.readouterr().out == 'equal\n'


def test_compare_escape_diverges(capsys):
    assert main(['compare', path('escape')]) == EXIT_RUNTIME
    out = capsys.readouterr().out
    assert out == "diverge (): run=['EscapedLabel'] core=['pack(0)', '<fn>']\n"


# ==================== errores de uso ====================

def test_missing_file():
    assert main(['check', 'no/existe.loopw']) == EXIT_USAGE


def test_syntax_error(tmp_path, capsys):
    assert main(['check', write(tmp_path, "proc main(in; out) { skip }")]) == EXIT_USAGE
    assert 'syntax' in capsys.readouterr().out


def test_well_formedness_error(tmp_path, capsys):
    assert main(['check', write(tmp_path, "proc main(in a : nat(q); out) { skip; }")]) == EXIT_USAGE
    assert 'unbound' in capsys.readouterr().out


def test_examples_path_falls_back_to_corpus(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(['check', 'examples/double.loopw']) == EXIT_OK


def test_version(capsys):
    assert main(['--version']) == EXIT_OK
    assert 'loopw' in capsys.readouterr().out


def test_no_command():
    assert main([]) == EXIT_USAGE


def test_invalid_bound():
    assert main(['check', path('double'), '--bound', '0']) == EXIT_USAGE


def test_invalid_environment(monkeypatch):
    monkeypatch.setenv('LOOPW_STEP_CAP', 'muchos')
    assert main(['check', path('double')]) == EXIT_USAGE


# ==================== borrado de aserciones ====================

TYPED_CORPUS = ['double', 'early_exit', 'higher_order', 'add', 'mult', 'nested_loops',
                'records', 'loop_exit', 'label_param', 'counter', 'swap']


@pytest.mark.parametrize('name', TYPED_CORPUS)
def test_discharge_does_not_change_outputs(capsys, name):
    """Con y sin descarga de obligaciones la salida del programa es idéntica byte a byte."""
    from loopw.syntax.parser import parse_program

    program = parse_program((CORPUS_DIR / f"{name}.loopw").read_text(encoding='utf-8'))
    inputs = ['2'] * len(program.entry_proc().lit.ins)
    assert main(['run', path(name)] + inputs) == EXIT_OK
    checked = capsys.readouterr().out
    assert main(['run', path(name), '--no-discharge'] + inputs) == EXIT_OK
    assert capsys.readouterr().out == checked
