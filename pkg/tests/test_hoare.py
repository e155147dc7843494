"""
Tests de la capa de Hoare: tabla de obligaciones, triples y consecuencia.
"""

import random

import pytest

from loopw.checker.context import UNINIT
from loopw.checker.typechecker import TypeChecker
from loopw.config.settings import Config
from loopw.errors import NonDataMuteAssertion
from loopw.hoare.triples import (
    Triple, apply_consequence, check_triple, consequence_accepted, triple_accepted,
)
from loopw.hoare.vcgen import vcgen
from loopw.syntax.ast import And, App, Eq, IVar, Nat, Succ, Truth, Zero
from loopw.syntax.parser import parse_program, parse_seq

from conftest import ADD_SIG

CONSEQUENCE_TABLE = [
    "PROVEN\tmain\t8:3\tn = n",
    "PROVEN\tmain\t9:3\tadd(s(0), n) = s(n)",
    "REFUTED\tmain\t10:3\t0 = s(0)",
]


def test_consequence_obligation_table(corpus):
    """Las tres afirmaciones salen en orden de fuente con su estado."""
    obligations = vcgen(corpus('consequence'))
    assert [ob.to_line() for ob in obligations] == CONSEQUENCE_TABLE
    assert [ob.rule for ob in obligations] == ['claim', 'claim', 'claim']


def test_vcgen_is_stable(corpus):
    first = [ob.to_line() for ob in vcgen(corpus('consequence'))]
    second = [ob.to_line() for ob in vcgen(corpus('consequence'))]
    assert first == second


def test_bad_claim_is_refuted(corpus):
    obligations = vcgen(corpus('bad_claim'))
    assert len(obligations) == 1
    assert obligations[0].status.refuted


def test_program_without_assertions_has_no_obligations(corpus):
    assert vcgen(corpus('double')) == []


def test_no_discharge_skips_everything(corpus):
    obligations = vcgen(corpus('consequence'), Config({'discharge': False}))
    assert len(obligations) == 3
    assert {ob.status.label for ob in obligations} == {'UNPROVEN'}
    assert {ob.status.reason for ob in obligations} == {'skipped'}


def test_call_precondition_obligation():
    program = parse_program("""
proc pred[n](in a : nat(n); out) pre n = s(0) { skip; }
proc main(in; out) { call pred [s(0)] (1;); }""")
    obligations = vcgen(program)
    assert [(ob.rule, ob.proc, ob.status.label) for ob in obligations] == [('call-pre', 'main', 'PROVEN')]


def test_postcondition_uses_final_assertion():
    program = parse_program(ADD_SIG + """
proc main[n](in a : nat(n); out) post add(0, n) = n {
  claim n = n;
}""")
    rules = [(ob.rule, ob.status.label) for ob in vcgen(program)]
    assert ('post', 'PROVEN') in rules


# ==================== TRIPLES ====================

def _setup():
    program = parse_program(ADD_SIG + "proc main(in; out) { skip; }")
    checker = TypeChecker(program)
    ctx = checker.global_context('main').with_indices('n')
    return checker, ctx


def add(a, b):
    return App('add', (a, b))


N = IVar('n')
STRENGTHENED = Eq(add(Succ(Zero()), N), Succ(N))


def test_triple_with_claim_is_accepted():
    checker, ctx = _setup()
    seq = parse_seq("{ claim add(s(0), n) = s(n); }", {'add': 2})
    triple = Triple(Truth(), seq, None, STRENGTHENED)
    result, obligations = check_triple(checker, ctx, triple)
    assert result.reachable
    assert [ob.rule for ob in obligations] == ['claim', 'triple-post']
    assert triple_accepted(checker, ctx, triple)


def test_triple_with_false_post_is_rejected():
    checker, ctx = _setup()
    seq = parse_seq("{ skip; }")
    triple = Triple(Truth(), seq, None, Eq(N, Zero()))
    assert not triple_accepted(checker, ctx, triple)


def test_consequence_rule():
    """{true} s {add(s(0), n) = s(n)} se amplía a {n = 0} s {true}."""
    checker, ctx = _setup()
    seq = parse_seq("{ claim add(s(0), n) = s(n); }", {'add': 2})
    inner = Triple(Truth(), seq, None, STRENGTHENED)
    widened, premises = apply_consequence(checker, ctx, Eq(N, Zero()), inner, Truth())
    assert widened.pre == Eq(N, Zero()) and widened.post == Truth()
    assert [ob.rule for ob in premises] == ['consequence-pre', 'consequence-post']
    assert all(ob.status.proven for ob in premises)
    assert consequence_accepted(checker, ctx, Eq(N, Zero()), inner, Truth())


def test_consequence_cannot_weaken_to_a_false_post():
    checker, ctx = _setup()
    seq = parse_seq("{ claim add(s(0), n) = s(n); }", {'add': 2})
    inner = Triple(Truth(), seq, None, STRENGTHENED)
    _, premises = apply_consequence(checker, ctx, Truth(), inner, Eq(N, Zero()))
    assert premises[1].status.refuted
    assert not consequence_accepted(checker, ctx, Truth(), inner, Eq(N, Zero()))


def test_triple_rejects_non_data_mute_assertions():
    checker, ctx = _setup()
    with pytest.raises(NonDataMuteAssertion):
        check_triple(checker, ctx, Triple(Eq(N, 'n'), (), None, Truth()))


# ==================== MONOTONÍA DE LA CONSECUENCIA ====================

def _body_context(checker, decl):
    """Γ;Ω del cuerpo de un procedimiento, como lo prepara check_proc_lit."""
    lit = decl.lit
    ctx = checker.global_context(decl.name).with_indices(*lit.binders)
    for param in lit.ins:
        ctx.gamma[param.name] = param.ty
    ctx.omega = {p.name: (Nat(Zero()) if isinstance(p.ty, Nat) else UNINIT) for p in lit.outs}
    ctx.declared = {p.name: p.ty for p in lit.outs}
    return ctx


def _formula_pool(binders, has_add):
    terms = [Zero(), Succ(Zero())]
    for name in binders:
        terms += [IVar(name), Succ(IVar(name))]
        if has_add:
            terms += [add(Zero(), IVar(name)), add(Succ(Zero()), IVar(name))]
    atoms = [Eq(a, b) for a in terms for b in terms]
    return [Truth()] + atoms + [And(a, b) for a, b in zip(atoms[::7], atoms[3::7])]


@pytest.mark.parametrize('name', ['double', 'add', 'mult', 'swap', 'counter', 'records', 'consequence'])
def test_consequence_is_monotone_over_the_corpus(corpus, name):
    """Si {φ} s {ψ}, φ′ ⇒ φ y ψ ⇒ ψ′ son PROVEN, se acepta {φ′} s {ψ′}."""
    program = corpus(name)
    checker = TypeChecker(program)
    decl = program.proc('main')
    ctx = _body_context(checker, decl)
    pool = _formula_pool(decl.lit.binders, dict(program.signature).get('add') == 2)
    rng = random.Random(4242)
    widened = 0
    for _ in range(200):
        pre = rng.choice(pool)
        post = rng.choice([Truth(), rng.choice(pool)])
        pre2 = rng.choice([pre, And(pre, rng.choice(pool)), rng.choice(pool)])
        post2 = rng.choice([post, Truth(), rng.choice(pool)])
        inner = Triple(pre, decl.lit.body, None, post)
        if not triple_accepted(checker, ctx, inner):
            continue
        stronger = checker.entailment.entails([pre2], pre).proven
        weaker = checker.entailment.entails([post], post2).proven
        if stronger and weaker:
            assert consequence_accepted(checker, ctx, pre2, inner, post2), (pre, post, pre2, post2)
            widened += 1
        else:
            assert not consequence_accepted(checker, ctx, pre2, inner, post2)
    if name != 'consequence':
        assert widened > 0
