#!/usr/bin/env python3
"""
표현 족 목록 테스트 (조립, 특수화, 관계식 검증)
"""

import sys
from pathlib import Path

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

# 현재 디렉토리를 Python 경로에 추가
current_dir = Path(__file__).parent
sys.path.insert(0, str(current_dir))
sys.path.insert(0, str(current_dir / 'src'))

from braid_groups import Generator, GeneratorKind, Word, fvb_presentation
from linalg import is_identity, mat_equal, mat_mul, matrix_to_json
from report import CheckStatus
from rep_catalog import (
    BRAID_FAMILIES, CATALOG_FAMILIES, DELTA_FAMILIES, LAMBDA_FAMILIES, BlockSpec, CatalogError,
    ConstraintViolated, FamilyId, ambient_dim, assemble_local, block_spec, catalog_dump,
    check_determinants, eval_word, family, family_parameters, flatness_check, is_homogeneous,
    local_blocks, verify_relations,
)
from scalar_field import ParamBinding, ratfunc

HOLDING_DELTAS = [FamilyId.D1, FamilyId.D2, FamilyId.D3, FamilyId.D4, FamilyId.D6, FamilyId.D8]


def test_catalog_tags_and_labels():
    """족 태그 구성"""
    assert len(LAMBDA_FAMILIES) == 12
    assert len(DELTA_FAMILIES) == 8
    assert len(CATALOG_FAMILIES) == 27
    assert FamilyId.L10.label == 'λ10'
    assert FamilyId.D5.label == 'δ5'
    assert FamilyId.B2.label == 'β2'
    assert FamilyId.BURAU.label == 'burau'


def test_ambient_dim_and_assembly():
    """m = n + k − 2, 국소 배치"""
    assert ambient_dim(5, 3) == 6
    rep = family(FamilyId.G1, 4)
    assert rep.ambient_dim == 4
    assert rep.generators[0] == Generator.sigma(1)
    assert len(rep.generators) == 6
    r2 = rep.image(Generator.rho(2))
    assert matrix_to_json(r2) == [['1', '0', '0', '0'], ['0', '0', 'y', '0'],
                                  ['0', '1/y', '0', '0'], ['0', '0', '0', '1']]
    assert is_homogeneous(rep)
    assert len(local_blocks(rep, GeneratorKind.RHO)) == 3


def test_family_errors():
    """λ 족은 n=2 전용, 알 수 없는 태그"""
    with pytest.raises(CatalogError):
        family(FamilyId.L1, 3)
    with pytest.raises(CatalogError):
        family('zz', 2)
    with pytest.raises(CatalogError):
        family(FamilyId.CUSTOM, 2)
    with pytest.raises(CatalogError):
        BlockSpec(4, block_spec(FamilyId.L1).sigma_block)


def test_parameters():
    """족별 매개변수"""
    assert family_parameters(FamilyId.L1) == ('b', 'd', 'y', 't')
    assert family_parameters(FamilyId.L10) == ()
    assert family(FamilyId.B1, 3).parameters() == ('a', 'c')


@pytest.mark.parametrize('fam', LAMBDA_FAMILIES)
def test_lambda_relations_hold(fam):
    """λ 족은 FVB_2 관계식을 모두 만족"""
    report = verify_relations(family(fam, 2))
    assert report.passed
    assert report.summary()['pass'] == 2


@pytest.mark.parametrize('n', [3, 4, 5, 6])
@pytest.mark.parametrize('fam', [FamilyId.G1, FamilyId.G2])
def test_gamma_relations_hold(fam, n):
    """γ 족은 모든 n에서 FVB_n 표현"""
    assert verify_relations(family(fam, n)).passed


@pytest.mark.parametrize('n', [4, 5, pytest.param(6, marks=pytest.mark.slow)])
@pytest.mark.parametrize('fam', HOLDING_DELTAS)
def test_delta_relations_hold(fam, n):
    """δ 족 (n=4..6)"""
    assert verify_relations(family(fam, n)).passed


@pytest.mark.parametrize('fam', [FamilyId.D5, FamilyId.D7])
def test_delta_transcription_failures_are_findings(fam):
    """옮겨 적은 그대로의 δ5, δ7은 관계식이 깨짐"""
    report = verify_relations(family(fam, 4), failure_status=CheckStatus.FINDING)
    assert report.passed
    assert report.has_findings
    failing = [r for r in report.records if r.status == CheckStatus.FINDING]
    assert all('difference' in r.detail and len(r.detail['entry']) == 2 for r in failing)


@pytest.mark.parametrize('fam', BRAID_FAMILIES)
def test_braid_families_are_braid_but_not_flat(fam):
    """꼬임군 표현은 B_n 관계식을 만족하지만 평탄하지 않음"""
    rep = family(fam, 4)
    assert verify_relations(rep).passed
    assert flatness_check(rep)


def test_burau_fails_flat_relation():
    """Burau는 FVB_3 에서 σ² = I 만 실패, ρ 관계식은 건너뜀"""
    report = verify_relations(family(FamilyId.BURAU, 3), fvb_presentation(3))
    failed = [r.id for r in report.records if r.status == CheckStatus.FAIL]
    assert failed == ['burau/n3/eq8[1]', 'burau/n3/eq8[2]']
    assert 'burau/n3/skipped' in report.sections


def test_determinants():
    """행렬식 인수는 조건 목록에 포함, δ7의 ρ 블록은 특이"""
    assert all(ok for _, ok in check_determinants(family(FamilyId.L1, 2)))
    assert all(ok for _, ok in check_determinants(family(FamilyId.BURAU, 3)))
    d7 = dict(check_determinants(family(FamilyId.D7, 4)))
    assert not d7['r1']
    assert d7['s1']


def test_specialize_and_constraints():
    """특수화, 0 아님 조건 위반"""
    rep = family(FamilyId.L1, 2)
    with pytest.raises(ConstraintViolated):
        rep.specialize(ParamBinding.parse('b=0,d=1,y=1,t=0'))
    special = rep.specialize(ParamBinding.parse('b=1,d=0,y=2,t=0'))
    assert special.parameters() == ()
    assert is_identity(eval_word(special, Word.parse('s1 s1')))
    with pytest.raises(CatalogError):
        special.specialize(ParamBinding.parse('b=1'))


def test_substitute_keeps_symbols():
    """부분 치환 뒤에도 관계식 유지"""
    rep = family(FamilyId.L1, 2).substitute({'t': ratfunc('0')})
    assert 't' not in rep.parameters()
    assert verify_relations(rep).passed


def test_eval_word_alphabet():
    """표현 밖의 생성원"""
    with pytest.raises(CatalogError):
        eval_word(family(FamilyId.BURAU, 3), Word.parse('r1'))


def test_custom_assembly():
    """직접 만든 블록으로 조립"""
    spec = block_spec(FamilyId.G1)
    rep = assemble_local(3, spec)
    assert rep.family == FamilyId.CUSTOM
    assert verify_relations(rep).passed


def test_catalog_dump():
    """JSON 덤프"""
    dump = catalog_dump([FamilyId.L1, FamilyId.D1], 5)
    assert dump[0]['n'] == 2 and dump[1]['n'] == 5
    assert dump[1]['ambient_dim'] == 6
    assert dump[0]['sigma_block'][0] == ['-d', 'b']
    assert ratfunc(dump[0]['sigma_block'][1][0]) == ratfunc('(1-d**2)/b')
    assert dump[0]['constraints'] == ['b', 'y']


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=-8, max_value=8, max_denominator=4),
       st.fractions(min_value=-8, max_value=8, max_denominator=4))
def test_specialization_is_homomorphism(b, d):
    """λ5: 특수화 뒤에도 σ₁² = I, 단어 상은 곱"""
    assume(b != 0)
    rep = family(FamilyId.L5, 2)
    special = rep.specialize(ParamBinding.parse(f"b={b.numerator}/{b.denominator},d={d.numerator}/{d.denominator}"))
    s1 = special.image(Generator.sigma(1))
    assert is_identity(mat_mul(s1, s1))
    w = Word.parse('s1 r1 s1')
    assert mat_equal(eval_word(special, w), mat_mul(eval_word(special, Word.parse('s1 r1')), s1))
