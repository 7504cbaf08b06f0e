#!/usr/bin/env python3
"""
표현 분석 테스트 (불변 직선, 진술된 조건, 폐포 판정, 핵 탐색, 증거표)
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# 현재 디렉토리를 Python 경로에 추가
current_dir = Path(__file__).parent
sys.path.insert(0, str(current_dir))
sys.path.insert(0, str(current_dir / 'src'))

from sympy import QQ, Symbol

from braid_groups import Word
from linalg import Subspace
from rep_analysis import (
    REDUCIBILITY_CLAIMS, burnside_verdict, check_paper_eigenvectors, common_invariant_line,
    compare_irreducibility, compare_readings, dihedral_power_formula, kernel_search,
    paper_condition, random_binding, reducibility_experiment, suggest_constraint,
    symbolic_witnesses,
)
from rep_catalog import CatalogError, FamilyId, family
from scalar_field import ParamBinding


def _special(fam: FamilyId, n: int, text: str):
    return family(fam, n).specialize(ParamBinding.parse(text))


def test_random_binding_is_seeded_and_valid():
    """같은 시드는 같은 바인딩, 0 아님 조건 만족"""
    rep = family(FamilyId.L1, 2)
    first = random_binding(rep, np.random.default_rng(11))
    second = random_binding(rep, np.random.default_rng(11))
    assert first == second
    assert first.get('b') != 0 and first.get('y') != 0


def test_invariant_line_found():
    """λ3 (t=0, y=1): ρ 가 교환 행렬이라 (1,1) 보존"""
    line = common_invariant_line(_special(FamilyId.L3, 2, 'y=1,t=0'))
    assert line == Subspace.span([(1, 1)], 2, QQ)


def test_invariant_line_gamma1():
    """γ1 (n=3, y=2): 고정 벡터 (y², y, 1)"""
    line = common_invariant_line(_special(FamilyId.G1, 3, 'y=2'))
    assert line == Subspace.span([(4, 2, 1)], 3, QQ)


def test_invariant_line_absent():
    """λ1 (b=1, d=0, y=2, t=0): 공통 고유벡터 없음"""
    assert common_invariant_line(_special(FamilyId.L1, 2, 'b=1,d=0,y=2,t=0')) is None
    with pytest.raises(CatalogError):
        common_invariant_line(family(FamilyId.L1, 2))


def test_paper_condition():
    """진술된 조건 평가"""
    assert not paper_condition(FamilyId.L1, ParamBinding.parse('b=1,y=1,d=3,t=3'))
    assert paper_condition(FamilyId.L2, ParamBinding.parse('c=2,y=1,t=5'))
    assert paper_condition(FamilyId.L5, ParamBinding.parse('b=3,d=1'))
    assert not paper_condition(FamilyId.L3, ParamBinding.parse('y=4,t=3'))
    # 부호가 엇갈린 경우만 깨지는 바인딩: b(t+1) = y(d−1)
    mixed = ParamBinding.parse('b=1,t=1,y=1,d=3')
    assert not paper_condition(FamilyId.L1, mixed, 'all')
    assert paper_condition(FamilyId.L1, mixed, 'matched')
    with pytest.raises(CatalogError):
        paper_condition(FamilyId.L6, mixed)
    with pytest.raises(CatalogError):
        paper_condition(FamilyId.L1, mixed, 'other')


def test_paper_eigenvectors_generic_and_degenerate():
    """정의된 공식 고유벡터는 고유공간에 들어감, 분모 0이면 정의되지 않음"""
    generic = check_paper_eigenvectors(FamilyId.L1, ParamBinding.parse('b=2,d=3,y=5,t=1/2'))
    assert all(row['defined'] and row['agrees'] for row in generic)
    degenerate = check_paper_eigenvectors(FamilyId.L1, ParamBinding.parse('b=1,d=1,y=2,t=-1'))
    assert any(not row['defined'] for row in degenerate)
    assert all(row['agrees'] in (True, None) for row in degenerate)
    unipotent = check_paper_eigenvectors(FamilyId.L4, ParamBinding.parse('b=1,d=2,z=3'))
    assert all(row['agrees'] for row in unipotent)


def test_compare_lambda3_always_reducible():
    """λ3 은 σ = I 라 항상 가약: 조건이 기약을 예측한 표본은 모두 불일치"""
    report = compare_irreducibility(FamilyId.L3, 24, seed=1)
    assert report.conserved
    assert report.oracle_mismatches == 0
    assert report.disagreements
    assert all(d['oracle'] == 'reducible' for d in report.disagreements)
    assert report.to_dict()['mode'] == 'irreducibility'


def test_compare_lambda6_agrees():
    """λ6 은 (0,1)을 공통으로 보존해 진술대로 가약"""
    report = compare_irreducibility(FamilyId.L6, 12, seed=3)
    assert report.agreements == 12
    assert report.oracle_mismatches == 0


def test_compare_lambda1_oracles_agree():
    """λ1: 두 오라클은 항상 일치"""
    report = compare_irreducibility(FamilyId.L1, 24, seed=5)
    assert report.conserved
    assert report.oracle_mismatches == 0
    with pytest.raises(CatalogError):
        compare_irreducibility(FamilyId.G1, 4, seed=0)


def test_compare_readings_keys():
    """± 두 해석"""
    readings = compare_readings(FamilyId.L1, 8, seed=2)
    assert set(readings) == {'all', 'matched'}


def test_burnside_gamma2():
    """γ2 (n=3): b ≠ y 이면 폐포 9 (기약), b = y 이면 (1,1,1) 고정"""
    rep = family(FamilyId.G2, 3)
    generic, equal = burnside_verdict(rep, [ParamBinding.parse('b=2,y=1'), ParamBinding.parse('b=1,y=1')])
    assert generic.closure_dim == 9 and generic.is_irreducible
    assert not equal.is_irreducible
    assert equal.fixed_space == Subspace.span([(1, 1, 1)], 3, QQ)


def test_reducibility_experiment_gamma1():
    """γ1 (n=3): 폐포 차원 1 + (n−1)² = 5"""
    rows = reducibility_experiment(FamilyId.G1, [3], 3, seed=0)
    row = rows[0]
    assert row['closure_dims'] == [5]
    assert row['verdict'] == 'reducible'
    assert row['claim'] is None and row['agrees'] is None
    assert 'fixed_vectors' in row


@pytest.mark.slow
@pytest.mark.parametrize('n', [3, 4, 5, 6, 7])
def test_gamma1_closure_dimension(n):
    """γ1: 폐포 차원 1 + (n−1)², n ≥ 6 부터 가약 주장과 일치"""
    row = reducibility_experiment(FamilyId.G1, [n], 2, seed=0)[0]
    assert row['closure_dims'] == [1 + (n - 1) ** 2]
    assert row['verdict'] == 'reducible'
    assert row['fixed_vectors']
    if n >= REDUCIBILITY_CLAIMS[FamilyId.G1]:
        assert row['claim'] == 'reducible' and row['agrees'] is True
    else:
        assert row['claim'] is None and row['agrees'] is None


@pytest.mark.slow
@pytest.mark.parametrize('n', [3, 4, 5])
def test_gamma2_contradicts_reducibility_claim(n):
    """γ2: 가약이라는 진술과 달리 일반 바인딩에서 기약"""
    row = reducibility_experiment(FamilyId.G2, [n], 2, seed=0)[0]
    assert row['claim'] == 'reducible'
    assert row['verdict'] == 'irreducible'
    assert row['closure_dims'] == [n * n]
    assert row['agrees'] is False
    assert 'fixed_vectors' not in row


def _unit(i: int, m: int) -> list:
    return ['1' if k == i else '0' for k in range(m)]


@pytest.mark.slow
@pytest.mark.parametrize('fam, expected', [
    (FamilyId.D1, [_unit(0, 11), _unit(10, 11)]),
    (FamilyId.D2, None),
    (FamilyId.D3, None),
    (FamilyId.D4, None),
    (FamilyId.D5, [_unit(10, 11)]),
    (FamilyId.D6, None),
    (FamilyId.D7, [_unit(0, 11)]),
    (FamilyId.D8, None),
])
def test_delta_reducible_at_ten_strands(fam, expected):
    """δ 족 (n=10): 공통 고정 벡터가 있어 가약, 주장과 일치"""
    row = reducibility_experiment(fam, [10], 2, seed=0)[0]
    assert row['claim'] == 'reducible'
    assert row['verdict'] == 'reducible'
    assert row['agrees'] is True
    assert all(dim < 11 * 11 for dim in row['closure_dims'])
    vectors = row['fixed_vectors']
    assert vectors and all(len(v) == 11 for v in vectors)
    if expected is not None:
        assert vectors == expected


def test_kernel_search_lambda6():
    """λ6: c = z 이면 σ₁ρ₁ = I, 아니면 길이 24까지 핵 없음"""
    hit = kernel_search(_special(FamilyId.L6, 2, 'c=1,z=1'), 4)
    assert hit.kind == 'kernel_witness'
    assert hit.word == Word.parse('s1 r1')
    assert hit.enumerated == 3
    miss = kernel_search(_special(FamilyId.L6, 2, 'c=1,z=2'), 24)
    assert miss.kind == 'no_witness_up_to_length'
    assert miss.enumerated == 48
    assert miss.to_dict()['word'] is None


def test_kernel_search_bfs():
    """n ≥ 3: 몫 사상으로 확인된 증거만 인정"""
    hit = kernel_search(_special(FamilyId.G1, 3, 'y=2'), 1)
    assert hit.word == Word.parse('s1')
    miss = kernel_search(_special(FamilyId.G2, 3, 'b=2,y=1'), 3)
    assert miss.kind == 'no_witness_up_to_length'


def test_kernel_search_guards():
    """기호 표현, 길이 상한"""
    with pytest.raises(CatalogError):
        kernel_search(family(FamilyId.L6, 2), 4)
    with pytest.raises(CatalogError):
        kernel_search(_special(FamilyId.L6, 2, 'c=1,z=2'), 25)
    with pytest.raises(CatalogError):
        kernel_search(_special(FamilyId.G1, 3, 'y=2'), 11)


def test_symbolic_witnesses():
    """옮겨 적은 δ5, δ6, δ7 과 증명 쪽 λ4 치환만 실패"""
    rows = symbolic_witnesses()
    failing = {(row['family'], row['source']) for row in rows if not row['holds']}
    assert failing == {('d5', 'statement'), ('d6', 'statement'), ('d7', 'statement'), ('l4', 'proof')}
    assert all('suggested' in row for row in rows if not row['holds'])


def test_suggest_constraint():
    """σ₁ρ₁ = I 가 되는 조건은 c = z"""
    solutions = suggest_constraint(FamilyId.L6, 's1 r1')
    assert len(solutions) == 1
    assert solutions[0].value('c') == Symbol('z')
    assert suggest_constraint(FamilyId.L10, 's1') == []


def test_dihedral_power_formula():
    """λ6, λ7 거듭제곱 공식"""
    assert dihedral_power_formula(FamilyId.L6, 12)
    assert dihedral_power_formula(FamilyId.L7, 12)
    with pytest.raises(CatalogError):
        dihedral_power_formula(FamilyId.L1, 3)
