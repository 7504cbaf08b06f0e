#!/usr/bin/env python3
"""
분류 재유도 테스트 (방정식 생성, 분기 풀이, F_p 전수 조사)
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# 현재 디렉토리를 Python 경로에 추가
current_dir = Path(__file__).parent
sys.path.insert(0, str(current_dir))
sys.path.insert(0, str(current_dir / 'src'))

from sympy import S, symbols

from classifier import (
    BranchSolverError, CaseTrace, CensusGuardExceeded, PolySystem, branch_solve, build_system,
    canonical_poly, census_fvb_local, census_involutions_2x2, compare_with_paper,
    format_case_tree, homogeneous_type, involution_form, match_involution_form,
    recheck_survivors, restrict_system, solution_forms,
)

a, b = symbols('a b')


def test_canonical_poly():
    """분자, 정수 원시, 양의 선두 계수"""
    assert canonical_poly('2*a/3 - 4/3', (a, b)) == a - 2
    assert canonical_poly('-b', (a, b)) == b
    assert canonical_poly('5', (a, b)) == S.One
    assert canonical_poly('a - a', (a, b)) == S.Zero
    assert canonical_poly('(a - 1)/b', (a, b)) == a - 1


def test_poly_system_unknowns():
    """미지수와 방정식 기호가 맞아야 함"""
    with pytest.raises(BranchSolverError):
        PolySystem('toy', ('a', 'b'), (a - 1,))
    with pytest.raises(BranchSolverError):
        PolySystem('toy', ('a',), (a * b,))


def test_branch_solve_linear_chain():
    """선형 역대입"""
    solutions = branch_solve(PolySystem('toy', ('a', 'b'), (a * b, a - 1)))
    assert len(solutions) == 1
    assert solutions[0].value('a') == 1
    assert solutions[0].value('b') == 0


def test_branch_solve_factor_split_and_trace():
    """인수 분기: 앞선 인수는 0이 아님"""
    trace = CaseTrace()
    solutions = branch_solve(PolySystem('toy', ('a', 'b'), (a * b,)), trace=trace)
    assert len(solutions) == 2
    assert solutions[1].side_conditions == (a,)
    tree = format_case_tree(trace)
    assert 'a = 0' in tree
    assert '→ 해' in tree


def test_branch_solve_side_conditions():
    """처음부터 주어진 0 아님 조건"""
    solutions = branch_solve(PolySystem('toy', ('a', 'b'), (a * b,)), side_conditions=[a])
    assert len(solutions) == 1
    assert solutions[0].value('b') == 0
    assert branch_solve(PolySystem('toy', ('a',), (a,)), side_conditions=[a]) == []


def test_build_system_matches_printed_lists():
    """생성된 방정식과 인쇄된 목록"""
    local = build_system('fvb2_local')
    assert len(local.equations) == 8
    assert compare_with_paper(local)['match']
    homog = build_system('fvbn_homog_2block')
    comparison = compare_with_paper(homog)
    assert comparison['generated'] == 24
    assert comparison['match']
    assert comparison['generated_not_printed'] == []
    with pytest.raises(BranchSolverError):
        build_system('fvb3_local')


def test_sigma_part_forms():
    """σ 대합은 scalar, unipotent, generic 세 형태"""
    system = restrict_system(build_system('fvb2_local'), ('a', 'b', 'c', 'd'))
    assert system.unknowns == ('a', 'b', 'c', 'd')
    assert len(system.equations) == 4
    forms = solution_forms(system, branch_solve(system))
    assert set(forms) == {'scalar', 'unipotent', 'generic'}


def test_rho_part_forms():
    """ρ 부분도 같은 형태"""
    system = restrict_system(build_system('fvb2_local'), ('x', 'y', 'z', 't'))
    forms = solution_forms(system, branch_solve(system))
    assert set(forms) == {'scalar', 'unipotent', 'generic'}


def test_homogeneous_types():
    """FVB_n 2-블록 해는 trivial, γ1, γ2"""
    system = build_system('fvbn_homog_2block')
    solutions = branch_solve(system)
    assert set(solution_forms(system, solutions)) == {'trivial', 'gamma1', 'gamma2'}
    for sol in solutions:
        assert sol.to_json()['provenance'] == list(sol.provenance)


def test_involution_form():
    """블록 형태 판정"""
    assert involution_form([[1, 0], [0, 1]]) == 'scalar'
    assert involution_form([[-1, 0], [0, -1]]) == 'scalar'
    assert involution_form([[-1, 0], [3, 1]]) == 'unipotent'
    assert involution_form([['-d', 'b'], ['(1-d**2)/b', 'd']]) == 'generic'
    assert involution_form([[2, 0], [0, 1]]) == 'unclassified'
    assert homogeneous_type([[1, 0], [0, 1]], [[0, 'y'], ['1/y', 0]]) == 'gamma1'
    assert homogeneous_type([[0, 'b'], ['1/b', 0]], [[0, 'y'], ['1/y', 0]]) == 'gamma2'


def test_match_involution_form():
    """F_p 행렬의 형태와 매개변수"""
    assert match_involution_form(np.array([[0, 1], [1, 0]]), 3) == ('generic', 1, {'b': 1, 'd': 0})
    assert match_involution_form(np.array([[2, 0], [1, 1]]), 3) == ('unipotent', 2, {'c': 2})
    assert match_involution_form(np.array([[1, 1], [0, 1]]), 3) is None


@pytest.mark.parametrize('p, expected', [(3, 14), (5, 32), (7, 58)])
def test_involution_census(p, expected):
    """2×2 대합 개수 p² + p + 2, 모두 세 형태로 설명됨"""
    report = census_involutions_2x2(p)
    assert report.total_candidates == p ** 4
    assert report.solutions == expected
    assert report.unmatched == []
    assert report.conserved
    assert report.matched == {'scalar': 2, 'unipotent': 2 * p, 'generic': p * (p - 1)}


def test_involution_census_char_two():
    """p = 2 는 부호 구분이 사라짐"""
    report = census_involutions_2x2(2)
    assert report.conserved
    assert any('char 2' in note for note in report.notes)


def test_block_census_p3():
    """p=3, 블록 2, n=4 생존 쌍은 trivial, γ1, γ2 특수화"""
    report = census_fvb_local(3, 2, 4)
    assert report.total_candidates == 3 ** 8
    assert report.solutions == 7
    assert report.matched == {'trivial': 1, 'γ1': 2, 'γ2': 4}
    assert report.unmatched == []
    assert report.conserved
    assert recheck_survivors(report, 5)
    assert 'survivors' not in report.to_dict()


def test_block_census_guards():
    """잘못된 블록 크기, n"""
    with pytest.raises(CensusGuardExceeded):
        census_fvb_local(3, 4, 4)
    with pytest.raises(CensusGuardExceeded):
        census_fvb_local(3, 2, 1)
