#!/usr/bin/env python3
"""
꼬임군 표현(생성원, 관계식, 단어) 테스트
"""

import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# 현재 디렉토리를 Python 경로에 추가
current_dir = Path(__file__).parent
sys.path.insert(0, str(current_dir))
sys.path.insert(0, str(current_dir / 'src'))

from braid_groups import (
    Generator, GeneratorKind, GroupKind, PresentationError, Word, braid_presentation,
    certified_nontrivial, classify_fvb2_shape, fvb2_enumerate, fvb_presentation,
    permutation_image, presentation, reduce_word, shape_word, virtual_presentation,
)


@pytest.mark.parametrize('n, expected', [(2, 2), (3, 7), (4, 16)])
def test_fvb_relation_counts(n, expected):
    """FVB_n 관계식 개수"""
    assert len(fvb_presentation(n).relations) == expected


def test_other_presentations():
    """B_n, VB_n 관계식과 생성원"""
    assert len(braid_presentation(4).relations) == 3
    assert len(virtual_presentation(3).relations) == 5
    assert [str(g) for g in braid_presentation(3).generators] == ['s1', 's2']
    assert [str(g) for g in fvb_presentation(3).generators] == ['s1', 's2', 'r1', 'r2']
    with pytest.raises(PresentationError):
        presentation(GroupKind.FVB, 1)


def test_relation_order_and_labels():
    """식 번호, 첨자 사전식 순서"""
    relations = fvb_presentation(4).relations
    equations = [r.equation for r in relations]
    assert equations == sorted(equations)
    mixed = [r.label for r in relations if r.equation == 6]
    assert mixed == ['eq6[1,3]', 'eq6[3,1]']
    mixed_braid = [r for r in relations if r.equation == 7][0]
    assert str(mixed_braid.lhs) == 'r1 r2 s1'
    assert str(mixed_braid.rhs) == 's2 r1 r2'


def test_generator_parse():
    """생성원 파싱과 범위"""
    assert Generator.parse('r3') == Generator(GeneratorKind.RHO, 3)
    for bad in ('x1', 's0', 's', 'sa'):
        with pytest.raises(PresentationError):
            Generator.parse(bad)
    with pytest.raises(PresentationError):
        Generator.sigma(3).check_range(3)


def test_word_parse_and_inverse():
    """단어 파싱, 역원, 거듭제곱"""
    w = Word.parse('s1 r1 s2')
    assert str(w.inverse()) == 's2 r1 s1'
    assert str(Word.parse('e')) == 'e'
    assert len(Word.parse('s1 r1').power(3)) == 6
    assert str(Word.parse('s1 r1').power(-1)) == 'r1 s1'


def test_reduce_word():
    """인접한 같은 생성원 제거"""
    assert str(reduce_word(Word.parse('s1 r1 r1 s1 s2'))) == 's2'
    assert reduce_word(Word.parse('s1 s1')) == Word()


def test_fvb2_enumeration():
    """길이마다 두 단어, σ₁ 시작이 먼저"""
    words = fvb2_enumerate(3)
    assert [str(w) for w in words] == ['s1', 'r1', 's1 r1', 'r1 s1', 's1 r1 s1', 'r1 s1 r1']
    assert len(fvb2_enumerate(24)) == 48
    assert all(w.is_reduced for w in words)


def test_shapes_round_trip_on_enumeration():
    """열거된 단어는 형태와 지수로 다시 만들어짐"""
    for w in fvb2_enumerate(10):
        shape = classify_fvb2_shape(w)
        assert shape_word(shape.tag, shape.exponent) == w
    with pytest.raises(PresentationError):
        classify_fvb2_shape(Word.parse('s1 s1'))
    with pytest.raises(PresentationError):
        classify_fvb2_shape(Word.parse('s2'))


def test_certified_nontrivial():
    """몫 사상으로 비자명성 확인"""
    assert certified_nontrivial(Word.parse('s1'), 3)
    assert permutation_image(Word.parse('s1 r1'), 3) == (0, 1, 2)
    # s1 r1: 순열 항등, σ·ρ 홀짝 모두 1
    assert certified_nontrivial(Word.parse('s1 r1'), 3)
    assert not certified_nontrivial(Word.parse('s1 r1 s1 r1'), 3)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from(['s1', 's2', 'r1', 'r2']), max_size=12))
def test_reduction_preserves_quotient_images(tokens):
    """간약은 몫 사상의 상을 바꾸지 않음"""
    w = Word.parse(' '.join(tokens))
    reduced = reduce_word(w)
    assert reduced.is_reduced
    assert permutation_image(reduced, 3) == permutation_image(w, 3)
    assert certified_nontrivial(reduced, 3) == certified_nontrivial(w, 3)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from(['s1', 'r1', 's2', 'r2']), max_size=10),
       st.lists(st.sampled_from(['s1', 'r1', 's2', 'r2']), max_size=10))
def test_free_reduction_is_confluent(left, right):
    """부분 간약 순서와 무관하게 같은 간약형"""
    u, v = Word.parse(' '.join(left)), Word.parse(' '.join(right))
    direct = reduce_word(u * v)
    assert reduce_word(reduce_word(u) * reduce_word(v)) == direct
    assert reduce_word(direct) == direct
    assert reduce_word(u * u.inverse()) == Word()
