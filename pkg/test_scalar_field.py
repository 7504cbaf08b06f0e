#!/usr/bin/env python3
"""
스칼라 모듈 테스트 (유리수, 유리함수, F_p, 특수화)
"""

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

# 현재 디렉토리를 Python 경로에 추가
current_dir = Path(__file__).parent
sys.path.insert(0, str(current_dir))
sys.path.insert(0, str(current_dir / 'src'))

from sympy import QQ

from scalar_field import (
    DEFAULT_ALPHABET, DenominatorVanishes, EnumerationGuardExceeded, MissingParameter,
    ParamAlphabet, ParamBinding, ScalarFieldError, format_rational, format_ratfunc, fp_enumerate,
    fp_enumerate_array, free_params, is_identically_zero, parse_rational, prime_field,
    random_rational, ratfunc, rf_arith, rf_substitute, specialize, to_fp,
)


def _text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_parse_and_format_rational():
    """유리수 파싱과 정규 문자열"""
    assert parse_rational('3/6') == QQ(1, 2)
    assert parse_rational('-4') == QQ(-4)
    assert format_rational(QQ(6, 3)) == '2'
    assert format_rational(QQ(-1, 3)) == '-1/3'


def test_parse_rational_errors():
    """분모 0과 형식 오류"""
    with pytest.raises(DenominatorVanishes):
        parse_rational('1/0')
    with pytest.raises(ScalarFieldError):
        parse_rational('abc')


def test_ratfunc_normal_form():
    """유리함수는 정규형으로 비교됨"""
    assert ratfunc('(1-d**2)/b') == ratfunc('1/b - d**2/b')
    assert is_identically_zero(ratfunc('a - a'))
    assert not is_identically_zero(ratfunc('t'))
    assert format_ratfunc(ratfunc('2*y/2')) == 'y'


def test_free_params_in_alphabet_order():
    """실제로 쓰인 매개변수만, 알파벳 순서로"""
    assert free_params(ratfunc('b*y + 1/t')) == ('b', 'y', 't')
    assert free_params(ratfunc('3')) == ()


def test_rf_arith_and_division_by_zero():
    """사칙연산, 영으로 나누기"""
    b, d = ratfunc('b'), ratfunc('d')
    assert rf_arith(b, d, 'mul') == ratfunc('b*d')
    assert rf_arith(b, b, 'div') == ratfunc('1')
    with pytest.raises(ZeroDivisionError):
        rf_arith(b, ratfunc('0'), 'div')
    with pytest.raises(ScalarFieldError):
        rf_arith(b, d, 'pow')


def test_rf_substitute_partial():
    """부분 치환은 다른 매개변수를 남김"""
    expr = ratfunc('(1-t**2)/y')
    assert rf_substitute(expr, {'t': ratfunc('0')}) == ratfunc('1/y')
    with pytest.raises(DenominatorVanishes):
        rf_substitute(expr, {'y': ratfunc('0')})


def test_specialize_rational():
    """유리수 바인딩으로 평가"""
    value = specialize(ratfunc('(1-d**2)/b'), ParamBinding.parse('b=2,d=3'))
    assert value == QQ(-4)


def test_specialize_errors():
    """빠진 매개변수, 0이 되는 분모"""
    with pytest.raises(MissingParameter):
        specialize(ratfunc('b*y'), ParamBinding.parse('b=1'))
    with pytest.raises(DenominatorVanishes):
        specialize(ratfunc('1/(d-1)'), ParamBinding.parse('d=1'))


def test_specialize_modulo_prime():
    """F_p 바인딩: 계수도 mod p로 환원"""
    value = specialize(ratfunc('(b+1)/2'), ParamBinding.parse('b=3', 5))
    assert int(value) == 2
    with pytest.raises(DenominatorVanishes):
        specialize(ratfunc('b/3'), ParamBinding.parse('b=1', 3))


def test_prime_field_rejects_composite():
    """합성수는 체가 아님"""
    with pytest.raises(ScalarFieldError):
        prime_field(4)
    assert prime_field(7) is prime_field(7)


def test_fp_enumerate_order():
    """배열 열거와 튜플 열거의 순서가 같음"""
    array = fp_enumerate_array(3, 2)
    assert array.shape == (9, 2)
    assert array[:3].tolist() == [[0, 0], [0, 1], [0, 2]]
    tuples = [[int(v) for v in t] for t in fp_enumerate(3, 2)]
    assert tuples == array.tolist()


@pytest.mark.parametrize('p', [2, 3, 5, 7])
def test_fp_division_inverts_multiplication(p):
    """F_p 전체: y ≠ 0 이면 (x*y)/y == x"""
    checked = 0
    for x, y in fp_enumerate(p, 2):
        if not y:
            continue
        assert (x * y) / y == x
        checked += 1
    assert checked == p * (p - 1)


def test_fp_enumerate_guard():
    """열거 크기 상한"""
    with pytest.raises(EnumerationGuardExceeded):
        fp_enumerate(2, 40)
    with pytest.raises(EnumerationGuardExceeded):
        fp_enumerate_array(11, 9)


def test_binding_parse_and_text():
    """바인딩 문자열은 이름 순서로 정규화"""
    binding = ParamBinding.parse('y=3, b=4/2')
    assert binding.to_text() == 'b=2,y=3'
    assert 'y' in binding and 'd' not in binding
    assert binding.merged({'d': 1}).to_text() == 'b=2,d=1,y=3'
    with pytest.raises(ScalarFieldError):
        ParamBinding.parse('b')


def test_alphabet_fresh_and_duplicates():
    """새 이름 생성, 중복 이름 거부"""
    name, extended = DEFAULT_ALPHABET.fresh()
    assert name == 'u1'
    assert 'u1' in extended and 'u1' not in DEFAULT_ALPHABET
    with pytest.raises(ScalarFieldError):
        ParamAlphabet(('a', 'a'))


def test_random_rational_is_seeded():
    """같은 시드는 같은 값"""
    first = [random_rational(np.random.default_rng(7)) for _ in range(3)]
    second = [random_rational(np.random.default_rng(7)) for _ in range(3)]
    assert first == second


@settings(max_examples=60, deadline=None)
@given(b=small_fractions, d=small_fractions, y=small_fractions)
def test_specialize_is_multiplicative(b, d, y):
    """특수화는 곱을 보존"""
    assume(b != 0)
    f = ratfunc('(1-d**2)/b')
    g = ratfunc('d + b*y')
    binding = ParamBinding.parse(f"b={_text(b)},d={_text(d)},y={_text(y)}")
    assert specialize(rf_arith(f, g, 'mul'), binding) == specialize(f, binding) * specialize(g, binding)
    assert specialize(rf_arith(f, g, 'add'), binding) == specialize(f, binding) + specialize(g, binding)


@settings(max_examples=60, deadline=None)
@given(p=st.sampled_from([3, 5, 7]), b=st.integers(-30, 30), d=st.integers(-30, 30))
def test_reduction_commutes_with_specialization(p, b, d):
    """Q에서 평가 후 mod p 환원 = F_p에서 평가"""
    assume(b % p != 0)
    f = ratfunc('(1-d**2)/b')
    over_q = specialize(f, ParamBinding.parse(f"b={b},d={d}"))
    over_fp = specialize(f, ParamBinding.parse(f"b={b},d={d}", p))
    assert to_fp(over_q, p) == over_fp
