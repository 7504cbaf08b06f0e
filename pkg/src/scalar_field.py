"""
정확 산술 스칼라 모듈
유리수, 매개변수 알파벳 위의 유리함수, 소수체 F_p 원소
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import GF, QQ, Symbol, isprime, sympify
from sympy.polys.domains.domain import Domain
from sympy.polys.fields import FracElement
from sympy.polys.polyerrors import CoercionFailed

logger = logging.getLogger(__name__)

# 기본 매개변수 알파벳
PARAM_ALPHABET: Tuple[str, ...] = ('a', 'b', 'c', 'd', 'x', 'y', 'z', 't')

# 전수 열거 상한 (p^arity)
ENUMERATION_GUARD = 10 ** 8

ParamName = str
RatFunc = FracElement
Rational = type(QQ.one)


class ScalarFieldError(ValueError):
    """스칼라 연산 오류의 기본 클래스"""


class MissingParameter(ScalarFieldError):
    """특수화 바인딩에 매개변수 값이 없음"""


class DenominatorVanishes(ScalarFieldError):
    """특수화 시 분모가 0이 됨"""


class EnumerationGuardExceeded(ScalarFieldError):
    """전수 열거 크기가 상한을 넘음"""


class ParamAlphabet:
    """매개변수 이름 집합과 그 위의 유리함수체"""

    def __init__(self, names: Sequence[str] = PARAM_ALPHABET):
        """
        Args:
            names: 매개변수 이름 목록 (순서가 변수 순서가 됨)
        """
        if len(set(names)) != len(names):
            raise ScalarFieldError(f"매개변수 이름이 중복되었습니다: {list(names)}")
        self.names: Tuple[str, ...] = tuple(names)
        self.symbols: Tuple[Symbol, ...] = tuple(Symbol(n) for n in self.names)
        self.field = QQ.frac_field(*self.symbols)

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __eq__(self, other) -> bool:
        return isinstance(other, ParamAlphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"ParamAlphabet({', '.join(self.names)})"

    def param(self, name: str) -> RatFunc:
        """이름에 해당하는 생성원 유리함수"""
        try:
            return self.field.gens[self.names.index(name)]
        except ValueError:
            raise ScalarFieldError(f"알파벳에 없는 매개변수: {name}") from None

    def extend(self, *names: str) -> 'ParamAlphabet':
        """새 이름을 덧붙인 알파벳"""
        return ParamAlphabet(self.names + tuple(n for n in names if n not in self.names))

    def fresh(self, stem: str = 'u') -> Tuple[str, 'ParamAlphabet']:
        """사용되지 않은 새 이름과 확장된 알파벳"""
        for k in itertools.count(1):
            name = f"{stem}{k}"
            if name not in self.names:
                return name, self.extend(name)
        raise AssertionError("unreachable")

    def convert(self, value) -> RatFunc:
        """정수, 유리수, 다른 알파벳의 유리함수를 이 체로 변환"""
        if isinstance(value, FracElement) and value.field != self.field.field:
            if not set(value.field.symbols) <= set(self.symbols):
                raise ScalarFieldError(f"알파벳 밖의 매개변수를 포함한 식입니다: {value}")
            return value.set_field(self.field.field)
        return self.field.convert(value)


DEFAULT_ALPHABET = ParamAlphabet()


# ---------------------------------------------------------------------------
# 유리수
# ---------------------------------------------------------------------------

def parse_rational(text) -> Rational:
    """'p/q' 또는 정수 문자열을 유리수로 변환"""
    if isinstance(text, int):
        return QQ(text)
    if isinstance(text, Rational):
        return text
    raw = str(text).strip()
    num, _, den = raw.partition('/')
    try:
        num_value, den_value = int(num), int(den or 1)
    except ValueError:
        raise ScalarFieldError(f"유리수 형식이 아닙니다: {raw!r}") from None
    if den_value == 0:
        raise DenominatorVanishes(f"분모가 0인 유리수: {raw}")
    return QQ(num_value, den_value)


def format_rational(value) -> str:
    """유리수를 'p/q' 문자열로 (q=1이면 생략)"""
    value = QQ.convert(value)
    num, den = QQ.numer(value), QQ.denom(value)
    return f"{num}" if den == 1 else f"{num}/{den}"


def random_rational(rng: np.random.Generator, height: int = 6, den_height: int = 3) -> Rational:
    """작은 높이의 무작위 유리수"""
    num = int(rng.integers(-height, height + 1))
    den = int(rng.integers(1, den_height + 1))
    return QQ(num, den)


# ---------------------------------------------------------------------------
# 유리함수
# ---------------------------------------------------------------------------

def ratfunc(text, alphabet: ParamAlphabet = DEFAULT_ALPHABET) -> RatFunc:
    """문자열 식 또는 수를 유리함수로 변환

    Args:
        text: '(1-d**2)/b' 같은 식, 정수, 유리수 또는 유리함수
        alphabet: 대상 알파벳

    Returns:
        정규형 유리함수
    """
    if isinstance(text, FracElement):
        return alphabet.convert(text)
    if isinstance(text, (int, Rational)):
        return alphabet.field.convert(text)
    local_names = {name: sym for name, sym in zip(alphabet.names, alphabet.symbols)}
    try:
        expr = sympify(str(text).replace('^', '**'), locals=local_names)
        return alphabet.field.from_sympy(expr)
    except (CoercionFailed, SyntaxError, TypeError) as e:
        raise ScalarFieldError(f"유리함수로 해석할 수 없습니다: {text!r} ({e})") from None
    except ZeroDivisionError:
        raise DenominatorVanishes(f"0으로 나누는 식입니다: {text!r}") from None


def format_ratfunc(value: RatFunc) -> str:
    """JSON에 쓰이는 정규 문자열 표현"""
    return str(value.as_expr())


def rf_arith(lhs: RatFunc, rhs: RatFunc, operator: str) -> RatFunc:
    """유리함수 사칙연산 (add, sub, mul, div)"""
    if operator == 'add':
        return lhs + rhs
    if operator == 'sub':
        return lhs - rhs
    if operator == 'mul':
        return lhs * rhs
    if operator == 'div':
        if not rhs:
            raise ZeroDivisionError("영 유리함수로 나눌 수 없습니다")
        return lhs / rhs
    raise ScalarFieldError(f"지원하지 않는 연산자: {operator}")


def is_identically_zero(expr: RatFunc) -> bool:
    """정규형 분자가 영 다항식인지"""
    return not expr.numer


def free_params(expr: RatFunc) -> Tuple[str, ...]:
    """식에 실제로 나타나는 매개변수 이름 (알파벳 순서)"""
    symbols = expr.field.symbols
    used = set()
    for poly in (expr.numer, expr.denom):
        for monom in poly.monoms():
            used.update(i for i, e in enumerate(monom) if e)
    return tuple(str(symbols[i]) for i in sorted(used))


def rf_substitute(expr: RatFunc, mapping: Mapping[str, RatFunc]) -> RatFunc:
    """매개변수를 유리함수로 부분 치환"""
    if not mapping:
        return expr
    field = expr.field
    values = []
    for sym, gen in zip(field.symbols, field.gens):
        values.append(mapping.get(str(sym), gen))
    numer = _evaluate_poly(expr.numer, values, field.to_domain())
    denom = _evaluate_poly(expr.denom, values, field.to_domain())
    if not denom:
        raise DenominatorVanishes(f"치환 후 분모가 0입니다: {format_ratfunc(expr)}")
    return numer / denom


# ---------------------------------------------------------------------------
# 소수체
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def prime_field(p: int) -> Domain:
    """F_p 도메인 (대표원 [0, p))"""
    if not isprime(p):
        raise ScalarFieldError(f"소수가 아닙니다: {p}")
    return GF(p, symmetric=False)


def _check_guard(p: int, arity: int):
    prime_field(p)
    if arity < 0:
        raise ScalarFieldError(f"arity는 0 이상이어야 합니다: {arity}")
    if p ** arity > ENUMERATION_GUARD:
        raise EnumerationGuardExceeded(
            f"열거 크기 {p}^{arity}가 상한 {ENUMERATION_GUARD:,}을 넘습니다"
        )


def fp_enumerate(p: int, arity: int) -> Iterator[tuple]:
    """F_p^arity의 모든 튜플을 사전식 순서로 생성"""
    _check_guard(p, arity)
    field = prime_field(p)
    elems = [field(v) for v in range(p)]
    return itertools.product(elems, repeat=arity)


def fp_enumerate_array(p: int, arity: int) -> np.ndarray:
    """fp_enumerate와 같은 순서의 (p^arity, arity) 정수 배열"""
    _check_guard(p, arity)
    if arity == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.indices((p,) * arity, dtype=np.int64)
    return grid.reshape(arity, -1).T


def to_fp(value, p: int):
    """유리수를 F_p로 환원 (분모가 p의 배수이면 오류)"""
    field = prime_field(p)
    value = QQ.convert(value)
    num, den = int(QQ.numer(value)), int(QQ.denom(value))
    if den % p == 0:
        raise DenominatorVanishes(f"{format_rational(value)}의 분모가 mod {p}에서 0입니다")
    return field(num) / field(den)


# ---------------------------------------------------------------------------
# 바인딩과 특수화
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamBinding:
    """매개변수 이름 → 값 (유리수, 또는 modulus가 있으면 F_p 원소)"""

    assignments: Tuple[Tuple[str, object], ...]
    modulus: Optional[int] = None

    @classmethod
    def of(cls, values: Mapping[str, object], modulus: Optional[int] = None) -> 'ParamBinding':
        """딕셔너리에서 바인딩 생성 (값은 정규화됨)"""
        items = []
        for name, value in sorted(values.items()):
            if modulus is None:
                items.append((name, parse_rational(value) if isinstance(value, str) else QQ.convert(value)))
            else:
                field = prime_field(modulus)
                items.append((name, to_fp(value, modulus) if not isinstance(value, type(field.one)) else value))
        return cls(tuple(items), modulus)

    @classmethod
    def parse(cls, text: str, modulus: Optional[int] = None) -> 'ParamBinding':
        """'b=2/1,y=3' 형식 파싱"""
        values: Dict[str, object] = {}
        for part in filter(None, (p.strip() for p in (text or '').split(','))):
            if '=' not in part:
                raise ScalarFieldError(f"바인딩 형식 오류 (k=v 필요): {part!r}")
            key, raw = (s.strip() for s in part.split('=', 1))
            if not key:
                raise ScalarFieldError(f"바인딩 이름이 비어 있습니다: {part!r}")
            values[key] = parse_rational(raw)
        return cls.of(values, modulus)

    def to_text(self) -> str:
        """'b=2,y=3' 형식 문자열"""
        parts = []
        for name, value in self.assignments:
            shown = int(value) if self.modulus is not None else format_rational(value)
            parts.append(f"{name}={shown}")
        return ','.join(parts)

    def as_dict(self) -> Dict[str, object]:
        return dict(self.assignments)

    def __contains__(self, name: str) -> bool:
        return any(k == name for k, _ in self.assignments)

    def get(self, name: str):
        for k, v in self.assignments:
            if k == name:
                return v
        return None

    def merged(self, other: Mapping[str, object]) -> 'ParamBinding':
        """다른 값을 덮어쓴 새 바인딩"""
        values = self.as_dict()
        values.update(other)
        return ParamBinding.of(values, self.modulus)

    @property
    def domain(self) -> Domain:
        return QQ if self.modulus is None else prime_field(self.modulus)


def _convert_coeff(coeff, domain: Domain):
    if domain == QQ or not domain.is_FiniteField:
        return domain.convert(coeff)
    return to_fp(coeff, domain.mod)


def _evaluate_poly(poly, values: Sequence, domain: Domain):
    """다항식의 각 항에 값을 대입해 도메인 원소로 합산"""
    total = domain.zero
    for monom, coeff in poly.iterterms():
        term = _convert_coeff(coeff, domain)
        for value, exp in zip(values, monom):
            if exp:
                term = term * value ** exp
        total = total + term
    return total


def specialize(expr: RatFunc, binding: ParamBinding):
    """유리함수에 바인딩 값을 대입해 유리수(또는 F_p 원소)로 평가

    Raises:
        MissingParameter: 식에 쓰인 매개변수의 값이 없을 때
        DenominatorVanishes: 분모가 0이 될 때
    """
    domain = binding.domain
    needed = free_params(expr)
    missing = [name for name in needed if name not in binding]
    if missing:
        raise MissingParameter(f"바인딩에 없는 매개변수: {missing} ({format_ratfunc(expr)})")
    lookup = binding.as_dict()
    values = [lookup.get(str(sym), domain.zero) for sym in expr.field.symbols]
    try:
        numer = _evaluate_poly(expr.numer, values, domain)
        denom = _evaluate_poly(expr.denom, values, domain)
    except DenominatorVanishes:
        raise DenominatorVanishes(
            f"계수 분모가 mod {binding.modulus}에서 0입니다: {format_ratfunc(expr)}"
        ) from None
    if not denom:
        raise DenominatorVanishes(
            f"분모가 0입니다: {format_ratfunc(expr)} at {binding.to_text()}"
        )
    return numer / denom


def format_scalar(value, domain: Domain) -> str:
    """도메인에 맞는 스칼라 문자열"""
    if domain == QQ:
        return format_rational(value)
    if domain.is_FiniteField:
        return str(int(value))
    return format_ratfunc(value)
