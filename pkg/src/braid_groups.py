"""
꼬임군 표현 모듈
B_n, VB_n, FVB_n의 생성원과 관계식, 단어의 자유 간약, FVB_2 정규형
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

logger = logging.getLogger(__name__)


class PresentationError(ValueError):
    """잘못된 생성원, 단어 또는 표현 요청"""


class GroupKind(str, Enum):
    """꼬임군 종류"""
    B = 'B'
    VB = 'VB'
    FVB = 'FVB'


class GeneratorKind(str, Enum):
    """생성원 종류 (σ: 고전, ρ: 가상)"""
    SIGMA = 's'
    RHO = 'r'


@dataclass(frozen=True)
class Generator:
    """σ_i 또는 ρ_i"""

    kind: GeneratorKind
    index: int

    @classmethod
    def sigma(cls, i: int) -> 'Generator':
        return cls(GeneratorKind.SIGMA, i)

    @classmethod
    def rho(cls, i: int) -> 'Generator':
        return cls(GeneratorKind.RHO, i)

    @classmethod
    def parse(cls, token: str) -> 'Generator':
        """'s1', 'r2' 형식"""
        token = token.strip()
        if len(token) < 2 or token[0] not in ('s', 'r') or not token[1:].isdigit():
            raise PresentationError(f"생성원 형식 오류: {token!r}")
        index = int(token[1:])
        if index < 1:
            raise PresentationError(f"생성원 번호는 1 이상이어야 합니다: {token!r}")
        return cls(GeneratorKind(token[0]), index)

    @property
    def sort_key(self) -> Tuple[int, int]:
        # σ가 ρ보다 앞
        return (0 if self.kind == GeneratorKind.SIGMA else 1, self.index)

    def check_range(self, n: int):
        if not 1 <= self.index <= n - 1:
            raise PresentationError(f"{self}는 n={n}의 범위 [1, {n - 1}] 밖입니다")

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"


@dataclass(frozen=True)
class Word:
    """생성원 문자열 (빈 단어는 항등원)

    관계식의 양변은 간약되지 않은 단어일 수 있고, reduce_word가 간약형을 만든다.
    """

    letters: Tuple[Generator, ...] = ()

    @classmethod
    def parse(cls, text: str) -> 'Word':
        """'s1 r1 s1' 형식 (빈 문자열 또는 'e'는 빈 단어)"""
        tokens = [t for t in text.replace(',', ' ').split() if t != 'e']
        return cls(tuple(Generator.parse(t) for t in tokens))

    @classmethod
    def of(cls, *letters: Generator) -> 'Word':
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: 'Word') -> 'Word':
        return Word(self.letters + other.letters)

    def power(self, k: int) -> 'Word':
        if k < 0:
            return self.inverse().power(-k)
        return Word(self.letters * k)

    def inverse(self) -> 'Word':
        """모든 생성원이 대합이므로 역순이 역원"""
        return Word(tuple(reversed(self.letters)))

    @property
    def is_reduced(self) -> bool:
        return all(a != b for a, b in zip(self.letters, self.letters[1:]))

    @property
    def sort_key(self) -> tuple:
        return (len(self.letters), tuple(g.sort_key for g in self.letters))

    def max_index(self) -> int:
        return max((g.index for g in self.letters), default=0)

    def __str__(self) -> str:
        return ' '.join(str(g) for g in self.letters) if self.letters else 'e'


@dataclass(frozen=True)
class Relation:
    """u = v 형태의 관계식과 출처 (식 번호, 첨자)"""

    equation: int
    indices: Tuple[int, ...]
    lhs: Word
    rhs: Word

    @property
    def label(self) -> str:
        return f"eq{self.equation}[{','.join(str(i) for i in self.indices)}]"

    @property
    def alphabet(self) -> set:
        return {g.kind for g in self.lhs.letters + self.rhs.letters}

    def to_json(self) -> dict:
        return {'id': self.label, 'lhs': str(self.lhs), 'rhs': str(self.rhs)}


@dataclass(frozen=True)
class Presentation:
    """생성원과 관계식 목록"""

    n: int
    group_kind: GroupKind
    relations: Tuple[Relation, ...]

    @property
    def generators(self) -> Tuple[Generator, ...]:
        sigmas = tuple(Generator.sigma(i) for i in range(1, self.n))
        if self.group_kind == GroupKind.B:
            return sigmas
        return sigmas + tuple(Generator.rho(i) for i in range(1, self.n))

    def to_json(self) -> dict:
        return {
            'n': self.n,
            'group': self.group_kind.value,
            'relations': [r.to_json() for r in self.relations],
        }


def _s(i: int) -> Generator:
    return Generator.sigma(i)


def _r(i: int) -> Generator:
    return Generator.rho(i)


def _braid_relations(n: int, make) -> Tuple[list, list]:
    """꼬임 관계 (식 1/3)와 원거리 교환 관계 (식 2/4)"""
    braid = [
        (i, Word.of(make(i), make(i + 1), make(i)), Word.of(make(i + 1), make(i), make(i + 1)))
        for i in range(1, n - 1)
    ]
    commute = [
        ((i, j), Word.of(make(i), make(j)), Word.of(make(j), make(i)))
        for i in range(1, n) for j in range(i + 2, n)
    ]
    return braid, commute


def _relations(n: int, kind: GroupKind) -> List[Relation]:
    if n < 2:
        raise PresentationError(f"n은 2 이상이어야 합니다: {n}")
    relations: List[Relation] = []
    sigma_braid, sigma_commute = _braid_relations(n, _s)
    relations += [Relation(1, (i,), u, v) for i, u, v in sigma_braid]
    relations += [Relation(2, ij, u, v) for ij, u, v in sigma_commute]
    if kind == GroupKind.B:
        return relations

    rho_braid, rho_commute = _braid_relations(n, _r)
    relations += [Relation(3, (i,), u, v) for i, u, v in rho_braid]
    relations += [Relation(4, ij, u, v) for ij, u, v in rho_commute]
    relations += [Relation(5, (i,), Word.of(_r(i), _r(i)), Word()) for i in range(1, n)]
    # 식 6은 순서쌍 (i, j), |i−j| ≥ 2
    relations += [
        Relation(6, (i, j), Word.of(_s(i), _r(j)), Word.of(_r(j), _s(i)))
        for i in range(1, n) for j in range(1, n) if abs(i - j) >= 2
    ]
    relations += [
        Relation(7, (i,), Word.of(_r(i), _r(i + 1), _s(i)), Word.of(_s(i + 1), _r(i), _r(i + 1)))
        for i in range(1, n - 1)
    ]
    if kind == GroupKind.VB:
        return relations

    relations += [Relation(8, (i,), Word.of(_s(i), _s(i)), Word()) for i in range(1, n)]
    return relations


def presentation(kind: GroupKind, n: int) -> Presentation:
    """종류별 표현 (관계식은 식 번호, 첨자 사전식 순)"""
    kind = GroupKind(kind)
    relations = _relations(n, kind)
    logger.debug(f"{kind.value}_{n} 표현: 관계식 {len(relations)}개")
    return Presentation(n, kind, tuple(relations))


def braid_presentation(n: int) -> Presentation:
    return presentation(GroupKind.B, n)


def virtual_presentation(n: int) -> Presentation:
    return presentation(GroupKind.VB, n)


def fvb_presentation(n: int) -> Presentation:
    """FVB_n: 식 (1)–(8)"""
    return presentation(GroupKind.FVB, n)


# ---------------------------------------------------------------------------
# 단어
# ---------------------------------------------------------------------------

def reduce_word(w: Word) -> Word:
    """같은 생성원이 이웃하면 지운다 (스택 기반 자유 간약)"""
    stack: List[Generator] = []
    for g in w.letters:
        if stack and stack[-1] == g:
            stack.pop()
        else:
            stack.append(g)
    return Word(tuple(stack))


def fvb2_enumerate(max_len: int) -> List[Word]:
    """FVB_2의 길이 1..max_len 간약 단어 (길이마다 σ₁ 시작, ρ₁ 시작 순)"""
    if max_len < 0:
        raise PresentationError(f"max_len은 0 이상이어야 합니다: {max_len}")
    words = []
    for length in range(1, max_len + 1):
        for first, second in ((_s(1), _r(1)), (_r(1), _s(1))):
            words.append(Word(tuple(first if k % 2 == 0 else second for k in range(length))))
    return words


@dataclass(frozen=True)
class FVB2Shape:
    """w1=(σ₁ρ₁)^k, w2=(ρ₁σ₁)^k, w3=σ₁(ρ₁σ₁)^k, w4=(ρ₁σ₁)^kρ₁"""

    tag: str
    exponent: int


def classify_fvb2_shape(w: Word) -> FVB2Shape:
    """FVB_2 간약 단어의 네 가지 형태 중 하나와 지수"""
    allowed = {_s(1), _r(1)}
    if not w.letters:
        raise PresentationError("빈 단어에는 형태가 없습니다")
    if any(g not in allowed for g in w.letters):
        raise PresentationError(f"FVB_2 알파벳이 아닌 단어: {w}")
    if not w.is_reduced:
        raise PresentationError(f"간약되지 않은 단어: {w}")
    length = len(w)
    starts_sigma = w.letters[0] == _s(1)
    if length % 2 == 0:
        return FVB2Shape('w1' if starts_sigma else 'w2', length // 2)
    return FVB2Shape('w3' if starts_sigma else 'w4', length // 2)


def shape_word(tag: str, exponent: int) -> Word:
    """형태와 지수로 단어 생성"""
    sr = Word.of(_s(1), _r(1))
    rs = Word.of(_r(1), _s(1))
    if tag == 'w1':
        return sr.power(exponent)
    if tag == 'w2':
        return rs.power(exponent)
    if tag == 'w3':
        return Word.of(_s(1)) * rs.power(exponent)
    if tag == 'w4':
        return rs.power(exponent) * Word.of(_r(1))
    raise PresentationError(f"알 수 없는 형태: {tag}")


# ---------------------------------------------------------------------------
# 비자명성 판별 (n ≥ 3)
# ---------------------------------------------------------------------------

def permutation_image(w: Word, n: int) -> Tuple[int, ...]:
    """FVB_n → S_n (σᵢ, ρᵢ ↦ (i i+1)) 아래의 상, 0-기반 순열"""
    perm = list(range(n))
    for g in w.letters:
        g.check_range(n)
        i = g.index - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return tuple(perm)


def sigma_parity(w: Word) -> int:
    """FVB_n → ℤ/2, σ 문자 개수의 홀짝"""
    return sum(1 for g in w.letters if g.kind == GeneratorKind.SIGMA) % 2


def rho_parity(w: Word) -> int:
    """FVB_n → ℤ/2, ρ 문자 개수의 홀짝"""
    return sum(1 for g in w.letters if g.kind == GeneratorKind.RHO) % 2


def certified_nontrivial(w: Word, n: int) -> bool:
    """몫 사상 중 하나라도 비자명한 상을 주면 w ≠ 1"""
    return (permutation_image(w, n) != tuple(range(n))
            or sigma_parity(w) == 1 or rho_parity(w) == 1)
