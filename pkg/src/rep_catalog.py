"""
표현 카탈로그 모듈
λ, γ, δ 족과 꼬임군 기준 표현(Burau, F-표현, β₁..β₃)의 블록,
국소 표현 조립, 단어 평가, 관계식 검증
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from braid_groups import (
    Generator, GeneratorKind, GroupKind, Presentation, Word, presentation,
)
from linalg import (
    Matrix, embed_block, identity, is_identity, mat_mul, matrix, matrix_to_json,
    specialize_matrix,
)
from report import CheckStatus, VerdictReport
from scalar_field import (
    DEFAULT_ALPHABET, ParamBinding, RatFunc, ScalarFieldError, format_ratfunc,
    format_scalar, free_params, is_identically_zero, ratfunc, rf_substitute, specialize,
)

logger = logging.getLogger(__name__)


class CatalogError(ValueError):
    """알 수 없는 족, 맞지 않는 n 또는 블록 크기"""


class ConstraintViolated(ScalarFieldError):
    """바인딩이 족의 0 아님 조건을 깨뜨림"""


class FamilyId(str, Enum):
    """표현 족 태그"""
    L1 = 'l1'
    L2 = 'l2'
    L3 = 'l3'
    L4 = 'l4'
    L5 = 'l5'
    L6 = 'l6'
    L7 = 'l7'
    L8 = 'l8'
    L9 = 'l9'
    L10 = 'l10'
    L11 = 'l11'
    L12 = 'l12'
    G1 = 'g1'
    G2 = 'g2'
    D1 = 'd1'
    D2 = 'd2'
    D3 = 'd3'
    D4 = 'd4'
    D5 = 'd5'
    D6 = 'd6'
    D7 = 'd7'
    D8 = 'd8'
    BURAU = 'burau'
    FREP = 'frep'
    B1 = 'b1'
    B2 = 'b2'
    B3 = 'b3'
    CUSTOM = 'custom'

    @property
    def is_lambda(self) -> bool:
        return self.value.startswith('l')

    @property
    def is_gamma(self) -> bool:
        return self.value.startswith('g')

    @property
    def is_delta(self) -> bool:
        return self.value.startswith('d')

    @property
    def is_braid_only(self) -> bool:
        return self in (FamilyId.BURAU, FamilyId.FREP, FamilyId.B1, FamilyId.B2, FamilyId.B3)

    @property
    def number(self) -> int:
        digits = ''.join(ch for ch in self.value if ch.isdigit())
        return int(digits) if digits else 0

    @property
    def label(self) -> str:
        prefix = {'l': 'λ', 'g': 'γ', 'd': 'δ', 'b': 'β'}
        if self in (FamilyId.BURAU, FamilyId.FREP, FamilyId.CUSTOM):
            return self.value
        return f"{prefix[self.value[0]]}{self.number}"


LAMBDA_FAMILIES = tuple(f for f in FamilyId if f.is_lambda)
GAMMA_FAMILIES = (FamilyId.G1, FamilyId.G2)
DELTA_FAMILIES = tuple(f for f in FamilyId if f.is_delta)
BRAID_FAMILIES = tuple(f for f in FamilyId if f.is_braid_only)
CATALOG_FAMILIES = LAMBDA_FAMILIES + GAMMA_FAMILIES + DELTA_FAMILIES + BRAID_FAMILIES


@dataclass(frozen=True)
class FamilyEntry:
    """족의 블록 원소(문자열), 0 아님 조건, 분류 정리가 가정하는 n"""

    block_size: int
    sigma: Tuple[Tuple[str, ...], ...]
    rho: Optional[Tuple[Tuple[str, ...], ...]]
    constraints: Tuple[str, ...] = ()
    stated_n: int = 2


_I2 = (('1', '0'), ('0', '1'))
_NEG_I2 = (('-1', '0'), ('0', '-1'))
_S_DB = (('-d', 'b'), ('(1-d**2)/b', 'd'))
_R_TY = (('-t', 'y'), ('(1-t**2)/y', 't'))
_U_C = (('1', '0'), ('c', '-1'))
_U_Z = (('1', '0'), ('z', '-1'))
_SWAP_Y = (('0', 'y'), ('1/y', '0'))
_I3 = (('1', '0', '0'), ('0', '1', '0'), ('0', '0', '1'))

# 블록은 인쇄된 그대로 옮긴다
CATALOG: Dict[FamilyId, FamilyEntry] = {
    FamilyId.L1: FamilyEntry(2, _S_DB, _R_TY, ('b', 'y')),
    FamilyId.L2: FamilyEntry(2, _U_C, _R_TY, ('y',)),
    FamilyId.L3: FamilyEntry(2, _I2, _R_TY, ('y',)),
    FamilyId.L4: FamilyEntry(2, _S_DB, _U_Z, ('b',)),
    FamilyId.L5: FamilyEntry(2, _S_DB, _I2, ('b',)),
    FamilyId.L6: FamilyEntry(2, _U_C, _U_Z),
    FamilyId.L7: FamilyEntry(2, _U_C, (('-1', '0'), ('z', '1'))),
    FamilyId.L8: FamilyEntry(2, _I2, _U_Z),
    FamilyId.L9: FamilyEntry(2, _U_C, _I2),
    FamilyId.L10: FamilyEntry(2, _I2, _NEG_I2),
    FamilyId.L11: FamilyEntry(2, _I2, (('-1', '0'), ('z', '1'))),
    FamilyId.L12: FamilyEntry(2, (('-1', '0'), ('c', '1')), _I2),
    FamilyId.G1: FamilyEntry(2, _I2, _SWAP_Y, ('y',), stated_n=3),
    FamilyId.G2: FamilyEntry(2, (('0', 'b'), ('1/b', '0')), _SWAP_Y, ('b', 'y'), stated_n=3),
    FamilyId.D1: FamilyEntry(3, _I3, (('1', 'x', '0'), ('0', '-1', '0'), ('0', '1/x', '1')),
                             ('x',), stated_n=4),
    FamilyId.D2: FamilyEntry(3, _I3, (('1', '0', '0'), ('1/x', '-1', 'x'), ('0', '0', '1')),
                             ('x',), stated_n=4),
    FamilyId.D3: FamilyEntry(3, _I3, (('0', 'x', '0'), ('1/x', '0', '0'), ('0', '0', '1')),
                             ('x',), stated_n=4),
    FamilyId.D4: FamilyEntry(3, _I3, (('1', '0', '0'), ('0', '0', 'x'), ('0', '1/x', '0')),
                             ('x',), stated_n=4),
    FamilyId.D5: FamilyEntry(3, (('0', '1/x', '0'), ('x', '0', '0'), ('0', '0', '1')),
                             (('0', 'y', '0'), ('1/y', '0', '0'), ('0', '1', '1')),
                             ('x', 'y'), stated_n=4),
    FamilyId.D6: FamilyEntry(3, (('1', '0', '0'), ('0', '0', '1/x'), ('0', 'x', '0')),
                             (('1', '0', '0'), ('0', '0', 'y'), ('0', '1/y', '0')),
                             ('x', 'y'), stated_n=4),
    FamilyId.D7: FamilyEntry(3, (('1', 'x', '0'), ('0', '-1', '0'), ('0', '1/x', '1')),
                             (('1', 'x', '0'), ('0', '-1', '0'), ('0', '1/x', '0')),
                             ('x',), stated_n=4),
    FamilyId.D8: FamilyEntry(3, (('1', '0', '0'), ('1/x', '-1', 'x'), ('0', '0', '1')),
                             (('1', '0', '0'), ('1/x', '-1', 'x'), ('0', '0', '1')),
                             ('x',), stated_n=4),
    FamilyId.BURAU: FamilyEntry(2, (('1-t', 't'), ('1', '0')), None, ('t',), stated_n=3),
    FamilyId.FREP: FamilyEntry(3, (('1', '1', '0'), ('0', '-t', '0'), ('0', 't', '1')), None,
                               ('t',), stated_n=3),
    FamilyId.B1: FamilyEntry(2, (('a', '(1-a)/c'), ('c', '0')), None, ('c', 'a-1'), stated_n=3),
    FamilyId.B2: FamilyEntry(2, (('0', '(1-d)/c'), ('c', 'd')), None, ('c', 'd-1'), stated_n=3),
    FamilyId.B3: FamilyEntry(2, (('0', 'b'), ('c', '0')), None, ('b', 'c'), stated_n=3),
}


@dataclass(frozen=True)
class BlockSpec:
    """국소 표현의 블록과 0 아님 조건"""

    block_size: int
    sigma_block: Matrix
    rho_block: Optional[Matrix] = None
    constraints: Tuple[RatFunc, ...] = ()

    def __post_init__(self):
        if self.block_size not in (2, 3):
            raise CatalogError(f"블록 크기는 2 또는 3이어야 합니다: {self.block_size}")
        for block in (self.sigma_block, self.rho_block):
            if block is not None and block.shape != (self.block_size, self.block_size):
                raise CatalogError(f"블록 크기 불일치: {block.shape} (기대 {self.block_size})")


def _block(rows: Sequence[Sequence[str]]) -> Matrix:
    field_ = DEFAULT_ALPHABET.field
    return matrix([[ratfunc(e) for e in row] for row in rows], field_)


def block_spec(family_id: FamilyId) -> BlockSpec:
    """카탈로그 항목을 유리함수 블록으로"""
    family_id = FamilyId(family_id)
    if family_id not in CATALOG:
        raise CatalogError(f"카탈로그에 없는 족: {family_id.value}")
    entry = CATALOG[family_id]
    return BlockSpec(
        entry.block_size,
        _block(entry.sigma),
        _block(entry.rho) if entry.rho is not None else None,
        tuple(ratfunc(c) for c in entry.constraints),
    )


def generic_block_spec() -> BlockSpec:
    """미지수 a,b,c,d / x,y,z,t 로 채운 2×2 블록 (분류 방정식 생성용)"""
    return BlockSpec(2, _block((('a', 'b'), ('c', 'd'))), _block((('x', 'y'), ('z', 't'))))


@dataclass(frozen=True)
class RepInstance:
    """생성원 → 행렬 대응 (binding이 없으면 기호 표현)"""

    family: FamilyId
    presentation: Presentation
    ambient_dim: int
    images: Tuple[Tuple[Generator, Matrix], ...]
    constraints: Tuple[RatFunc, ...] = ()
    binding: Optional[ParamBinding] = None
    block_size: int = 2

    @property
    def n(self) -> int:
        return self.presentation.n

    @property
    def domain(self):
        return self.images[0][1].domain

    @property
    def generators(self) -> Tuple[Generator, ...]:
        return tuple(g for g, _ in self.images)

    def has_image(self, g: Generator) -> bool:
        return any(h == g for h, _ in self.images)

    def image(self, g: Generator) -> Matrix:
        for h, M in self.images:
            if h == g:
                return M
        raise CatalogError(f"{self.family.label}에 {g}의 상이 없습니다")

    def matrices(self) -> List[Matrix]:
        return [M for _, M in self.images]

    def parameters(self) -> Tuple[str, ...]:
        """기호 원소에 나타나는 매개변수"""
        if self.binding is not None:
            return ()
        names = set()
        for M in self.matrices():
            for e in M.to_dok().values():
                names.update(free_params(e))
        for c in self.constraints:
            names.update(free_params(c))
        return tuple(n for n in DEFAULT_ALPHABET.names if n in names) + \
            tuple(sorted(n for n in names if n not in DEFAULT_ALPHABET.names))

    def check_binding(self, binding: ParamBinding):
        """0 아님 조건 확인"""
        for c in self.constraints:
            if not specialize(c, binding):
                raise ConstraintViolated(
                    f"{self.family.label}: 조건 {format_ratfunc(c)} ≠ 0 이 {binding.to_text()}에서 깨집니다"
                )

    def specialize(self, binding: ParamBinding) -> 'RepInstance':
        """바인딩으로 특수화한 표현 (유리수 또는 F_p)"""
        if self.binding is not None:
            raise CatalogError("이미 특수화된 표현입니다")
        self.check_binding(binding)
        images = tuple((g, specialize_matrix(M, binding)) for g, M in self.images)
        return RepInstance(self.family, self.presentation, self.ambient_dim, images,
                           (), binding, self.block_size)

    def substitute(self, mapping: Dict[str, RatFunc]) -> 'RepInstance':
        """매개변수 일부를 유리함수로 치환한 기호 표현"""
        images = tuple(
            (g, matrix([[rf_substitute(e, mapping) for e in row] for row in M.to_list()], M.domain))
            for g, M in self.images
        )
        constraints = tuple(rf_substitute(c, mapping) for c in self.constraints)
        return RepInstance(self.family, self.presentation, self.ambient_dim, images,
                           constraints, None, self.block_size)


def ambient_dim(n: int, block_size: int) -> int:
    """m = n + block_size − 2"""
    return n + block_size - 2


def assemble_local(n: int, spec: BlockSpec, family_id: FamilyId = FamilyId.CUSTOM,
                   group_kind: Optional[GroupKind] = None) -> RepInstance:
    """동차 국소 표현 조립: i번째 생성원 ↦ I_{i−1} ⊕ block ⊕ I

    Args:
        n: 가닥 수
        spec: 블록 명세
        family_id: 족 태그
        group_kind: 생략하면 ρ 블록 유무로 FVB 또는 B

    Returns:
        기호 RepInstance
    """
    if n < 2:
        raise CatalogError(f"n은 2 이상이어야 합니다: {n}")
    if group_kind is None:
        group_kind = GroupKind.FVB if spec.rho_block is not None else GroupKind.B
    if group_kind != GroupKind.B and spec.rho_block is None:
        raise CatalogError(f"{group_kind.value} 표현에는 ρ 블록이 필요합니다")
    m = ambient_dim(n, spec.block_size)
    images = [(Generator.sigma(i), embed_block(spec.sigma_block, i - 1, m)) for i in range(1, n)]
    if group_kind != GroupKind.B:
        images += [(Generator.rho(i), embed_block(spec.rho_block, i - 1, m)) for i in range(1, n)]
    return RepInstance(family_id, presentation(group_kind, n), m, tuple(images),
                       spec.constraints, None, spec.block_size)


def family(family_id: FamilyId, n: int) -> RepInstance:
    """카탈로그 족의 기호 표현"""
    try:
        family_id = FamilyId(family_id)
    except ValueError:
        raise CatalogError(f"알 수 없는 족 태그: {family_id!r}") from None
    if family_id == FamilyId.CUSTOM:
        raise CatalogError("custom 족은 assemble_local로 직접 조립하세요")
    if family_id.is_lambda and n != 2:
        raise CatalogError(f"{family_id.label}는 n=2 전용입니다 (요청 n={n})")
    if n < 2:
        raise CatalogError(f"n은 2 이상이어야 합니다: {n}")
    rep = assemble_local(n, block_spec(family_id), family_id)
    logger.debug(f"{family_id.label} (n={n}) 조립: {rep.ambient_dim}×{rep.ambient_dim}")
    return rep


def family_parameters(family_id: FamilyId) -> Tuple[str, ...]:
    spec = block_spec(family_id)
    names = set()
    for block in (spec.sigma_block, spec.rho_block):
        if block is not None:
            for e in block.to_dok().values():
                names.update(free_params(e))
    return tuple(n for n in DEFAULT_ALPHABET.names if n in names)


def family_constraints(family_id: FamilyId) -> Tuple[str, ...]:
    return CATALOG[FamilyId(family_id)].constraints


def eval_word(rep: RepInstance, w: Word) -> Matrix:
    """단어의 상 (문자 순서대로 곱, 빈 단어는 I)"""
    result = identity(rep.ambient_dim, rep.domain)
    for g in w.letters:
        if not rep.has_image(g):
            raise CatalogError(f"단어 {w}의 {g}가 {rep.family.label}의 알파벳에 없습니다")
        result = mat_mul(result, rep.image(g))
    return result


def _first_nonzero(M: Matrix) -> Optional[Tuple[int, int, object]]:
    items = sorted(M.to_dok().items())
    for (i, j), e in items:
        if e:
            return i, j, e
    return None


def verify_relations(rep: RepInstance, target: Optional[Presentation] = None,
                     failure_status: CheckStatus = CheckStatus.FAIL) -> VerdictReport:
    """관계식 u = v 마다 eval(u) − eval(v)가 영행렬인지 검사

    Args:
        rep: 검사할 표현
        target: 다른 표현 (생략 시 rep 자신의 표현)
        failure_status: 실패 기록에 쓸 상태

    Returns:
        관계식별 기록을 담은 VerdictReport (상을 정의할 수 없는 관계식은 skipped에 기록)
    """
    target = target or rep.presentation
    report = VerdictReport(f"relations {rep.family.label} against {target.group_kind.value}_{target.n}")
    skipped = []
    prefix = f"{rep.family.value}/n{target.n}"
    for relation in target.relations:
        letters = relation.lhs.letters + relation.rhs.letters
        if not all(rep.has_image(g) for g in letters):
            skipped.append(relation.label)
            continue
        diff = eval_word(rep, relation.lhs) - eval_word(rep, relation.rhs)
        offending = _first_nonzero(diff)
        if offending is None:
            report.add(f"{prefix}/{relation.label}", CheckStatus.PASS)
        else:
            i, j, value = offending
            report.add(
                f"{prefix}/{relation.label}", failure_status,
                relation=f"{relation.lhs} = {relation.rhs}",
                entry=[i, j],
                difference=format_scalar(value, diff.domain),
            )
    if skipped:
        report.sections[f"{prefix}/skipped"] = skipped
    logger.info(
        f"{rep.family.label} 관계식 검증 (n={target.n}): "
        f"{report.summary()['pass']}개 통과, {len(skipped)}개 건너뜀"
    )
    return report


def flatness_check(rep: RepInstance) -> bool:
    """σ₁² = I 가 항등식이 아니면 True (꼬임군 표현은 평탄하지 않음)"""
    sigma = rep.image(Generator.sigma(1))
    return not is_identity(mat_mul(sigma, sigma))


def check_determinants(rep: RepInstance) -> List[Tuple[str, bool]]:
    """각 상의 행렬식이 0이 아니고 그 인수가 조건 목록에 포함되는지"""
    allowed = set()
    for c in rep.constraints:
        for poly in (c.numer, c.denom):
            for factor, _ in poly.factor_list()[1]:
                allowed.add(factor.monic())
    results = []
    for g, M in rep.images:
        det = M.det()
        ok = not is_identically_zero(det)
        if ok:
            for poly in (det.numer, det.denom):
                for factor, _ in poly.factor_list()[1]:
                    if factor.monic() not in allowed:
                        ok = False
        results.append((str(g), ok))
    return results


def local_blocks(rep: RepInstance, kind: GeneratorKind) -> List[Matrix]:
    """위치별 블록과, 블록 밖이 항등인지 확인한 결과"""
    k = rep.block_size
    blocks = []
    for i in range(1, rep.n):
        g = Generator(kind, i)
        M = rep.image(g)
        rows = list(range(i - 1, i - 1 + k))
        block = M.extract(rows, rows)
        if not (M - embed_block(block, i - 1, rep.ambient_dim)).is_zero_matrix:
            raise CatalogError(f"{g}의 상이 국소 형태가 아닙니다")
        blocks.append(block)
    return blocks


def is_homogeneous(rep: RepInstance) -> bool:
    """모든 위치의 블록이 같은지"""
    kinds = [GeneratorKind.SIGMA]
    if rep.presentation.group_kind != GroupKind.B:
        kinds.append(GeneratorKind.RHO)
    for kind in kinds:
        blocks = local_blocks(rep, kind)
        if any(not (b - blocks[0]).is_zero_matrix for b in blocks[1:]):
            return False
    return True


def catalog_dump(ids: Sequence[FamilyId], n: int) -> List[dict]:
    """카탈로그 JSON (태그, n, 블록 원소 문자열, 조건)"""
    dump = []
    for family_id in ids:
        family_id = FamilyId(family_id)
        spec = block_spec(family_id)
        use_n = 2 if family_id.is_lambda else n
        dump.append({
            'family': family_id.value,
            'label': family_id.label,
            'n': use_n,
            'ambient_dim': ambient_dim(use_n, spec.block_size),
            'block_size': spec.block_size,
            'sigma_block': matrix_to_json(spec.sigma_block),
            'rho_block': matrix_to_json(spec.rho_block) if spec.rho_block is not None else None,
            'constraints': [format_ratfunc(c) for c in spec.constraints],
        })
    return dump
