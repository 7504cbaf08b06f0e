"""
표현 분석 모듈
기약성과 충실성 오라클, 문헌 조건과의 비교
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ, Symbol

from braid_groups import Generator, Word, certified_nontrivial, fvb2_enumerate, shape_word
from classifier import BranchSolution, BranchSolverError, PolySystem, branch_solve, canonical_poly
from linalg import (
    LinalgError, Matrix, Subspace, algebra_closure_dim, common_fixed_space, eigenspace, identity,
    is_identity, mat_equal, matrix, subspace_intersection,
)
from rep_catalog import (
    CatalogError, ConstraintViolated, FamilyId, RepInstance, eval_word, family,
)
from scalar_field import (
    DenominatorVanishes, ParamBinding, random_rational, ratfunc,
)

logger = logging.getLogger(__name__)

# 해석 대상 족 (조건이 진술된 것)
CONDITION_FAMILIES = (FamilyId.L1, FamilyId.L2, FamilyId.L3, FamilyId.L4, FamilyId.L5)

# 가약성 주장이 적용되는 최소 n
REDUCIBILITY_CLAIMS: Dict[FamilyId, int] = {
    FamilyId.G1: 6,
    FamilyId.G2: 3,
    **{f: 10 for f in FamilyId if f.is_delta},
}

MAX_FVB2_LEN = 24
MAX_BFS_LEN = 10
BFS_NODE_GUARD = 200_000
RESAMPLE_LIMIT = 100


class OracleMethod(str, Enum):
    INVARIANT_LINE = 'invariant_line'
    ALGEBRA_CLOSURE = 'algebra_closure'


@dataclass(frozen=True)
class IrreducibilityVerdict:
    """특수화 하나에 대한 기약성 판정"""

    method: OracleMethod
    verdict: str
    binding: ParamBinding
    witness: Optional[Subspace] = None
    closure_dim: Optional[int] = None
    fixed_space: Optional[Subspace] = None

    @property
    def is_irreducible(self) -> bool:
        return self.verdict == 'irreducible'

    def to_dict(self) -> dict:
        result = {
            'method': self.method.value,
            'verdict': self.verdict,
            'binding': self.binding.to_text(),
        }
        if self.witness is not None:
            result['witness'] = self.witness.to_json()
        if self.closure_dim is not None:
            result['closure_dim'] = self.closure_dim
        if self.fixed_space is not None and self.fixed_space.dim:
            result['fixed_vectors'] = self.fixed_space.to_json()
        return result


@dataclass(frozen=True)
class FaithfulnessFinding:
    """핵 탐색 결과"""

    kind: str
    word: Optional[Word] = None
    max_len: Optional[int] = None
    binding: str = ''
    enumerated: int = 0
    uncertified: int = 0

    def to_dict(self) -> dict:
        return {
            'kind': self.kind,
            'word': str(self.word) if self.word is not None else None,
            'max_len': self.max_len,
            'binding': self.binding,
            'enumerated': self.enumerated,
            'uncertified': self.uncertified,
        }


@dataclass
class ComparisonReport:
    """오라클 판정과 진술된 조건의 대조 (agreements + 불일치 수 = sample_count)"""

    family: FamilyId
    sample_count: int
    agreements: int = 0
    disagreements: List[dict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    reading: str = 'all'
    oracle_mismatches: int = 0

    @property
    def conserved(self) -> bool:
        return self.agreements + len(self.disagreements) == self.sample_count

    def to_dict(self) -> dict:
        return {
            'family': self.family.value,
            'mode': 'irreducibility',
            'reading': self.reading,
            'samples': self.sample_count,
            'agreements': self.agreements,
            'disagreements': self.disagreements,
            'oracle_mismatches': self.oracle_mismatches,
            'notes': self.notes,
        }


# ---------------------------------------------------------------------------
# 무작위 바인딩
# ---------------------------------------------------------------------------

def random_binding(rep: RepInstance, rng: np.random.Generator,
                   adjust: Optional[Callable[[Dict[str, object]], Dict[str, object]]] = None) -> ParamBinding:
    """0 아님 조건을 만족하는 무작위 유리수 바인딩 (분모가 0이면 다시 뽑음)

    Args:
        rep: 기호 표현
        rng: numpy 난수 생성기
        adjust: 뽑은 값을 고치는 함수 (예: 조건의 등호 경우 만들기)
    """
    for _ in range(RESAMPLE_LIMIT):
        values = {name: random_rational(rng) for name in rep.parameters()}
        if adjust is not None:
            values = adjust(values)
        binding = ParamBinding.of(values)
        try:
            rep.specialize(binding)
        except (ConstraintViolated, DenominatorVanishes):
            logger.debug(f"바인딩 재추출: {binding.to_text()}")
            continue
        return binding
    raise DenominatorVanishes(f"{RESAMPLE_LIMIT}회 추출에도 유효한 바인딩을 찾지 못했습니다")


# ---------------------------------------------------------------------------
# 기약성
# ---------------------------------------------------------------------------

def common_invariant_line(rep: RepInstance) -> Optional[Subspace]:
    """모든 생성원 상이 보존하는 직선 (없으면 None)

    대합의 불변 직선은 ±1 고유공간 안에 있으므로, 고유공간 교집합을
    생성원마다 나누어 가며 후보를 좁힌다. ±I 인 상은 후보를 바꾸지 않는다.
    """
    if rep.binding is None:
        raise CatalogError("common_invariant_line은 특수화된 표현에만 적용합니다")
    m = rep.ambient_dim
    domain = rep.domain
    candidates: List[Subspace] = [Subspace.span(identity(m, domain).to_list(), m, domain)]
    for M in rep.matrices():
        if is_identity(M):
            continue
        refined: List[Subspace] = []
        for S in candidates:
            for sign in (1, -1):
                piece = subspace_intersection(S, eigenspace(M, sign))
                if piece.dim and piece not in refined:
                    refined.append(piece)
        candidates = refined
        if not candidates:
            return None
    line = Subspace.span([candidates[0].basis[0]], m, domain)
    for M in rep.matrices():
        if not line.is_invariant_under(M):
            raise LinalgError(f"불변 직선 검증 실패: {line.to_json()}")
    return line


def paper_condition(family_id: FamilyId, binding: ParamBinding, reading: str = 'all') -> bool:
    """진술된 기약 조건이 참인지 (참이면 기약 예측)

    Args:
        family_id: λ1..λ5
        binding: 유리수 바인딩
        reading: 'all' (± 조합 전부) 또는 'matched' (같은 부호끼리만)
    """
    family_id = FamilyId(family_id)
    if family_id not in CONDITION_FAMILIES:
        raise CatalogError(f"조건이 진술된 족이 아닙니다: {family_id.label}")
    if reading not in ('all', 'matched'):
        raise CatalogError(f"알 수 없는 해석: {reading}")
    v = {k: QQ.convert(val) for k, val in binding.assignments}
    signs = (1, -1)
    if family_id == FamilyId.L1:
        pairs = [(s, s2) for s in signs for s2 in signs if reading == 'all' or s == s2]
        return all(v['b'] * (v['t'] + s) != v['y'] * (v['d'] + s2) for s, s2 in pairs)
    if family_id == FamilyId.L2:
        return all(v['y'] * v['c'] != 2 * (v['t'] + s) for s in signs)
    if family_id == FamilyId.L3:
        return all(v['y'] != v['t'] + s for s in signs)
    if family_id == FamilyId.L4:
        return all(v['b'] * v['z'] != 2 * (v['d'] + s) for s in signs)
    return all(v['b'] != v['d'] + s for s in signs)


def paper_eigenvectors(family_id: FamilyId, binding: ParamBinding) -> List[dict]:
    """증명에 쓰인 고유벡터 공식 (분모가 0이면 vector=None)

    S_DB 형 블록은 (b/(d+ε), 1), U 형 블록은 ε=1 에서 (2/c, 1), ε=−1 에서 (0, 1)
    """
    family_id = FamilyId(family_id)
    v = {k: QQ.convert(val) for k, val in binding.assignments}

    def general(off: str, diag: str) -> List[Tuple[int, Optional[tuple]]]:
        out = []
        for eps in (1, -1):
            den = v[diag] + eps
            out.append((eps, (v[off] / den, QQ.one) if den else None))
        return out

    def unipotent(low: str) -> List[Tuple[int, Optional[tuple]]]:
        return [(1, (2 / v[low], QQ.one) if v[low] else None), (-1, (QQ.zero, QQ.one))]

    formulas = {
        FamilyId.L1: {'s1': general('b', 'd'), 'r1': general('y', 't')},
        FamilyId.L2: {'s1': unipotent('c'), 'r1': general('y', 't')},
        FamilyId.L3: {'r1': general('y', 't')},
        FamilyId.L4: {'s1': general('b', 'd'), 'r1': unipotent('z')},
        FamilyId.L5: {'s1': general('b', 'd')},
    }
    if family_id not in formulas:
        raise CatalogError(f"고유벡터 공식이 없는 족: {family_id.label}")
    rows = []
    for gen, entries in formulas[family_id].items():
        for eps, vec in entries:
            rows.append({'generator': gen, 'eigenvalue': eps, 'vector': vec})
    return rows


def check_paper_eigenvectors(family_id: FamilyId, binding: ParamBinding) -> List[dict]:
    """공식 고유벡터가 핵 기반 고유공간에 들어가는지 (정의된 경우만)"""
    rep = family(family_id, 2).specialize(binding)
    results = []
    for row in paper_eigenvectors(family_id, binding):
        M = rep.image(Generator.parse(row['generator']))
        space = eigenspace(M, row['eigenvalue'])
        vec = row['vector']
        results.append({
            'generator': row['generator'],
            'eigenvalue': row['eigenvalue'],
            'defined': vec is not None,
            'agrees': None if vec is None else space.contains(vec),
            'eigenspace_dim': space.dim,
        })
    return results


def _boundary_values(family_id: FamilyId, values: Dict[str, object],
                     rng: np.random.Generator) -> Dict[str, object]:
    """진술된 조건의 등호 경우가 되도록 매개변수 하나를 조정"""
    s, s2 = (int(x) for x in rng.choice([1, -1], size=2))
    v = dict(values)
    if family_id == FamilyId.L1 and v['d'] + s2 != 0:
        v['y'] = v['b'] * (v['t'] + s) / (v['d'] + s2)
    elif family_id == FamilyId.L2:
        v['t'] = v['c'] * v['y'] / 2 - s
    elif family_id == FamilyId.L3:
        v['y'] = v['t'] + s
    elif family_id == FamilyId.L4 and v['b'] != 0:
        v['z'] = 2 * (v['d'] + s) / v['b']
    elif family_id == FamilyId.L5:
        v['b'] = v['d'] + s
    return v


def compare_irreducibility(family_id: FamilyId, samples: int, seed: int,
                           reading: str = 'all', cross_check: bool = True) -> ComparisonReport:
    """무작위 바인딩에서 불변 직선 오라클과 진술된 조건 비교

    네 번째 표본마다 조건의 등호 경우를 일부러 만든다. cross_check가 켜져 있으면
    대수 폐포 차원(= 4 ⇔ 불변 직선 없음)으로 오라클끼리도 대조한다.
    """
    family_id = FamilyId(family_id)
    if not family_id.is_lambda:
        raise CatalogError(f"기약성 비교는 λ 족 전용입니다: {family_id.label}")
    rng = np.random.default_rng(seed)
    rep = family(family_id, 2)
    report = ComparisonReport(family_id, samples, reading=reading)
    for k in range(samples):
        boundary = family_id in CONDITION_FAMILIES and k % 4 == 3
        adjust = (lambda values: _boundary_values(family_id, values, rng)) if boundary else None
        binding = random_binding(rep, rng, adjust)
        specialized = rep.specialize(binding)
        line = common_invariant_line(specialized)
        oracle_irreducible = line is None
        if cross_check:
            closure = algebra_closure_dim(specialized.matrices())
            if (closure == 4) != oracle_irreducible:
                report.oracle_mismatches += 1
                report.notes.append(f"oracle mismatch at {binding.to_text()}: closure {closure}")
                logger.error(f"{family_id.label} 오라클 불일치: {binding.to_text()}")
        if family_id in CONDITION_FAMILIES:
            paper_irreducible = paper_condition(family_id, binding, reading)
        else:
            paper_irreducible = False
        if paper_irreducible == oracle_irreducible:
            report.agreements += 1
        else:
            report.disagreements.append({
                'binding': binding.to_text(),
                'paper': 'irreducible' if paper_irreducible else 'reducible',
                'oracle': 'irreducible' if oracle_irreducible else 'reducible',
                'witness': line.to_json() if line is not None else None,
            })
    if report.disagreements:
        logger.warning(f"{family_id.label}: 불일치 {len(report.disagreements)}/{samples}건")
    logger.info(f"{family_id.label} 기약성 비교 완료: 일치 {report.agreements}/{samples}")
    return report


def compare_readings(family_id: FamilyId, samples: int, seed: int) -> Dict[str, int]:
    """± 두 해석별 불일치 건수"""
    return {
        reading: len(compare_irreducibility(family_id, samples, seed, reading, cross_check=False).disagreements)
        for reading in ('all', 'matched')
    }


def burnside_verdict(rep: RepInstance, bindings: Sequence[ParamBinding]) -> List[IrreducibilityVerdict]:
    """대수 폐포 차원으로 판정 (m² 이면 절대 기약)"""
    m = rep.ambient_dim
    verdicts = []
    for binding in bindings:
        specialized = rep.specialize(binding)
        closure = algebra_closure_dim(specialized.matrices())
        if closure == m * m:
            verdicts.append(IrreducibilityVerdict(OracleMethod.ALGEBRA_CLOSURE, 'irreducible', binding,
                                                  closure_dim=closure))
        else:
            fixed = common_fixed_space(specialized.matrices())
            verdicts.append(IrreducibilityVerdict(OracleMethod.ALGEBRA_CLOSURE, 'reducible', binding,
                                                  closure_dim=closure, fixed_space=fixed))
        logger.debug(f"{rep.family.label} n={rep.n} {binding.to_text()}: 폐포 {closure}/{m * m}")
    return verdicts


def reducibility_experiment(family_id: FamilyId, n_values: Sequence[int], samples: int,
                            seed: int) -> List[dict]:
    """n마다 무작위 바인딩의 폐포 판정을 모아 가약성 주장과 비교

    Returns:
        n별 행: 판정 건수, 만장일치 여부, 주장, 일치 여부, 고정 벡터
    """
    family_id = FamilyId(family_id)
    rng = np.random.default_rng(seed)
    rows = []
    for n in n_values:
        rep = family(family_id, n)
        bindings = [random_binding(rep, rng) for _ in range(samples)]
        verdicts = burnside_verdict(rep, bindings)
        counts = {'reducible': 0, 'irreducible': 0}
        for v in verdicts:
            counts[v.verdict] += 1
        unanimous = 0 in counts.values()
        threshold = REDUCIBILITY_CLAIMS.get(family_id)
        claim = 'reducible' if threshold is not None and n >= threshold else None
        row = {
            'family': family_id.value,
            'n': n,
            'samples': samples,
            'verdicts': counts,
            'unanimous': unanimous,
            'closure_dims': sorted({v.closure_dim for v in verdicts}),
            'claim': claim,
        }
        if unanimous:
            row['verdict'] = verdicts[0].verdict
            row['agrees'] = None if claim is None else verdicts[0].verdict == claim
        else:
            row['verdict'] = 'split'
            row['agrees'] = None
            row['bindings'] = [v.to_dict() for v in verdicts]
        reducible = [v for v in verdicts if not v.is_irreducible]
        if reducible and reducible[0].fixed_space is not None:
            row['fixed_vectors'] = reducible[0].fixed_space.to_json()
        rows.append(row)
        logger.info(f"{family_id.label} n={n}: {counts}")
    return rows


# ---------------------------------------------------------------------------
# 충실성
# ---------------------------------------------------------------------------

def _image_key(M: Matrix) -> tuple:
    return tuple(sorted(M.to_dok().items()))


def kernel_search(rep: RepInstance, max_len: int) -> FaithfulnessFinding:
    """짧은 것부터 사전식 순으로 상이 I인 간약 단어를 찾음

    FVB_2는 간약 단어 전체를 나열하고, n ≥ 3은 행렬 상으로 중복을 제거한 BFS를 쓴다.
    n ≥ 3의 후보는 몫 사상으로 비자명성이 확인된 것만 증거로 인정한다.
    """
    if rep.binding is None:
        raise CatalogError("kernel_search는 특수화된 표현에만 적용합니다")
    binding_text = rep.binding.to_text()
    if rep.n == 2:
        if max_len > MAX_FVB2_LEN:
            raise CatalogError(f"FVB_2 탐색 길이는 {MAX_FVB2_LEN} 이하여야 합니다: {max_len}")
        words = fvb2_enumerate(max_len)
        for count, w in enumerate(words, start=1):
            if is_identity(eval_word(rep, w)):
                logger.info(f"{rep.family.label} 핵 원소 발견: {w}")
                return FaithfulnessFinding('kernel_witness', w, max_len, binding_text, count)
        return FaithfulnessFinding('no_witness_up_to_length', None, max_len, binding_text, len(words))

    if max_len > MAX_BFS_LEN:
        raise CatalogError(f"n ≥ 3 탐색 길이는 {MAX_BFS_LEN} 이하여야 합니다: {max_len}")
    gens = sorted(rep.generators, key=lambda g: g.sort_key)
    eye = identity(rep.ambient_dim, rep.domain)
    seen = {_image_key(eye)}
    level: List[Tuple[Word, Matrix]] = [(Word(), eye)]
    enumerated = 0
    uncertified = 0
    for _ in range(max_len):
        next_level = []
        for w, M in level:
            for g in gens:
                if w.letters and w.letters[-1] == g:
                    continue
                word = w * Word.of(g)
                image = M.matmul(rep.image(g))
                enumerated += 1
                if is_identity(image):
                    if certified_nontrivial(word, rep.n):
                        logger.info(f"{rep.family.label} 핵 원소 발견: {word}")
                        return FaithfulnessFinding('kernel_witness', word, max_len, binding_text,
                                                   enumerated, uncertified)
                    uncertified += 1
                    continue
                key = _image_key(image)
                if key in seen:
                    continue
                seen.add(key)
                next_level.append((word, image))
                if enumerated > BFS_NODE_GUARD:
                    raise CatalogError(f"BFS 노드가 {BFS_NODE_GUARD:,}개를 넘었습니다")
        level = next_level
        if not level:
            break
    return FaithfulnessFinding('no_witness_up_to_length', None, max_len, binding_text,
                               enumerated, uncertified)


@dataclass(frozen=True)
class WitnessRow:
    """기호 증거 한 건: 족, 치환, 단어, 기대 (성립/실패)"""

    family: FamilyId
    constraint: Tuple[Tuple[str, str], ...]
    word: str
    n: int = 2
    source: str = 'statement'


def _rs(k: int) -> str:
    return ' '.join(['r1 s1'] * k)


def _sr(k: int) -> str:
    return ' '.join(['s1 r1'] * k)


WITNESS_TABLE: Tuple[WitnessRow, ...] = (
    WitnessRow(FamilyId.L1, (('t', 'd'), ('y', 'b')), _rs(1)),
    WitnessRow(FamilyId.L1, (('t', '-d'), ('y', '-b')), _rs(2)),
    WitnessRow(FamilyId.L2, (('t', 'c*y/2'),), _rs(4)),
    WitnessRow(FamilyId.L3, (), 's1'),
    WitnessRow(FamilyId.L4, (('d', 'b*z/2'),), _sr(4)),
    WitnessRow(FamilyId.L4, (('t', 'b*z/2'),), _sr(4), source='proof'),
    WitnessRow(FamilyId.L5, (), 'r1'),
    WitnessRow(FamilyId.L6, (('z', 'c'),), _rs(1)),
    WitnessRow(FamilyId.L7, (('z', '-c'),), _rs(2)),
    WitnessRow(FamilyId.L8, (), 's1'),
    WitnessRow(FamilyId.L9, (), 'r1'),
    WitnessRow(FamilyId.L10, (), 's1'),
    WitnessRow(FamilyId.L11, (), 's1'),
    WitnessRow(FamilyId.L12, (), 'r1'),
    WitnessRow(FamilyId.G1, (), 's1', n=4),
    WitnessRow(FamilyId.G2, (('y', 'b'),), _rs(1), n=4),
    WitnessRow(FamilyId.D1, (), 's1', n=4),
    WitnessRow(FamilyId.D2, (), 's1', n=4),
    WitnessRow(FamilyId.D3, (), 's1', n=4),
    WitnessRow(FamilyId.D4, (), 's1', n=4),
    WitnessRow(FamilyId.D5, (('y', 'x'),), _rs(1), n=4),
    WitnessRow(FamilyId.D6, (('y', 'x'),), _rs(1), n=4),
    WitnessRow(FamilyId.D7, (), _rs(1), n=4),
    WitnessRow(FamilyId.D8, (), _rs(1), n=4),
)


def check_witness(row: WitnessRow) -> bool:
    """치환 후 기호 평가가 정확히 I인지"""
    rep = family(row.family, row.n)
    mapping = {name: ratfunc(value) for name, value in row.constraint}
    if mapping:
        rep = rep.substitute(mapping)
    return is_identity(eval_word(rep, Word.parse(row.word)))


def symbolic_witnesses() -> List[dict]:
    """증거표 전체를 기호 검증 (실패한 행은 제안 조건과 함께 반환)"""
    results = []
    for row in WITNESS_TABLE:
        holds = check_witness(row)
        entry = {
            'family': row.family.value,
            'n': row.n,
            'constraint': {k: v for k, v in row.constraint},
            'word': row.word,
            'source': row.source,
            'holds': holds,
        }
        if not holds:
            logger.warning(f"{row.family.label} 증거 {row.word} 가 I가 아닙니다")
            entry['suggested'] = [s.to_json() for s in suggest_constraint(row.family, row.word, row.n)]
        results.append(entry)
    return results


def suggest_constraint(family_id: FamilyId, word: str, n: int = 2) -> List[BranchSolution]:
    """eval(word) = I 가 되는 매개변수 조건을 분기 풀이로 제안 (풀 수 없으면 빈 목록)"""
    rep = family(family_id, n)
    field_ = rep.domain
    diff = eval_word(rep, Word.parse(word)) - identity(rep.ambient_dim, field_)
    params = rep.parameters()
    symbols = tuple(Symbol(p) for p in params)
    equations = []
    for _, value in sorted(diff.to_dok().items()):
        canon = canonical_poly(field_.to_sympy(value), symbols)
        if canon != 0 and canon not in equations:
            equations.append(canon)
    if not equations:
        return []
    if any(e.is_number for e in equations):
        return []
    used = tuple(p for p in params if any(str(s) == p for e in equations for s in e.free_symbols))
    try:
        system = PolySystem(f"witness {family_id.value} {word}", used, tuple(equations))
        constraints = [field_.to_sympy(c) for c in rep.constraints]
        return branch_solve(system, constraints)
    except BranchSolverError as exc:
        logger.warning(f"{family_id.label} 조건 제안 실패: {exc}")
        return []


def dihedral_power_formula(family_id: FamilyId, N: int) -> bool:
    """λ6: (σ₁ρ₁)ᵏ = [[1,0],[k(c−z),1]], λ7: (σ₁ρ₁)ᵏ = (−1)ᵏ[[1,0],[k(c+z),1]] (k ≤ N),
    그리고 홀수 길이 형태 w3, w4 의 대각이 ±(1,−1) 이라 I가 될 수 없음을 확인"""
    family_id = FamilyId(family_id)
    if family_id not in (FamilyId.L6, FamilyId.L7):
        raise CatalogError(f"거듭제곱 공식은 λ6, λ7 전용입니다: {family_id.label}")
    if N < 1:
        raise CatalogError(f"N은 1 이상이어야 합니다: {N}")
    rep = family(family_id, 2)
    field_ = rep.domain
    step = eval_word(rep, Word.parse('s1 r1'))
    power = identity(2, field_)
    for k in range(1, N + 1):
        power = power.matmul(step)
        if family_id == FamilyId.L6:
            expected = matrix([[1, 0], [ratfunc(f'{k}*(c-z)'), 1]], field_)
        else:
            sign = (-1) ** k
            expected = matrix([[sign, 0], [ratfunc(f'{sign * k}*(c+z)'), sign]], field_)
        if not mat_equal(power, expected):
            logger.error(f"{family_id.label} 거듭제곱 공식이 k={k}에서 성립하지 않습니다")
            return False
    for k in range(0, N + 1):
        for tag in ('w3', 'w4'):
            image = eval_word(rep, shape_word(tag, k)).to_list()
            p, s = image[0][0], image[1][1]
            if not (p == -s and p in (field_.one, -field_.one)):
                logger.error(f"{family_id.label} {tag}^{k} 대각이 ±(1,−1)이 아닙니다")
                return False
    return True

