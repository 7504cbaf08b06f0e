"""
분류 재유도 모듈
관계식에서 다항식 계를 만들고 인수 분기 + 선형 역대입으로 풀며,
F_p 전수 조사로 족 목록의 완전성을 점검한다
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import (
    QQ, Expr, Mul, Poly, S, Symbol, cancel, expand, factor_list, fraction, sympify, together,
)

from braid_groups import GeneratorKind, fvb_presentation
from linalg import matrix, specialize_matrix
from rep_catalog import (
    BlockSpec, FamilyId, assemble_local, block_spec, eval_word, family_parameters,
    generic_block_spec, verify_relations,
)
from scalar_field import (
    DEFAULT_ALPHABET, PARAM_ALPHABET, ParamBinding, ScalarFieldError,
    fp_enumerate_array, prime_field,
)

logger = logging.getLogger(__name__)

SYSTEM_KINDS = ('fvb2_local', 'fvbn_homog_2block')

# 분기 탐색 상한
MAX_SOLVER_STEPS = 20000

# 쌍 조사 상한 (사전 필터 후)
PAIR_GUARD = 2_000_000

# 문헌에 인쇄된 방정식 목록
PAPER_EQUATIONS: Dict[str, Tuple[str, ...]] = {
    'fvb2_local': (
        'a**2+b*c-1', 'd*b+a*b', 'd*c+a*c', 'd**2+b*c-1',
        'x**2+y*z-1', 't*y+x*y', 't*z+x*z', 't**2+y*z-1',
    ),
    'fvbn_homog_2block': (
        '-1+a**2+b*c', 'b*(a+d)', 'c*(a+d)', '-1+b*c+d**2',
        'a*(-1+a+b*c)', 'a*b*d', 'a*c*d', 'a*d*(a-d)', 'd*(1-b*c-d)',
        'x*(-1+x+y*z)', 't*x*y', 't*x*z', 'x*t*(x-t)', 't*(1-t-y*z)',
        'x*(-1+a+c*y)', 'x*(b-y+d*y)', 'c*t*x', 'x*t*(a-d)', 't*(-b+y-a*y)', 't*(1-d-c*y)',
        '-1+x**2+y*z', 'y*(t+x)', 'z*(t+x)', '-1+t**2+y*z',
    ),
}


class BranchSolverError(RuntimeError):
    """구현된 전략으로 줄일 수 없는 계, 또는 건전성 검사 실패"""


class CensusGuardExceeded(ScalarFieldError):
    """전수 조사 작업량이 상한을 넘음"""


def _symbols(names: Sequence[str]) -> Tuple[Symbol, ...]:
    return tuple(Symbol(n) for n in names)


def canonical_poly(expr, symbols: Sequence[Symbol]) -> Expr:
    """분자를 정수 계수 원시 다항식으로, 선두 계수는 양수로

    0은 S.Zero, 0이 아닌 상수는 S.One
    """
    numer, _ = fraction(together(sympify(expr)))
    numer = expand(numer)
    if numer == 0:
        return S.Zero
    if numer.is_number:
        return S.One
    poly = Poly(numer, *symbols)
    _, poly = poly.clear_denoms(convert=True)
    _, poly = poly.primitive()
    if poly.LC() < 0:
        poly = -poly
    return poly.as_expr()


@dataclass(frozen=True)
class PolySystem:
    """각 방정식이 0이 되어야 하는 다항식 계"""

    kind: str
    unknowns: Tuple[str, ...]
    equations: Tuple[Expr, ...]

    def __post_init__(self):
        used = set()
        for e in self.equations:
            used.update(str(s) for s in e.free_symbols)
        missing = [u for u in self.unknowns if u not in used]
        if missing:
            raise BranchSolverError(f"방정식에 나타나지 않는 미지수: {missing}")
        extra = sorted(used - set(self.unknowns))
        if extra:
            raise BranchSolverError(f"미지수 목록에 없는 기호: {extra}")

    @property
    def symbols(self) -> Tuple[Symbol, ...]:
        return _symbols(self.unknowns)

    def to_json(self) -> dict:
        return {
            'kind': self.kind,
            'unknowns': list(self.unknowns),
            'equations': [str(e) for e in self.equations],
        }


def _relation_equations(n: int) -> List[Expr]:
    """일반 2-블록 국소 표현에 FVB_n 관계식을 적용해 얻은 성분 방정식"""
    rep = assemble_local(n, generic_block_spec())
    field_ = rep.domain
    symbols = _symbols(PARAM_ALPHABET)
    equations: List[Expr] = []
    for relation in rep.presentation.relations:
        diff = eval_word(rep, relation.lhs) - eval_word(rep, relation.rhs)
        for (_, _), value in sorted(diff.to_dok().items()):
            canon = canonical_poly(field_.to_sympy(value), symbols)
            if canon != 0 and canon not in equations:
                equations.append(canon)
    return equations


def build_system(kind: str) -> PolySystem:
    """관계식 행렬을 전개해 방정식 계 생성

    Args:
        kind: 'fvb2_local' (FVB_2, 8개) 또는 'fvbn_homog_2block' (FVB_4 기준, 24개)
    """
    if kind == 'fvb2_local':
        equations = _relation_equations(2)
    elif kind == 'fvbn_homog_2block':
        # n=4 에서 모든 관계식 유형이 나타난다
        equations = _relation_equations(4)
    else:
        raise BranchSolverError(f"알 수 없는 계 종류: {kind} (가능: {SYSTEM_KINDS})")
    logger.info(f"{kind} 방정식 {len(equations)}개 생성")
    return PolySystem(kind, PARAM_ALPHABET, tuple(equations))


def restrict_system(system: PolySystem, unknowns: Sequence[str]) -> PolySystem:
    """주어진 미지수만 포함하는 방정식으로 축소"""
    keep = set(unknowns)
    equations = tuple(e for e in system.equations if {str(s) for s in e.free_symbols} <= keep)
    ordered = tuple(u for u in system.unknowns if u in keep)
    return PolySystem(f"{system.kind}|{','.join(ordered)}", ordered, equations)


def compare_with_paper(system: PolySystem) -> Dict[str, object]:
    """생성된 방정식과 인쇄된 목록의 정규형 비교"""
    base_kind = system.kind.split('|')[0]
    printed = [canonical_poly(e, _symbols(PARAM_ALPHABET)) for e in PAPER_EQUATIONS[base_kind]]
    printed_unique = list(dict.fromkeys(printed))
    generated = list(system.equations)
    return {
        'generated': len(generated),
        'printed': len(PAPER_EQUATIONS[base_kind]),
        'printed_distinct': len(printed_unique),
        'generated_not_printed': [str(e) for e in generated if e not in printed_unique],
        'printed_not_generated': [str(e) for e in printed_unique if e not in generated],
        'match': set(generated) == set(printed_unique),
    }


# ---------------------------------------------------------------------------
# 분기 풀이
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchSolution:
    """치환, 0 아님 조건, 분기 경로"""

    substitutions: Tuple[Tuple[str, Expr], ...]
    side_conditions: Tuple[Expr, ...]
    provenance: Tuple[str, ...]

    def value(self, name: str) -> Expr:
        for key, value in self.substitutions:
            if key == name:
                return value
        return Symbol(name)

    def block(self, names: Sequence[Sequence[str]]) -> List[List[Expr]]:
        return [[self.value(n) for n in row] for row in names]

    def as_ratfuncs(self) -> Dict[str, object]:
        field_ = DEFAULT_ALPHABET.field
        return {k: field_.from_sympy(v) for k, v in self.substitutions}

    def to_json(self) -> dict:
        return {
            'substitutions': {k: str(v) for k, v in self.substitutions},
            'side_conditions': [f"{c} != 0" for c in self.side_conditions],
            'provenance': list(self.provenance),
        }


@dataclass
class _Branch:
    equations: List[Expr]
    substitutions: Dict[Symbol, Expr]
    nonzero: List[Expr]
    path: Tuple[str, ...]


@dataclass
class CaseTrace:
    """분기 탐색 기록 (경로, 결과)"""

    events: List[Tuple[Tuple[str, ...], str]] = field(default_factory=list)

    def record(self, path: Tuple[str, ...], outcome: str):
        self.events.append((path, outcome))


class _BranchSolver:
    """인수 분기와 선형 역대입만 쓰는 풀이기"""

    def __init__(self, system: PolySystem, side_conditions: Sequence[Expr] = (),
                 trace: Optional[CaseTrace] = None):
        self.system = system
        self.symbols = system.symbols
        self.side_conditions = [sympify(c) for c in side_conditions]
        self.trace = trace
        self.solutions: List[BranchSolution] = []
        self.steps = 0

    def canon(self, expr) -> Expr:
        return canonical_poly(expr, self.symbols)

    def factors(self, expr: Expr) -> List[Expr]:
        """상수가 아닌 서로 다른 기약 인수 (정규형)"""
        _, pairs = factor_list(expr, *self.symbols)
        out: List[Expr] = []
        for f, _ in pairs:
            c = self.canon(f)
            if not c.is_number and c not in out:
                out.append(c)
        return out

    def _dead(self, branch: _Branch, reason: str) -> None:
        if self.trace is not None:
            self.trace.record(branch.path, f"✗ {reason}")
        logger.debug(f"분기 소멸 {' / '.join(branch.path)}: {reason}")
        return None

    def normalize(self, branch: _Branch) -> Optional[_Branch]:
        """0 아님 조건과 방정식을 정규화하고 모순이면 None"""
        nonzero: List[Expr] = []
        for f in branch.nonzero:
            c = self.canon(f)
            if c == 0:
                return self._dead(branch, f"조건 {f} ≠ 0 이 깨짐")
            if c.is_number:
                continue
            for g in self.factors(c):
                if g not in nonzero:
                    nonzero.append(g)
        equations: List[Expr] = []
        for e in branch.equations:
            c = self.canon(e)
            if c == 0:
                continue
            if c.is_number:
                return self._dead(branch, f"상수 방정식 {e} = 0")
            remaining = [g for g in self.factors(c) if g not in nonzero]
            if not remaining:
                return self._dead(branch, f"{c} 의 모든 인수가 0이 아님")
            reduced = self.canon(Mul(*remaining))
            if reduced not in equations:
                equations.append(reduced)
        return _Branch(equations, branch.substitutions, nonzero, branch.path)

    def substitute(self, branch: _Branch, var: Symbol, value: Expr, label: str,
                   extra_nonzero: Sequence[Expr] = ()) -> Optional[_Branch]:
        value = cancel(value)
        subs = {k: cancel(v.xreplace({var: value})) for k, v in branch.substitutions.items()}
        subs[var] = value
        return self.normalize(_Branch(
            [e.xreplace({var: value}) for e in branch.equations],
            subs,
            [f.xreplace({var: value}) for f in list(branch.nonzero) + list(extra_nonzero)],
            branch.path + (label,),
        ))

    def _linear_parts(self, e: Expr, var: Symbol) -> Optional[Tuple[Expr, Expr]]:
        """e = coeff·var + rest 이면 (coeff, rest)"""
        if var not in e.free_symbols:
            return None
        poly = Poly(e, var)
        if poly.degree() != 1:
            return None
        return poly.nth(1), poly.nth(0)

    def expand(self, branch: _Branch) -> List[Optional[_Branch]]:
        # 1) 상수 계수 선형 방정식
        for e in branch.equations:
            for var in self.symbols:
                parts = self._linear_parts(e, var)
                if parts and parts[0].is_number:
                    coeff, rest = parts
                    value = -rest / coeff
                    return [self.substitute(branch, var, value, f"{var} = {cancel(value)}")]
        # 2) 인수 분기
        for idx, e in enumerate(branch.equations):
            facs = self.factors(e)
            if len(facs) >= 2:
                children = []
                for k, f in enumerate(facs):
                    prior = facs[:k]
                    label = f"{f} = 0" + (f" ({', '.join(str(p) for p in prior)} ≠ 0)" if prior else '')
                    equations = branch.equations[:idx] + [f] + branch.equations[idx + 1:]
                    children.append(self.normalize(_Branch(
                        equations, branch.substitutions, branch.nonzero + prior, branch.path + (label,),
                    )))
                return children
        # 3) 계수가 0이 아님이 알려진 선형 방정식
        for e in branch.equations:
            for var in self.symbols:
                parts = self._linear_parts(e, var)
                if parts and all(g in branch.nonzero for g in self.factors(self.canon(parts[0]))):
                    coeff, rest = parts
                    value = -rest / coeff
                    return [self.substitute(branch, var, value, f"{var} = {cancel(value)}")]
        # 4) 계수에 대한 분기
        for e in branch.equations:
            for var in self.symbols:
                parts = self._linear_parts(e, var)
                if parts:
                    coeff, rest = parts
                    coeff_factors = self.factors(self.canon(coeff))
                    value = -rest / coeff
                    nonzero_child = self.substitute(
                        branch, var, value, f"{var} = {cancel(value)} ({coeff} ≠ 0)", coeff_factors,
                    )
                    zero_child = self.normalize(_Branch(
                        branch.equations + [coeff], branch.substitutions, branch.nonzero,
                        branch.path + (f"{coeff} = 0",),
                    ))
                    return [nonzero_child, zero_child]
        raise BranchSolverError(
            "분기 전략으로 줄일 수 없는 방정식: " + ', '.join(f"{e} = 0" for e in branch.equations)
        )

    def emit(self, branch: _Branch):
        """건전성 확인 후 해 기록"""
        mapping = branch.substitutions
        for e in self.system.equations:
            if cancel(e.xreplace(mapping)) != 0:
                raise BranchSolverError(
                    f"건전성 검사 실패: {e} 가 {' / '.join(branch.path)} 에서 0이 아님"
                )
        order = {s: i for i, s in enumerate(self.symbols)}
        substitutions = tuple(
            (str(k), v) for k, v in sorted(mapping.items(), key=lambda kv: order[kv[0]])
        )
        solution = BranchSolution(substitutions, tuple(branch.nonzero), branch.path)
        self.solutions.append(solution)
        if self.trace is not None:
            shown = ', '.join(f"{k}={v}" for k, v in substitutions)
            self.trace.record(branch.path, f"→ 해: {shown}")

    def solve(self) -> List[BranchSolution]:
        root = self.normalize(_Branch(list(self.system.equations), {}, list(self.side_conditions), ()))
        stack = [root] if root is not None else []
        while stack:
            branch = stack.pop()
            self.steps += 1
            if self.steps > MAX_SOLVER_STEPS:
                raise BranchSolverError(f"분기 탐색이 {MAX_SOLVER_STEPS}단계를 넘었습니다")
            if not branch.equations:
                self.emit(branch)
                continue
            children = [c for c in self.expand(branch) if c is not None]
            stack.extend(reversed(children))
        return self.solutions


def branch_solve(system: PolySystem, side_conditions: Sequence = (),
                 trace: Optional[CaseTrace] = None) -> List[BranchSolution]:
    """인수 분기와 선형 역대입으로 계를 풀이

    Args:
        system: 다항식 계
        side_conditions: 처음부터 0이 아니라고 가정할 식
        trace: 분기 경로를 기록할 CaseTrace

    Returns:
        모든 방정식을 만족하는 분기 해 목록 (각 해는 대입 검사를 통과함)

    Raises:
        BranchSolverError: 전략으로 줄일 수 없는 방정식이 남을 때
    """
    solver = _BranchSolver(system, side_conditions, trace)
    solutions = solver.solve()
    logger.info(f"{system.kind}: 분기 해 {len(solutions)}개 ({solver.steps}단계)")
    return solutions


def format_case_tree(trace: CaseTrace) -> str:
    """분기 경로를 들여쓰기 텍스트로"""
    lines: List[str] = []
    printed = set()
    for path, outcome in trace.events:
        for depth in range(len(path)):
            prefix = path[:depth + 1]
            if prefix not in printed:
                printed.add(prefix)
                lines.append('  ' * depth + path[depth])
        lines.append('  ' * len(path) + outcome)
    return '\n'.join(lines)


# ---------------------------------------------------------------------------
# 해의 형태 분류
# ---------------------------------------------------------------------------

SIGMA_NAMES = (('a', 'b'), ('c', 'd'))
RHO_NAMES = (('x', 'y'), ('z', 't'))


def _is_zero(expr) -> bool:
    return cancel(sympify(expr)) == 0


def involution_form(block: Sequence[Sequence]) -> str:
    """2×2 대합 블록의 형태: scalar (±I), unipotent (±[[1,0],[c,−1]]),
    generic (±[[−d,b],[(1−d²)/b,d]], b ≠ 0), 그 외 unclassified"""
    (p, q), (r, s) = [[sympify(e) for e in row] for row in block]
    for sign in (1, -1):
        if _is_zero(q) and _is_zero(r) and _is_zero(p - sign) and _is_zero(s - sign):
            return 'scalar'
        if _is_zero(q) and _is_zero(p - sign) and _is_zero(s + sign):
            return 'unipotent'
    if not _is_zero(q) and _is_zero(p + s) and _is_zero(q * r - (1 - s ** 2)):
        return 'generic'
    return 'unclassified'


def _is_identity_block(block) -> bool:
    (p, q), (r, s) = block
    return _is_zero(p - 1) and _is_zero(q) and _is_zero(r) and _is_zero(s - 1)


def _is_swap_block(block) -> bool:
    (p, q), (r, s) = block
    return _is_zero(p) and _is_zero(s) and _is_zero(q * r - 1)


def homogeneous_type(sigma_block, rho_block) -> str:
    """FVB_n 2-블록 해의 유형: trivial, gamma1, gamma2, unclassified"""
    if _is_identity_block(sigma_block) and _is_identity_block(rho_block):
        return 'trivial'
    if _is_identity_block(sigma_block) and _is_swap_block(rho_block):
        return 'gamma1'
    if _is_swap_block(sigma_block) and _is_swap_block(rho_block):
        return 'gamma2'
    return 'unclassified'


def solution_forms(system: PolySystem, solutions: Sequence[BranchSolution]) -> List[str]:
    """해마다 형태 이름"""
    base_kind = system.kind.split('|')[0]
    labels = []
    for sol in solutions:
        sigma = sol.block(SIGMA_NAMES)
        rho = sol.block(RHO_NAMES)
        if base_kind == 'fvbn_homog_2block':
            labels.append(homogeneous_type(sigma, rho))
        elif set(system.unknowns) <= {'a', 'b', 'c', 'd'}:
            labels.append(involution_form(sigma))
        elif set(system.unknowns) <= {'x', 'y', 'z', 't'}:
            labels.append(involution_form(rho))
        else:
            labels.append(f"{involution_form(sigma)}/{involution_form(rho)}")
    return labels


# ---------------------------------------------------------------------------
# F_p 전수 조사
# ---------------------------------------------------------------------------

@dataclass
class CensusReport:
    """전수 조사 결과 (matched 합 + unmatched 수 = solutions)"""

    prime: int
    shape: str
    total_candidates: int
    solutions: int
    matched: Dict[str, int]
    unmatched: List[dict]
    notes: List[str] = field(default_factory=list)
    survivors: List[Tuple[tuple, tuple]] = field(default_factory=list, repr=False)

    @property
    def matched_total(self) -> int:
        return sum(self.matched.values())

    @property
    def conserved(self) -> bool:
        return self.matched_total + len(self.unmatched) == self.solutions

    def to_dict(self) -> dict:
        return {
            'prime': self.prime,
            'shape': self.shape,
            'total_candidates': self.total_candidates,
            'solutions': self.solutions,
            'matched': dict(sorted(self.matched.items())),
            'unmatched': self.unmatched,
            'notes': self.notes,
        }


def _rows(M: np.ndarray) -> List[List[int]]:
    return [[int(v) for v in row] for row in M]


def _involution_mask(blocks: np.ndarray, p: int) -> np.ndarray:
    k = blocks.shape[1]
    squares = np.einsum('nij,njk->nik', blocks, blocks) % p
    return (squares == np.eye(k, dtype=np.int64)).all(axis=(1, 2))


def match_involution_form(M: np.ndarray, p: int) -> Optional[Tuple[str, int, Dict[str, int]]]:
    """F_p 위 2×2 대합이 세 형태(부호 포함) 중 어느 것의 특수화인지 매개변수를 풀어 판정"""
    for sign in (1, p - 1):
        a, b, c, d = (int(v) for v in ((M * sign) % p).ravel())
        if b == 0 and c == 0 and a == 1 and d == 1:
            return 'scalar', sign, {}
        if b == 0 and a == 1 and d == (p - 1) % p:
            return 'unipotent', sign, {'c': c}
        if b != 0 and (a + d) % p == 0 and (b * c - (1 - d * d)) % p == 0:
            return 'generic', sign, {'b': b, 'd': d}
    return None


def census_involutions_2x2(p: int) -> CensusReport:
    """F_p 위 2×2 행렬 전체에서 대합을 모아 세 형태와 대조"""
    prime_field(p)
    candidates = fp_enumerate_array(p, 4).reshape(-1, 2, 2)
    involutions = candidates[_involution_mask(candidates, p)]
    matched: Dict[str, int] = {}
    unmatched = []
    for M in involutions:
        hit = match_involution_form(M, p)
        if hit is None:
            unmatched.append({'matrix': _rows(M)})
        else:
            matched[hit[0]] = matched.get(hit[0], 0) + 1
    notes = []
    if p == 2:
        notes.append('char 2: +I and -I coincide, sign classes collapse')
    report = CensusReport(p, '2x2', int(candidates.shape[0]), int(involutions.shape[0]),
                          matched, unmatched, notes)
    logger.info(f"2×2 대합 조사 p={p}: 해 {report.solutions}개, 미대응 {len(unmatched)}개")
    return report


def _embed_np(block: np.ndarray, offset: int, m: int) -> np.ndarray:
    k = block.shape[0]
    E = np.eye(m, dtype=np.int64)
    E[offset:offset + k, offset:offset + k] = block
    return E


class _LocalImages:
    """블록 하나를 모든 위치에 놓은 numpy 상"""

    def __init__(self, block: np.ndarray, n: int, m: int):
        self.images = {i: _embed_np(block, i - 1, m) for i in range(1, n)}


def _word_image(word, sigma: _LocalImages, rho: Optional[_LocalImages], m: int, p: int) -> np.ndarray:
    mats = [(sigma if g.kind == GeneratorKind.SIGMA else rho).images[g.index] for g in word.letters]
    return reduce(lambda X, Y: (X @ Y) % p, mats, np.eye(m, dtype=np.int64))


def _holds(relation, sigma, rho, m: int, p: int) -> bool:
    return np.array_equal(_word_image(relation.lhs, sigma, rho, m, p),
                          _word_image(relation.rhs, sigma, rho, m, p))


def _family_lookup(block_size: int, p: int) -> Dict[Tuple[bytes, bytes], str]:
    """족 특수화 블록 쌍 → 이름 (매개변수는 F_p* 전체, 전역 부호 포함)"""
    if block_size == 2:
        families = (FamilyId.G1, FamilyId.G2)
    else:
        families = tuple(f for f in FamilyId if f.is_delta)
    direct: List[Tuple[np.ndarray, np.ndarray, str]] = []
    eye = np.eye(block_size, dtype=np.int64)
    direct.append((eye, eye, 'trivial'))
    for fam in families:
        spec = block_spec(fam)
        params = family_parameters(fam)
        for values in itertools.product(range(1, p), repeat=len(params)):
            binding = ParamBinding.of(dict(zip(params, values)), modulus=p)
            try:
                S = np.array([[int(e) for e in row] for row in specialize_matrix(spec.sigma_block, binding).to_list()],
                             dtype=np.int64)
                R = np.array([[int(e) for e in row] for row in specialize_matrix(spec.rho_block, binding).to_list()],
                             dtype=np.int64)
            except ScalarFieldError:
                continue
            direct.append((S, R, fam.label))

    # 부호를 바꾼 쌍은 직접 특수화로 얻어지지 않을 때만 (-) 표기
    lookup: Dict[Tuple[bytes, bytes], str] = {}
    for S, R, name in direct:
        lookup.setdefault((S.tobytes(), R.tobytes()), name)
    for S, R, name in direct:
        lookup.setdefault((((-S) % p).tobytes(), ((-R) % p).tobytes()), f"{name}(-)")
    return lookup


def _lift(M: np.ndarray, p: int) -> List[List[int]]:
    """대칭 대표원 (−p/2, p/2] 로 올림"""
    return [[int(v) if v <= p // 2 else int(v) - p for v in row] for row in M]


def _membership_over_q(sigma_rows: List[List[int]], rho_rows: List[List[int]], block_size: int) -> Optional[str]:
    """올린 블록 쌍이 ℚ 위에서 어떤 족의 특수화인지 분기 풀이로 확인"""
    if block_size == 2:
        families = (FamilyId.G1, FamilyId.G2)
    else:
        families = tuple(f for f in FamilyId if f.is_delta)
    eye = [[int(i == j) for j in range(block_size)] for i in range(block_size)]
    if sigma_rows == eye and rho_rows == eye:
        return 'trivial'
    for fam in families:
        spec = block_spec(fam)
        params = family_parameters(fam)
        symbols = _symbols(params)
        field_ = spec.sigma_block.domain
        equations = []
        consistent = True
        for block, target in ((spec.sigma_block, sigma_rows), (spec.rho_block, rho_rows)):
            for row, target_row in zip(block.to_list(), target):
                for e, v in zip(row, target_row):
                    canon = canonical_poly(field_.to_sympy(e) - v, symbols)
                    if canon == 0:
                        continue
                    if canon.is_number:
                        consistent = False
                    elif canon not in equations:
                        equations.append(canon)
        if not consistent:
            continue
        if not equations:
            return fam.label
        used = tuple(name for name in params if any(Symbol(name) in e.free_symbols for e in equations))
        try:
            system = PolySystem(f"membership {fam.value}", used, tuple(equations))
            constraints = [field_.to_sympy(c) for c in spec.constraints]
            if branch_solve(system, constraints):
                return fam.label
        except BranchSolverError:
            continue
    return None


def _lift_attempt(sigma: np.ndarray, rho: np.ndarray, p: int, block_size: int, n_probe: int) -> str:
    """미대응 생존자를 ℚ로 올려 관계식과 족 소속을 다시 확인"""
    S_q, R_q = _lift(sigma, p), _lift(rho, p)
    spec = BlockSpec(block_size, matrix(S_q, QQ), matrix(R_q, QQ))
    rep = assemble_local(n_probe, spec)
    if not verify_relations(rep).passed:
        return 'unmatched'
    if _membership_over_q(S_q, R_q, block_size) is not None:
        return 'matched_over_q'
    return 'counterexample_lifted'


def census_fvb_local(p: int, block_size: int, n_probe: int) -> CensusReport:
    """F_p 위 블록 대합 쌍 (M, N) 중 FVB_{n_probe} 관계식을 만족하는 것을 족 목록과 대조

    Args:
        p: 소수
        block_size: 2 또는 3
        n_probe: 관계식을 적용할 가닥 수 (블록 2는 4, 블록 3은 5 권장)
    """
    if block_size not in (2, 3):
        raise CensusGuardExceeded(f"블록 크기는 2 또는 3이어야 합니다: {block_size}")
    if n_probe < 2:
        raise CensusGuardExceeded(f"n_probe는 2 이상이어야 합니다: {n_probe}")
    k = block_size
    m = n_probe + k - 2
    candidates = fp_enumerate_array(p, k * k).reshape(-1, k, k)
    involutions = candidates[_involution_mask(candidates, p)]
    relations = fvb_presentation(n_probe).relations
    sigma_only = [r for r in relations if r.alphabet == {GeneratorKind.SIGMA}]
    rho_only = [r for r in relations if r.alphabet == {GeneratorKind.RHO}]
    mixed = [r for r in relations if len(r.alphabet) == 2]

    local = [(B, _LocalImages(B, n_probe, m)) for B in involutions]
    sigma_ok = [(B, L) for B, L in local if all(_holds(r, L, None, m, p) for r in sigma_only)]
    rho_ok = [(B, L) for B, L in local if all(_holds(r, None, L, m, p) for r in rho_only)]
    pairs = len(sigma_ok) * len(rho_ok)
    if pairs > PAIR_GUARD:
        raise CensusGuardExceeded(f"조사할 쌍 {pairs:,}개가 상한 {PAIR_GUARD:,}을 넘습니다")
    logger.info(
        f"블록 {k} 조사 p={p}, n={n_probe}: 대합 {len(involutions)}개, "
        f"σ 통과 {len(sigma_ok)}개, ρ 통과 {len(rho_ok)}개"
    )

    survivors = []
    for S_block, S_img in sigma_ok:
        for R_block, R_img in rho_ok:
            if all(_holds(r, S_img, R_img, m, p) for r in mixed):
                survivors.append((S_block, R_block))

    lookup = _family_lookup(k, p)
    matched: Dict[str, int] = {}
    unmatched = []
    for S_block, R_block in survivors:
        name = lookup.get((S_block.tobytes(), R_block.tobytes()))
        if name is None:
            unmatched.append({
                'sigma': _rows(S_block),
                'rho': _rows(R_block),
                'lift': _lift_attempt(S_block, R_block, p, k, n_probe),
            })
        else:
            matched[name] = matched.get(name, 0) + 1

    notes = [
        f"involutions: {len(involutions)}",
        f"sigma-relation survivors: {len(sigma_ok)}",
        f"rho-relation survivors: {len(rho_ok)}",
    ]
    if p == 2:
        notes.append('char 2: classification not asserted, +I and -I coincide')
    report = CensusReport(
        p, f"block{k} n{n_probe}", int(candidates.shape[0]) ** 2, len(survivors),
        matched, unmatched, notes,
        [(tuple(map(tuple, _rows(S_b))), tuple(map(tuple, _rows(R_b)))) for S_b, R_b in survivors],
    )
    logger.info(f"블록 {k} 조사 p={p}: 생존 {len(survivors)}개, 미대응 {len(unmatched)}개")
    return report


def recheck_survivors(report: CensusReport, n: int) -> bool:
    """생존 쌍이 다른 n에서도 모든 관계식을 만족하는지 (F_p 위 기호 검증)"""
    field_ = prime_field(report.prime)
    for sigma_rows, rho_rows in report.survivors:
        k = len(sigma_rows)
        spec = BlockSpec(k, matrix(sigma_rows, field_), matrix(rho_rows, field_))
        if not verify_relations(assemble_local(n, spec)).passed:
            return False
    return True

