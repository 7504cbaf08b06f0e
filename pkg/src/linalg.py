"""
정확 선형대수 모듈
sympy DomainMatrix(희소 형식) 위의 곱, 역행렬, 핵, 고유공간, 행렬 대수 폐포
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from scalar_field import ParamBinding, format_scalar, specialize

logger = logging.getLogger(__name__)

Matrix = DomainMatrix


class LinalgError(ArithmeticError):
    """선형대수 연산 오류의 기본 클래스"""


class DimensionMismatch(LinalgError):
    """행렬 크기 또는 도메인 불일치"""


class SingularMatrix(LinalgError):
    """가역이 아닌 행렬"""


# ---------------------------------------------------------------------------
# 생성
# ---------------------------------------------------------------------------

def matrix(rows: Sequence[Sequence], domain: Domain) -> Matrix:
    """행 목록에서 희소 DomainMatrix 생성 (원소는 도메인으로 변환)"""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    entries = {}
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise DimensionMismatch(f"행 길이가 다릅니다: {len(row)} != {ncols}")
        converted = {j: domain.convert(e) for j, e in enumerate(row)}
        nonzero = {j: e for j, e in converted.items() if e}
        if nonzero:
            entries[i] = nonzero
    return DomainMatrix(entries, (nrows, ncols), domain)


def identity(m: int, domain: Domain) -> Matrix:
    return DomainMatrix.eye(m, domain).to_sparse()


def diagonal(entries: Sequence, domain: Domain) -> Matrix:
    m = len(entries)
    return matrix([[entries[i] if i == j else 0 for j in range(m)] for i in range(m)], domain)


def embed_block(block: Matrix, offset: int, m: int) -> Matrix:
    """I_offset ⊕ block ⊕ I_rest 형태의 m×m 행렬"""
    k = block.shape[0]
    if offset < 0 or offset + k > m:
        raise DimensionMismatch(f"블록({k}×{k})이 위치 {offset}에서 {m}×{m}에 들어가지 않습니다")
    domain = block.domain
    entries = {i: {i: domain.one} for i in range(m) if not offset <= i < offset + k}
    for (i, j), e in block.to_dok().items():
        entries.setdefault(offset + i, {})[offset + j] = e
    return DomainMatrix(entries, (m, m), domain)


def entry(A: Matrix, i: int, j: int):
    return A.rep.getitem(i, j)


def dim(A: Matrix) -> int:
    return A.shape[0]


# ---------------------------------------------------------------------------
# 기본 연산
# ---------------------------------------------------------------------------

def _check_pair(A: Matrix, B: Matrix):
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"크기 불일치: {A.shape} vs {B.shape}")
    if A.domain != B.domain:
        raise DimensionMismatch(f"도메인 불일치: {A.domain} vs {B.domain}")


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    """같은 크기, 같은 도메인의 정사각 행렬 곱"""
    _check_pair(A, B)
    return A.matmul(B)


def mat_inverse(A: Matrix) -> Matrix:
    """역행렬

    Raises:
        SingularMatrix: 행렬식이 0일 때
    """
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"정사각 행렬이 아닙니다: {A.shape}")
    try:
        return A.inv().to_sparse()
    except (DMNonInvertibleMatrixError, ZeroDivisionError):
        raise SingularMatrix(f"가역이 아닌 {A.shape[0]}×{A.shape[0]} 행렬입니다") from None


def mat_equal(A: Matrix, B: Matrix) -> bool:
    _check_pair(A, B)
    return (A - B).is_zero_matrix


def is_identity(A: Matrix) -> bool:
    return mat_equal(A, identity(A.shape[0], A.domain))


def is_scalar_identity(A: Matrix) -> bool:
    """A = ±I 인지"""
    eye = identity(A.shape[0], A.domain)
    return mat_equal(A, eye) or mat_equal(A, -eye)


def conjugate(A: Matrix, P: Matrix) -> Matrix:
    """P⁻¹AP"""
    return mat_mul(mat_mul(mat_inverse(P), A), P)


def determinant(A: Matrix):
    return A.det()


# ---------------------------------------------------------------------------
# 부분공간
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """기약 행사다리꼴 기저로 저장된 부분공간 (같은 공간은 같은 저장값)"""

    ambient_dim: int
    basis: Tuple[tuple, ...]
    domain: Domain

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, domain: Domain) -> 'Subspace':
        rows = [[domain.convert(e) for e in v] for v in vectors]
        rows = [r for r in rows if any(r)]
        if not rows:
            return cls(ambient_dim, (), domain)
        reduced, pivots = DomainMatrix(rows, (len(rows), ambient_dim), domain, fmt='sparse').rref()
        dense = reduced.to_list()
        return cls(ambient_dim, tuple(tuple(dense[k]) for k in range(len(pivots))), domain)

    @classmethod
    def zero(cls, ambient_dim: int, domain: Domain) -> 'Subspace':
        return cls(ambient_dim, (), domain)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vector: Sequence) -> bool:
        return Subspace.span(self.basis + (tuple(vector),), self.ambient_dim, self.domain).dim == self.dim

    def is_invariant_under(self, A: Matrix) -> bool:
        """A·S ⊆ S"""
        return all(self.contains(apply(A, v)) for v in self.basis)

    def to_json(self) -> List[List[str]]:
        return [[format_scalar(e, self.domain) for e in v] for v in self.basis]


def apply(A: Matrix, v: Sequence) -> tuple:
    """행렬-벡터 곱 A·v"""
    column = DomainMatrix([[A.domain.convert(e)] for e in v], (len(v), 1), A.domain, fmt='sparse')
    return tuple(row[0] for row in A.matmul(column).to_list())


def kernel_basis(A: Matrix) -> Subspace:
    """핵 {v : A·v = 0}

    rref의 자유 열마다 기저 벡터 하나를 만든 뒤 정규화한다.
    """
    m = A.shape[1]
    domain = A.domain
    reduced, pivots = A.rref()
    dense = reduced.to_list()
    free = [j for j in range(m) if j not in pivots]
    vectors = []
    for f in free:
        v = [domain.zero] * m
        v[f] = domain.one
        for row, p in enumerate(pivots):
            v[p] = -dense[row][f]
        vectors.append(v)
    logger.debug(f"핵 계산: 계수 {len(pivots)}, 핵 차원 {len(free)}")
    return Subspace.span(vectors, m, domain)


def eigenspace(A: Matrix, lam) -> Subspace:
    """고유값 lam(+1 또는 −1)에 대한 고유공간 = ker(A − lam·I)"""
    if lam not in (1, -1):
        raise LinalgError(f"고유값은 ±1만 지원합니다: {lam}")
    shift = identity(A.shape[0], A.domain) * A.domain.convert(lam)
    return kernel_basis(A - shift)


def subspace_intersection(S: Subspace, T: Subspace) -> Subspace:
    """두 부분공간의 교집합 (직교여공간 없이 핵으로 계산)"""
    if S.ambient_dim != T.ambient_dim:
        raise DimensionMismatch("주변 차원이 다릅니다")
    if S.dim == 0 or T.dim == 0:
        return Subspace.zero(S.ambient_dim, S.domain)
    # Σ αᵢsᵢ = Σ βⱼtⱼ 인 (α, β)의 핵
    m = S.ambient_dim
    cols = list(S.basis) + [tuple(-e for e in t) for t in T.basis]
    system = DomainMatrix([[cols[k][i] for k in range(len(cols))] for i in range(m)],
                          (m, len(cols)), S.domain, fmt='sparse')
    coefficients = kernel_basis(system)
    vectors = []
    for coeff in coefficients.basis:
        vectors.append([sum((coeff[k] * S.basis[k][i] for k in range(S.dim)), S.domain.zero)
                        for i in range(m)])
    return Subspace.span(vectors, m, S.domain)


def common_fixed_space(gens: Sequence[Matrix]) -> Subspace:
    """모든 생성원이 고정하는 벡터의 공간 = ∩ ker(M − I)"""
    if not gens:
        raise LinalgError("생성원 목록이 비어 있습니다")
    m = gens[0].shape[0]
    eye = identity(m, gens[0].domain)
    stacked = DomainMatrix.vstack(*[(M - eye).to_sparse() for M in gens])
    return kernel_basis(stacked)


# ---------------------------------------------------------------------------
# 행렬 대수 폐포
# ---------------------------------------------------------------------------

def _flatten(A: Matrix) -> list:
    return [e for row in A.to_list() for e in row]


def _unflatten(v: Sequence, m: int, domain: Domain) -> Matrix:
    return matrix([list(v[i * m:(i + 1) * m]) for i in range(m)], domain)


def algebra_closure_dim(gens: Sequence[Matrix], m: Optional[int] = None) -> int:
    """생성원과 I로 생성되는 단위 행렬 대수의 차원

    폐포 기저에 생성원을 곱한 결과를 다시 행사다리꼴로 줄이며,
    새 피벗이 더 이상 생기지 않으면 멈춘다.
    """
    if not gens and m is None:
        raise LinalgError("생성원이 없으면 차원 m을 지정해야 합니다")
    dims = {M.shape for M in gens}
    if len(dims) > 1:
        raise DimensionMismatch(f"생성원 크기가 섞여 있습니다: {sorted(dims)}")
    domains = {M.domain for M in gens}
    if len(domains) > 1:
        raise DimensionMismatch("생성원 도메인이 섞여 있습니다")
    m = gens[0].shape[0] if gens else m
    domain = gens[0].domain if gens else QQ
    if not (domain == QQ or domain.is_FiniteField):
        raise LinalgError("대수 폐포는 유리수 또는 F_p 특수화에서만 계산합니다")

    eye = identity(m, domain)
    distinct: List[Matrix] = []
    for M in gens:
        if not mat_equal(M, eye) and all(not mat_equal(M, N) for N in distinct):
            distinct.append(M)

    basis_rows = [_flatten(eye)]
    known_pivots = {0}
    frontier = [eye]
    sweeps = 0
    while frontier and len(basis_rows) < m * m:
        sweeps += 1
        candidates = list(basis_rows)
        for M in distinct:
            candidates.extend(_flatten(M.matmul(F)) for F in frontier)
        reduced, pivots = DomainMatrix(candidates, (len(candidates), m * m), domain,
                                       fmt='sparse').rref()
        dense = reduced.to_list()
        # 피벗 집합은 부분공간이 커질 때 단조 증가하므로 새 피벗 행이 곧 새 원소
        frontier = [_unflatten(dense[k], m, domain)
                    for k, p in enumerate(pivots) if p not in known_pivots]
        basis_rows = [dense[k] for k in range(len(pivots))]
        known_pivots = set(pivots)
    logger.debug(f"대수 폐포: {m}×{m}, 생성원 {len(distinct)}개, {sweeps}회 반복, 차원 {len(basis_rows)}")
    return len(basis_rows)


# ---------------------------------------------------------------------------
# 특수화와 직렬화
# ---------------------------------------------------------------------------

def specialize_matrix(A: Matrix, binding: ParamBinding) -> Matrix:
    """유리함수 행렬의 각 원소를 바인딩으로 특수화"""
    domain = binding.domain
    rows = [[specialize(e, binding) for e in row] for row in A.to_list()]
    return matrix(rows, domain)


def matrix_to_json(A: Matrix) -> List[List[str]]:
    """행 우선 스칼라 문자열 배열"""
    return [[format_scalar(e, A.domain) for e in row] for row in A.to_list()]
