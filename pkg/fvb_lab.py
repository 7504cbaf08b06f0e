#!/usr/bin/env python3
"""
fvb-lab: 평탄 가상 꼬임군 FVB_n 국소 표현 검증 도구
족 목록의 관계식 검증, 분류 재유도, F_p 전수 조사, 기약성·충실성 분석

사용법:
    python fvb_lab.py verify --all-families
    python fvb_lab.py classify
    python fvb_lab.py census --prime 3 --block 2 --n 4
    python fvb_lab.py analyze --family l3 --samples 100 --strict-paper
    python fvb_lab.py faithfulness --family l6 --bind "c=1,z=1" --max-len 24
    python fvb_lab.py report-all --seed 42 --out report.json
"""

import argparse
import logging
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

# src 디렉토리를 Python 경로에 추가
current_dir = Path(__file__).parent
src_dir = current_dir / 'src'
sys.path.insert(0, str(src_dir))
sys.path.insert(0, str(current_dir))

# 모듈 import
try:
    import numpy as np
    from dotenv import load_dotenv

    from braid_groups import Word, fvb_presentation
    from classifier import (
        SYSTEM_KINDS, BranchSolverError, CaseTrace, branch_solve, build_system,
        census_fvb_local, census_involutions_2x2, compare_with_paper, format_case_tree,
        recheck_survivors, restrict_system, solution_forms,
    )
    from config.settings import COMMANDS, RunConfig
    from rep_analysis import (
        CONDITION_FAMILIES, check_paper_eigenvectors, compare_irreducibility, compare_readings,
        dihedral_power_formula, kernel_search, random_binding, reducibility_experiment,
        symbolic_witnesses,
    )
    from rep_catalog import (
        CATALOG_FAMILIES, DELTA_FAMILIES, GAMMA_FAMILIES, LAMBDA_FAMILIES, FamilyId,
        CatalogError, catalog_dump, check_determinants, family, flatness_check, verify_relations,
    )
    from report import CheckStatus, VerdictReport
    from scalar_field import ParamBinding, ScalarFieldError
except ImportError as e:
    print(f"❌ 필수 모듈을 찾을 수 없습니다: {e}")
    print("   pip install -r requirements.txt 후 다시 실행하세요.")
    sys.exit(1)

# 환경변수 로드
load_dotenv()

# 로깅 설정
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[logging.StreamHandler()]
)
logger = logging.getLogger(__name__)

PASS = CheckStatus.PASS
FAIL = CheckStatus.FAIL
FINDING = CheckStatus.FINDING

# 전체 점검 기본값
REPORT_ALL_SAMPLES = 1000
REPORT_ALL_PRIMES = (3, 5, 7)
DIHEDRAL_N = 50

# 기약성 공식이 퇴화하는 바인딩 (분모 d±1, t±1, c, z 가 0)
DEGENERATE_BINDINGS: Dict[FamilyId, str] = {
    FamilyId.L1: 'b=1,d=1,y=2,t=-1',
    FamilyId.L2: 'c=0,y=1,t=1',
    FamilyId.L3: 'y=1,t=1',
    FamilyId.L4: 'b=1,d=-1,z=0',
    FamilyId.L5: 'b=2,d=1',
}

# 폐포 판정 기본 n 값
REDUCIBILITY_N: Dict[FamilyId, Tuple[int, ...]] = {
    FamilyId.G1: (3, 4, 5, 6, 7),
    FamilyId.G2: (3, 4, 5),
    **{f: (10,) for f in DELTA_FAMILIES},
}


def resolve_families(tags: Sequence[str], default: Sequence[FamilyId]) -> List[FamilyId]:
    """족 태그 목록 해석 ('all'은 카탈로그 전체)"""
    if not tags:
        return list(default)
    resolved: List[FamilyId] = []
    for tag in tags:
        if tag == 'all':
            candidates = list(CATALOG_FAMILIES)
        else:
            try:
                candidates = [FamilyId(tag.lower())]
            except ValueError:
                raise ValueError(f"알 수 없는 족 태그: {tag}") from None
            if candidates[0] == FamilyId.CUSTOM:
                raise ValueError("custom 족은 명령행에서 쓸 수 없습니다")
        for fam in candidates:
            if fam not in resolved:
                resolved.append(fam)
    return resolved


class FvbLab:
    """fvb-lab 메인 클래스"""

    def __init__(self, config: RunConfig):
        """
        Args:
            config: 검증된 실행 설정
        """
        self.config = config
        self.setup_logging()

    def setup_logging(self):
        """로깅 설정"""
        # 상세 로그 파일 (FVBLAB_LOG_FILE)
        root = logging.getLogger()
        log_path = os.path.abspath(self.config.log_file)
        if not any(isinstance(h, logging.FileHandler) and h.baseFilename == log_path
                   for h in root.handlers):
            file_handler = logging.FileHandler(log_path)
            file_handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))
            root.addHandler(file_handler)

        # 결과 로그용 별도 로거
        self.result_logger = logging.getLogger('lab_results')
        if not self.result_logger.handlers:
            handler = logging.FileHandler('lab_results.log')
            formatter = logging.Formatter('%(asctime)s - %(message)s')
            handler.setFormatter(formatter)
            self.result_logger.addHandler(handler)
        self.result_logger.setLevel(logging.INFO)

    def _binding(self, modulus: Optional[int] = None) -> Optional[ParamBinding]:
        return ParamBinding.parse(self.config.bind, modulus) if self.config.bind else None

    def _verify_n_values(self, fam: FamilyId) -> List[int]:
        if fam.is_lambda:
            return [2]
        if self.config.n is not None:
            return [self.config.n]
        low = 4 if fam.is_delta else 3
        return list(range(max(low, self.config.n_min), max(low, self.config.n_max) + 1))

    # ------------------------------------------------------------------
    # 명령
    # ------------------------------------------------------------------

    def verify(self, families: Optional[Sequence[FamilyId]] = None) -> VerdictReport:
        """관계식, 행렬식, 평탄성 검증"""
        families = families or resolve_families(self.config.families, CATALOG_FAMILIES)
        report = VerdictReport('verify')
        print(f"📊 관계식 검증: {len(families)}개 족")
        for fam in families:
            for n in self._verify_n_values(fam):
                rep = family(fam, n)
                report.extend(verify_relations(rep, failure_status=FINDING))
                bad = [g for g, ok in check_determinants(rep) if not ok]
                report.add(f"{fam.value}/n{n}/determinant", FINDING if bad else PASS, singular_or_foreign=bad)
                if fam.is_braid_only:
                    flat = verify_relations(rep, fvb_presentation(n), failure_status=FINDING)
                    not_flat = flatness_check(rep)
                    report.add(
                        f"{fam.value}/n{n}/flatness", PASS if not_flat else FINDING,
                        flat=not not_flat,
                        fvb_failures=flat.summary()['finding'],
                    )
        report.sections['catalog'] = catalog_dump(families, self.config.n or 4)
        return report

    def classify(self) -> VerdictReport:
        """방정식 생성, 문헌 목록 대조, 분기 풀이"""
        report = VerdictReport('classify')
        print("📊 분류 재유도")
        for kind in SYSTEM_KINDS:
            system = build_system(kind)
            comparison = compare_with_paper(system)
            report.add(f"classify/{kind}/equations", PASS if comparison['match'] else FINDING, **comparison)
            report.sections[f"classify/{kind}/system"] = system.to_json()

        local = build_system('fvb2_local')
        expected_forms = {'scalar', 'unipotent', 'generic'}
        for part, unknowns in (('sigma', ('a', 'b', 'c', 'd')), ('rho', ('x', 'y', 'z', 't'))):
            self._solve_into(report, restrict_system(local, unknowns), f"classify/fvb2_local/{part}",
                             lambda forms: forms == expected_forms)

        homog = build_system('fvbn_homog_2block')
        self._solve_into(report, homog, 'classify/fvbn_homog_2block',
                         lambda types: {'trivial', 'gamma1', 'gamma2'} <= types and 'unclassified' not in types)
        return report

    def _solve_into(self, report: VerdictReport, system, prefix: str, accept):
        trace = CaseTrace()
        try:
            solutions = branch_solve(system, trace=trace)
        except BranchSolverError as e:
            report.add(f"{prefix}/solve", FAIL, error=str(e))
            return
        forms = solution_forms(system, solutions)
        report.add(f"{prefix}/forms", PASS if accept(set(forms)) else FINDING,
                   forms=sorted(set(forms)), branches=len(solutions))
        report.sections[f"{prefix}/case_tree"] = format_case_tree(trace)
        report.sections[f"{prefix}/solutions"] = [
            dict(s.to_json(), form=f) for s, f in zip(solutions, forms)
        ]

    def census(self, primes: Optional[Sequence[int]] = None) -> VerdictReport:
        """F_p 전수 조사"""
        primes = list(primes or self.config.primes)
        block = self.config.block
        n_probe = self.config.n or (4 if block == 2 else 5)
        report = VerdictReport('census')
        print(f"📊 전수 조사: p ∈ {primes}, 블록 {block}, n={n_probe}")
        for p in primes:
            inv = census_involutions_2x2(p)
            expected = p * p + p + 2 if p > 2 else None
            if not inv.conserved:
                status = FAIL
            elif inv.unmatched or (expected is not None and inv.solutions != expected):
                status = FINDING
            else:
                status = PASS
            report.add(f"census/2x2/p{p}", status, expected_count=expected, **inv.to_dict())
        for p in primes:
            local = census_fvb_local(p, block, n_probe)
            if not local.conserved:
                status = FAIL
            elif local.unmatched and p > 2:
                status = FINDING
            else:
                status = PASS
            record_id = f"census/block{block}/p{p}/n{n_probe}"
            report.add(record_id, status, **local.to_dict())
            stable = recheck_survivors(local, n_probe + 1)
            report.add(f"{record_id}/recheck_n{n_probe + 1}", PASS if stable else FINDING,
                       survivors=local.solutions)
        return report

    def analyze(self, families: Optional[Sequence[FamilyId]] = None,
                samples: Optional[int] = None) -> VerdictReport:
        """기약성 비교와 폐포 판정"""
        families = families or resolve_families(
            self.config.families, LAMBDA_FAMILIES + GAMMA_FAMILIES + DELTA_FAMILIES,
        )
        samples = samples or self.config.samples
        seed = self.config.seed
        report = VerdictReport('analyze')
        print(f"📊 기약성 분석: {len(families)}개 족, 표본 {samples}개, seed={seed}")
        for fam in families:
            if fam.is_lambda:
                self._analyze_lambda(report, fam, samples, seed)
            elif fam.is_gamma or fam.is_delta:
                n_values = (self.config.n,) if self.config.n else REDUCIBILITY_N[fam]
                for row in reducibility_experiment(fam, n_values, self.config.burnside_samples, seed):
                    status = FINDING if row['verdict'] == 'split' or row['agrees'] is False else PASS
                    report.add(f"analyze/reducibility/{fam.value}/n{row['n']}", status, **row)
            else:
                logger.warning(f"{fam.label}: 분석 대상이 아닌 족은 건너뜁니다")
        return report

    def _analyze_lambda(self, report: VerdictReport, fam: FamilyId, samples: int, seed: int):
        comparison = compare_irreducibility(fam, samples, seed)
        if comparison.oracle_mismatches or not comparison.conserved:
            status = FAIL
        elif comparison.disagreements:
            status = FINDING
        else:
            status = PASS
        detail = comparison.to_dict()
        detail['disagreements'] = len(comparison.disagreements)
        detail['examples'] = comparison.disagreements[:5]
        report.add(f"analyze/irreducibility/{fam.value}", status, **detail)
        if comparison.disagreements:
            report.sections[f"analyze/irreducibility/{fam.value}/disagreements"] = comparison.disagreements
        if fam == FamilyId.L1:
            readings = compare_readings(fam, min(samples, 200), seed)
            supported = min(readings, key=lambda k: (readings[k], k))
            report.add(f"analyze/irreducibility/{fam.value}/reading", PASS,
                       disagreements=readings, supported=supported)
        if fam in CONDITION_FAMILIES:
            rng = np.random.default_rng(seed)
            bindings = [random_binding(family(fam, 2), rng), ParamBinding.parse(DEGENERATE_BINDINGS[fam])]
            for label, binding in zip(('random', 'degenerate'), bindings):
                rows = check_paper_eigenvectors(fam, binding)
                wrong = [r for r in rows if r['agrees'] is False]
                report.add(f"analyze/eigenvectors/{fam.value}/{label}", FINDING if wrong else PASS,
                           binding=binding.to_text(), checks=rows)

    def faithfulness(self, families: Optional[Sequence[FamilyId]] = None) -> VerdictReport:
        """증거 단어, 거듭제곱 공식, 핵 탐색"""
        report = VerdictReport('faithfulness')
        print("📊 충실성 분석")
        for k, row in enumerate(symbolic_witnesses()):
            report.add(f"faithfulness/witness/{row['family']}/{k}", PASS if row['holds'] else FINDING, **row)
        for fam in (FamilyId.L6, FamilyId.L7):
            ok = dihedral_power_formula(fam, DIHEDRAL_N)
            report.add(f"faithfulness/dihedral/{fam.value}", PASS if ok else FINDING, N=DIHEDRAL_N)

        families = families or resolve_families(self.config.families, ())
        binding = self._binding()
        if families:
            rng = np.random.default_rng(self.config.seed)
            for fam in families:
                n = 2 if fam.is_lambda else (self.config.n or 3)
                rep = family(fam, n)
                use = binding if binding is not None else random_binding(rep, rng)
                max_len = min(self.config.max_len, 24 if n == 2 else 6)
                finding = kernel_search(rep.specialize(use), max_len)
                report.add(f"faithfulness/kernel/{fam.value}/n{n}", PASS, **finding.to_dict())
        else:
            self._default_kernel_probes(report)
        return report

    def _default_kernel_probes(self, report: VerdictReport):
        """λ6 (c=z 에서만 핵), γ1 (σ₁ ↦ I) 기본 탐색"""
        lam6 = family(FamilyId.L6, 2)
        hit = kernel_search(lam6.specialize(ParamBinding.parse('c=1,z=1')), 4)
        ok = hit.word is not None and str(hit.word) == 's1 r1'
        report.add('faithfulness/kernel/l6/c=z', PASS if ok else FINDING, **hit.to_dict())

        rng = np.random.default_rng(self.config.seed)
        misses = []
        for _ in range(self.config.kernel_samples):
            binding = random_binding(
                lam6, rng, lambda v: dict(v, z=v['c'] + 1) if v['c'] == v['z'] else v,
            )
            result = kernel_search(lam6.specialize(binding), 24)
            if result.kind != 'no_witness_up_to_length':
                misses.append(result.to_dict())
        report.add('faithfulness/kernel/l6/c!=z', FINDING if misses else PASS,
                   samples=self.config.kernel_samples, max_len=24, witnesses=misses)

        gamma1 = family(FamilyId.G1, 3)
        found = kernel_search(gamma1.specialize(random_binding(gamma1, rng)), 1)
        report.add('faithfulness/kernel/g1/n3', PASS if found.word == Word.parse('s1') else FINDING,
                   **found.to_dict())

    def report_all(self) -> VerdictReport:
        """전체 점검 (고정 순서)"""
        report = VerdictReport('report-all')
        report.extend(self.verify(list(CATALOG_FAMILIES)))
        report.extend(self.classify())
        report.extend(self.census(REPORT_ALL_PRIMES))
        report.extend(self.analyze(list(LAMBDA_FAMILIES + GAMMA_FAMILIES + DELTA_FAMILIES),
                                   REPORT_ALL_SAMPLES))
        report.extend(self.faithfulness(()))
        covered = {r.id.split('/')[0] for r in report.records}
        missing = [f.value for f in CATALOG_FAMILIES if f.value not in covered]
        report.add('report-all/coverage', FAIL if missing else PASS,
                   families=len(CATALOG_FAMILIES), missing=missing)
        return report

    # ------------------------------------------------------------------
    # 실행
    # ------------------------------------------------------------------

    def print_summary(self, report: VerdictReport):
        """요약 출력"""
        summary = report.summary()
        print("\n📈 결과 요약")
        print("=" * 50)
        print(f"✅ 통과: {summary['pass']:,}건")
        print(f"⚠️ 문헌 불일치: {summary['finding']:,}건")
        print(f"❌ 실패: {summary['fail']:,}건")
        findings = [r.id for r in report.records if r.status == FINDING]
        for record_id in findings[:10]:
            print(f"  ⚠️ {record_id}")
        if len(findings) > 10:
            print(f"  ... 외 {len(findings) - 10}건")

    def dispatch(self) -> VerdictReport:
        command = self.config.command
        if command == 'verify':
            return self.verify()
        if command == 'classify':
            return self.classify()
        if command == 'census':
            return self.census()
        if command == 'analyze':
            return self.analyze()
        if command == 'faithfulness':
            return self.faithfulness()
        return self.report_all()

    def run(self) -> Tuple[int, VerdictReport]:
        """메인 실행 함수

        Returns:
            (종료 코드, 보고서)
        """
        start_time = datetime.now()
        command = self.config.command

        print(f"🚀 fvb-lab {command} 시작")
        print("=" * 60)
        logger.info(f"실행 설정: {self.config}")

        usage_error = False
        try:
            report = self.dispatch()
        except (ScalarFieldError, CatalogError) as e:
            # 바인딩·족 조건 위반은 사용 오류
            logger.error(f"{command} 입력 오류: {str(e)}")
            print(f"\n❌ {command} 입력 오류: {str(e)}")
            report = VerdictReport(command)
            report.add(f"{command}/error", FAIL, error=str(e), type=type(e).__name__)
            usage_error = True
        except Exception as e:
            logger.error(f"{command} 실행 중 오류: {str(e)}")
            print(f"\n❌ {command} 실행 실패: {str(e)}")
            report = VerdictReport(command)
            report.add(f"{command}/error", FAIL, error=str(e), type=type(e).__name__)

        report.config = self.config.to_dict()
        generated_at = start_time.isoformat(timespec='seconds')
        exit_code = 2 if usage_error else report.exit_code(self.config.strict_paper)

        try:
            if self.config.out:
                report.write(self.config.out, self.config.fmt, generated_at)
                print(f"📄 보고서 저장: {self.config.out}")
            if self.config.csv:
                report.export_csv(self.config.csv)
                print(f"📄 기록 CSV 저장: {self.config.csv}")
        except OSError as e:
            logger.error(f"보고서 저장 실패: {str(e)}")
            print(f"\n❌ 보고서를 저장할 수 없습니다: {str(e)}")
            exit_code = 2

        self.print_summary(report)

        duration = datetime.now() - start_time
        print(f"\n⏱️ 실행 시간: {duration.total_seconds():.1f}초")
        if exit_code == 0:
            print("\n🎉 완료!")

        summary = report.summary()
        self.result_logger.info(
            f"{command} finished - exit {exit_code}, pass {summary['pass']}, "
            f"finding {summary['finding']}, fail {summary['fail']}, "
            f"duration {duration.total_seconds():.1f}s"
        )
        return exit_code, report


def run(config: RunConfig) -> Tuple[int, VerdictReport]:
    """설정 하나로 실행"""
    return FvbLab(config).run()


def report_all(seed: int) -> VerdictReport:
    """주어진 시드로 전체 점검 보고서 생성"""
    return FvbLab(RunConfig(command='report-all', seed=seed)).report_all()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='평탄 가상 꼬임군 국소 표현 검증 도구',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
사용 예시:
  python fvb_lab.py verify --all-families
  python fvb_lab.py census --prime 3 --prime 5 --block 2 --n 4
  python fvb_lab.py analyze --family l1 --samples 1000 --seed 42
  python fvb_lab.py faithfulness --family l6 --bind "c=1,z=1" --max-len 24
  python fvb_lab.py report-all --out report.json --format json
        """
    )

    parser.add_argument('command', nargs='?', choices=COMMANDS, help='실행 명령')
    parser.add_argument('--family', action='append', help='족 태그 (반복 가능, 예: l1, g2, d5, burau)')
    parser.add_argument('--all-families', action='store_true', help='카탈로그 전체')
    parser.add_argument('--n', type=int, help='가닥 수')
    parser.add_argument('--n-min', type=int, help='verify 최소 n')
    parser.add_argument('--n-max', type=int, help='verify 최대 n')
    parser.add_argument('--prime', type=int, action='append', help='전수 조사 소수 (반복 가능)')
    parser.add_argument('--block', type=int, help='전수 조사 블록 크기 (2 또는 3)')
    parser.add_argument('--samples', type=int, help='기약성 비교 표본 수')
    parser.add_argument('--seed', type=int, help='난수 시드 (기본: FVBLAB_SEED 또는 42)')
    parser.add_argument('--bind', type=str, help='매개변수 바인딩 (예: "c=1,z=1")')
    parser.add_argument('--max-len', type=int, help='핵 탐색 최대 길이')
    parser.add_argument('--strict-paper', action='store_true', default=None, help='문헌 불일치도 실패로 처리')
    parser.add_argument('--out', type=str, help='보고서 파일 경로')
    parser.add_argument('--format', choices=('json', 'md'), help='보고서 형식')
    parser.add_argument('--csv', type=str, help='기록을 CSV로 내보낼 경로')
    parser.add_argument('--config', type=str, help='key=value 설정 파일')
    parser.add_argument('--verbose', action='store_true', help='상세 로그 출력')
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    families = ['all'] if args.all_families else args.family
    return RunConfig(
        command=args.command, families=families, n=args.n, n_min=args.n_min, n_max=args.n_max,
        primes=args.prime, block=args.block, samples=args.samples, seed=args.seed, bind=args.bind,
        max_len=args.max_len, strict_paper=args.strict_paper, out=args.out, fmt=args.format,
        csv=args.csv, config_path=args.config,
    )


def main(argv: Optional[Sequence[str]] = None):
    """메인 함수"""
    parser = build_parser()
    args = parser.parse_args(argv)

    # 로깅 레벨 설정
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        config = config_from_args(args)
        config.validate()
        resolve_families(config.families, ())
        if config.bind:
            ParamBinding.parse(config.bind)
    except ValueError as e:
        logger.error(f"설정 오류: {str(e)}")
        print(f"❌ 설정 오류: {str(e)}")
        sys.exit(2)

    exit_code, _ = run(config)

    # 종료 코드 설정
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
