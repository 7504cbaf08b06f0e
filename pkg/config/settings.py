"""
설정 파일
fvb-lab 실행 설정 (명령, 족, 가닥 수, 소수, 표본 수, 시드, 출력)
"""

import os
from typing import Dict, List, Optional, Sequence

from dotenv import dotenv_values
from sympy import isprime

COMMANDS = ('verify', 'classify', 'census', 'analyze', 'faithfulness', 'report-all')
FORMATS = ('json', 'md')

CONFIG_KEYS = (
    'command', 'families', 'n', 'n_min', 'n_max', 'primes', 'block', 'samples', 'seed',
    'bind', 'max_len', 'strict_paper', 'out', 'format', 'csv', 'burnside_samples',
    'kernel_samples',
)

DEFAULT_SEED = 42
DEFAULT_LOG_FILE = 'fvb_lab.log'


def _as_int(value) -> int:
    try:
        return int(str(value).strip())
    except ValueError:
        raise ValueError(f"정수가 아닙니다: {value!r}") from None


def _as_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ('1', 'true', 'yes', 'on'):
        return True
    if text in ('0', 'false', 'no', 'off', ''):
        return False
    raise ValueError(f"참/거짓 값이 아닙니다: {value!r}")


def _as_list(value) -> List[str]:
    if isinstance(value, (list, tuple)):
        return [str(v).strip() for v in value if str(v).strip()]
    return [part.strip() for part in str(value).split(',') if part.strip()]


def _as_int_list(value) -> List[int]:
    return [_as_int(v) for v in _as_list(value)]


class RunConfig:
    """fvb-lab 실행 설정 클래스

    우선순위: 생성자 인자(명령행 플래그) > 설정 파일 > 환경변수 > 기본값
    """

    def __init__(self, command: Optional[str] = None, families: Optional[Sequence[str]] = None,
                 n: Optional[int] = None, n_min: Optional[int] = None, n_max: Optional[int] = None,
                 primes: Optional[Sequence[int]] = None, block: Optional[int] = None,
                 samples: Optional[int] = None, seed: Optional[int] = None, bind: Optional[str] = None,
                 max_len: Optional[int] = None, strict_paper: Optional[bool] = None,
                 out: Optional[str] = None, fmt: Optional[str] = None, csv: Optional[str] = None,
                 burnside_samples: Optional[int] = None, kernel_samples: Optional[int] = None,
                 config_path: Optional[str] = None):
        """
        Args:
            command: 실행 명령 (verify, classify, census, analyze, faithfulness, report-all)
            families: 족 태그 목록 (비어 있으면 명령별 기본 족)
            n: 가닥 수 (census에서는 관계식을 적용할 n)
            n_min, n_max: verify의 n 범위
            primes: 전수 조사 소수 목록
            block: 전수 조사 블록 크기 (2 또는 3)
            samples: 기약성 비교 표본 수
            seed: 난수 시드
            bind: 'k=v,...' 형식 바인딩
            max_len: 핵 탐색 최대 길이
            strict_paper: 문헌 불일치도 실패로 처리
            out: 보고서 경로
            fmt: 보고서 형식 (json, md)
            csv: 기록 CSV 경로
            burnside_samples: 폐포 판정 바인딩 수
            kernel_samples: 핵 탐색 무작위 바인딩 수
            config_path: key=value 설정 파일 경로
        """
        self.config_path = config_path
        file_values = self._load_config_file(config_path) if config_path else {}

        def pick(key, flag_value, cast, default, env_var: Optional[str] = None):
            if flag_value is not None:
                return cast(flag_value)
            raw = file_values.get(key)
            if raw not in (None, ''):
                return cast(raw)
            if env_var and os.getenv(env_var):
                return cast(os.getenv(env_var))
            return default

        self.command = pick('command', command, str, 'report-all')
        self.families = pick('families', families, _as_list, [])
        self.n = pick('n', n, _as_int, None)
        self.n_min = pick('n_min', n_min, _as_int, 2)
        self.n_max = pick('n_max', n_max, _as_int, 6)
        self.primes = pick('primes', primes, _as_int_list, [3, 5])
        self.block = pick('block', block, _as_int, 2)
        self.samples = pick('samples', samples, _as_int, 100)
        self.seed = pick('seed', seed, _as_int, DEFAULT_SEED, env_var='FVBLAB_SEED')
        self.bind = pick('bind', bind, str, '')
        self.max_len = pick('max_len', max_len, _as_int, 24)
        self.strict_paper = pick('strict_paper', strict_paper, _as_bool, False)
        self.out = pick('out', out, str, None)
        self.fmt = pick('format', fmt, str, 'json')
        self.csv = pick('csv', csv, str, None)
        self.burnside_samples = pick('burnside_samples', burnside_samples, _as_int, 20)
        self.kernel_samples = pick('kernel_samples', kernel_samples, _as_int, 20)
        self.log_file = os.getenv('FVBLAB_LOG_FILE') or DEFAULT_LOG_FILE

    @staticmethod
    def _load_config_file(path: str) -> Dict[str, str]:
        """key=value 설정 파일 읽기"""
        if not os.path.isfile(path):
            raise ValueError(f"설정 파일을 찾을 수 없습니다: {path}")
        values = {k.strip().lower().replace('-', '_'): v for k, v in dotenv_values(path).items()}
        unknown = sorted(k for k in values if k not in CONFIG_KEYS)
        if unknown:
            raise ValueError(f"알 수 없는 설정 키: {unknown}")
        return {k: (v if v is not None else '') for k, v in values.items()}

    def validate(self):
        """설정 유효성 검사"""
        if self.command not in COMMANDS:
            raise ValueError(f"알 수 없는 명령입니다: {self.command} (가능: {', '.join(COMMANDS)})")

        if self.fmt not in FORMATS:
            raise ValueError(f"보고서 형식은 json 또는 md 여야 합니다: {self.fmt}")

        if self.n is not None and self.n < 2:
            raise ValueError(f"n은 2 이상이어야 합니다: {self.n}")

        if self.n_min < 2 or self.n_max < self.n_min:
            raise ValueError(f"n 범위가 올바르지 않습니다: {self.n_min}..{self.n_max}")

        if not self.primes or not all(isprime(p) for p in self.primes):
            raise ValueError(f"소수 목록이 올바르지 않습니다: {self.primes}")

        if self.block not in (2, 3):
            raise ValueError(f"블록 크기는 2 또는 3이어야 합니다: {self.block}")

        for name in ('samples', 'burnside_samples', 'kernel_samples'):
            if getattr(self, name) < 1:
                raise ValueError(f"{name}는 1 이상이어야 합니다: {getattr(self, name)}")

        if self.max_len < 0:
            raise ValueError(f"max_len은 0 이상이어야 합니다: {self.max_len}")

        for path in (self.out, self.csv):
            if path:
                parent = os.path.dirname(os.path.abspath(path))
                if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
                    raise ValueError(f"출력 경로에 쓸 수 없습니다: {path}")

    def to_dict(self) -> Dict[str, object]:
        """보고서에 넣을 설정 요약 (경로 제외)"""
        return {
            'command': self.command,
            'families': list(self.families),
            'n': self.n,
            'n_min': self.n_min,
            'n_max': self.n_max,
            'primes': list(self.primes),
            'block': self.block,
            'samples': self.samples,
            'seed': self.seed,
            'bind': self.bind,
            'max_len': self.max_len,
            'strict_paper': self.strict_paper,
            'format': self.fmt,
            'burnside_samples': self.burnside_samples,
            'kernel_samples': self.kernel_samples,
        }

    def __str__(self):
        families = ','.join(self.families) if self.families else 'default'
        return (f"RunConfig(command={self.command}, families={families}, seed={self.seed}, "
                f"primes={self.primes}, samples={self.samples}, strict_paper={self.strict_paper})")


# 환경변수 템플릿
ENV_TEMPLATE = """
# 기본 난수 시드 (--seed 가 없을 때)
FVBLAB_SEED=42

# 로그 파일 경로
FVBLAB_LOG_FILE=fvb_lab.log
"""
