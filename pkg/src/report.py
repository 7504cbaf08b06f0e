"""
검증 결과 보고서
검사 기록(pass / fail / finding), 요약 집계, JSON·마크다운·CSV 출력
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import pandas as pd

logger = logging.getLogger(__name__)

TOOL_VERSION = '1.0.0'
SCHEMA_VERSION = 1


class CheckStatus(str, Enum):
    """검사 결과 상태

    FAIL은 내부 계약 위반, FINDING은 문헌 진술과 계산 결과의 불일치
    """
    PASS = 'pass'
    FAIL = 'fail'
    FINDING = 'finding'


@dataclass
class CheckRecord:
    """검사 한 건"""

    id: str
    status: CheckStatus
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {'id': self.id, 'status': self.status.value, 'detail': self.detail}


@dataclass
class VerdictReport:
    """검사 기록 모음과 설정 요약"""

    title: str
    records: List[CheckRecord] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)
    sections: Dict[str, Any] = field(default_factory=dict)

    def add(self, check_id: str, status: CheckStatus, **detail) -> CheckRecord:
        """기록 추가"""
        record = CheckRecord(check_id, CheckStatus(status), detail)
        self.records.append(record)
        if record.status == CheckStatus.FAIL:
            logger.error(f"검사 실패: {check_id} {detail}")
        elif record.status == CheckStatus.FINDING:
            logger.warning(f"불일치 발견: {check_id}")
        else:
            logger.debug(f"검사 통과: {check_id}")
        return record

    def extend(self, other: 'VerdictReport', prefix: str = ''):
        """다른 보고서의 기록과 섹션을 합침"""
        for record in other.records:
            self.records.append(CheckRecord(f"{prefix}{record.id}", record.status, record.detail))
        for key, value in other.sections.items():
            self.sections[f"{prefix}{key}"] = value

    def to_frame(self) -> pd.DataFrame:
        """기록 테이블 (id, status, detail)"""
        return pd.DataFrame(
            [
                {
                    'id': r.id,
                    'status': r.status.value,
                    'detail': json.dumps(r.detail, sort_keys=True, ensure_ascii=False),
                }
                for r in self.records
            ],
            columns=['id', 'status', 'detail'],
        )

    def summary(self) -> Dict[str, int]:
        """상태별 건수"""
        counts = self.to_frame()['status'].value_counts().to_dict()
        result = {status.value: int(counts.get(status.value, 0)) for status in CheckStatus}
        result['total'] = len(self.records)
        return result

    @property
    def passed(self) -> bool:
        return all(r.status != CheckStatus.FAIL for r in self.records)

    @property
    def has_findings(self) -> bool:
        return any(r.status == CheckStatus.FINDING for r in self.records)

    def exit_code(self, strict_paper: bool = False) -> int:
        if not self.passed:
            return 1
        if strict_paper and self.has_findings:
            return 1
        return 0

    def to_dict(self, generated_at: Optional[str] = None) -> Dict[str, Any]:
        return {
            'schema_version': SCHEMA_VERSION,
            'tool_version': TOOL_VERSION,
            'title': self.title,
            'generated_at': generated_at,
            'config': self.config,
            'summary': self.summary(),
            'records': [r.to_dict() for r in self.records],
            'sections': self.sections,
        }

    def to_json(self, generated_at: Optional[str] = None) -> str:
        return json.dumps(self.to_dict(generated_at), sort_keys=True, indent=2, ensure_ascii=False)

    def to_markdown(self, generated_at: Optional[str] = None) -> str:
        """사람이 읽는 요약"""
        summary = self.summary()
        lines = [
            f"# {self.title}",
            '',
            f"- tool version: {TOOL_VERSION} (schema {SCHEMA_VERSION})",
        ]
        if generated_at:
            lines.append(f"- generated at: {generated_at}")
        lines.append(
            f"- pass {summary['pass']} / fail {summary['fail']} / finding {summary['finding']}"
            f" (total {summary['total']})"
        )
        lines += ['', '| id | status | detail |', '|---|---|---|']
        for row in self.to_frame().itertuples(index=False):
            detail = row.detail.replace('|', '\\|')
            if len(detail) > 160:
                detail = detail[:157] + '...'
            lines.append(f"| {row.id} | {row.status} | {detail} |")
        return '\n'.join(lines) + '\n'

    def write(self, path: str, fmt: str = 'json', generated_at: Optional[str] = None) -> str:
        """파일로 저장"""
        text = self.to_markdown(generated_at) if fmt == 'md' else self.to_json(generated_at) + '\n'
        with open(path, 'w', encoding='utf-8') as fh:
            fh.write(text)
        logger.info(f"보고서 저장 완료: {path}")
        return path

    def export_csv(self, output_path: str) -> str:
        """기록을 CSV로 내보내기"""
        self.to_frame().to_csv(output_path, index=False, encoding='utf-8-sig')
        logger.info(f"기록 CSV 저장 완료: {output_path}")
        return output_path
