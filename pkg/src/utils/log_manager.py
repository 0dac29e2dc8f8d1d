import os
import json
import logging
import traceback
from contextlib import contextmanager
from queue import Queue, Empty
from threading import Thread
from datetime import datetime
from typing import Dict, Iterator, Optional, List, Any
from dataclasses import dataclass, asdict

import numpy as np

import config


class ReportEncoder(json.JSONEncoder):
    """datetime 및 numpy 값을 JSON으로 직렬화하기 위한 인코더 (보고서와 세션 로그 공용)"""
    def default(self, obj: Any) -> Any:
        if isinstance(obj, datetime):
            return obj.strftime("%Y-%m-%d %H:%M:%S")
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        return super().default(obj)


@dataclass
class LogEntry:
    """세션 로그 한 줄"""
    timestamp: str
    category: str
    message: str
    data: Optional[Dict] = None
    stacktrace: Optional[List[str]] = None

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> 'LogEntry':
        return cls(
            timestamp=data["timestamp"],
            category=data["category"],
            message=data["message"],
            data=data.get("data"),
            stacktrace=data.get("stacktrace"),
        )


class LogCategory:
    """로그 카테고리"""
    SYSTEM = "SYSTEM"          # 세션 시작/종료, 파이프라인 요약
    ERROR = "ERROR"            # 오류
    INSTANCE = "INSTANCE"      # 인스턴스 생성/입출력
    LP = "LP"                  # LP 구성 및 풀이
    ROUNDING = "ROUNDING"      # 라운딩
    AUDIT = "AUDIT"            # 교차 간선 감사
    ORACLE = "ORACLE"          # 정확 탐색
    BASELINE = "BASELINE"      # ACN 기준선
    SWEEP = "SWEEP"            # 스윕 실행


class LogManager:
    """명령 실행 단위(세션)의 JSON 줄 로그를 쓰레드로 기록하는 관리자"""

    def __init__(self, base_dir: Optional[str] = None):
        """
        Args:
            base_dir: 세션 로그 디렉토리 (기본값: config.LOG_DIR)
        """
        self.base_dir = base_dir or config.LOG_DIR
        self.current_log_file: Optional[str] = None
        self.log_queue: Queue = Queue()
        self.is_running = False
        self.logging_thread: Optional[Thread] = None

        self.logger = logging.getLogger('log_manager')
        self.logger.setLevel(logging.INFO)

        try:
            os.makedirs(self.base_dir, exist_ok=True)
        except Exception as e:
            self.logger.error(f"로그 디렉토리 생성 실패: {str(e)}")
            raise

    def start_new_session(self, label: str):
        """새 세션 파일 <base_dir>/<label>_<timestamp>.log 을 열고 기록 쓰레드를 시작합니다.

        Args:
            label: 세션 이름 (보통 CLI 하위 명령 이름)
        """
        try:
            if self.is_running:
                self.stop()

            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
            self.current_log_file = os.path.join(self.base_dir, f"{label}_{timestamp}.log")

            self.is_running = True
            self.logging_thread = Thread(target=self._logging_worker, daemon=True)
            self.logging_thread.start()

            self.log(
                category=LogCategory.SYSTEM,
                message=f"새로운 세션 시작: {label}",
                data={"label": label, "log_file": self.current_log_file}
            )

        except Exception as e:
            self.logger.error(f"새 세션 시작 실패: {str(e)}")
            raise

    @contextmanager
    def session(self, label: str) -> Iterator['LogManager']:
        """with 블록 동안 세션을 열어 두고, 블록이 끝나면 남은 로그를 모두 기록합니다."""
        self.start_new_session(label)
        try:
            yield self
        finally:
            self.stop()

    def stop(self):
        """큐에 남은 로그를 모두 기록한 뒤 기록 쓰레드를 중지합니다."""
        if self.is_running:
            self.log_queue.join()
            self.is_running = False
            if self.logging_thread:
                self.logging_thread.join()

    def log(self, category: str, message: str, data: Optional[Dict] = None):
        """로그를 큐에 추가합니다. ERROR 카테고리는 호출 스택을 함께 남깁니다.

        Args:
            category: LogCategory 값
            message: 로그 메시지
            data: 구조화된 추가 데이터
        """
        try:
            stacktrace = traceback.format_stack()[:-1] if category == LogCategory.ERROR else None
            self.log_queue.put(LogEntry(
                timestamp=datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
                category=category,
                message=message,
                data=data,
                stacktrace=stacktrace
            ))

        except Exception as e:
            self.logger.error(f"로그 추가 실패: {str(e)}")

    def read_entries(self, path: Optional[str] = None) -> List[LogEntry]:
        """세션 파일(기본값: 현재 파일)의 로그를 읽습니다."""
        path = path or self.current_log_file
        if not path or not os.path.exists(path):
            return []
        with open(path, encoding='utf-8') as f:
            return [LogEntry.from_dict(json.loads(line)) for line in f if line.strip()]

    def _logging_worker(self):
        while self.is_running:
            try:
                log_entry = self.log_queue.get(timeout=0.2)
            except Empty:
                continue
            try:
                self._write_log(log_entry)
            except Exception as e:
                self.logger.error(f"로그 기록 실패: {str(e)}")
            finally:
                self.log_queue.task_done()

    def _write_log(self, log_entry: LogEntry):
        if not self.current_log_file:
            self.logger.error("현재 로그 파일이 설정되지 않았습니다.")
            return
        with open(self.current_log_file, 'a', encoding='utf-8') as f:
            f.write(json.dumps(log_entry.to_dict(), ensure_ascii=False, cls=ReportEncoder) + '\n')

    def __del__(self):
        try:
            self.stop()
        except Exception:
            pass
