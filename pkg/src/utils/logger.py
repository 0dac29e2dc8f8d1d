import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

import config


def setup_logger(name: str, log_dir: str = "logs") -> logging.Logger:
    """로거를 설정합니다.

    표준 출력은 리포트/CSV 전용이므로 콘솔 핸들러는 표준 에러로 출력합니다.

    Args:
        name: 로거 이름
        log_dir: 파일 로그 디렉토리

    Returns:
        설정된 로거
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger
    logger.setLevel(logging.DEBUG)

    formatter = logging.Formatter(
        '%(asctime)s [%(levelname)s] %(name)s: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    # 콘솔 핸들러
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING))
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # 파일 핸들러
    log_path = Path(log_dir)
    log_path.mkdir(parents=True, exist_ok=True)

    file_handler = RotatingFileHandler(
        log_path / f"{name}.log",
        maxBytes=10*1024*1024,  # 10MB
        backupCount=5,
        encoding='utf-8'
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    return logger
