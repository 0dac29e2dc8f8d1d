import os
from dotenv import load_dotenv

# .env 파일 로드
load_dotenv()

# 로그 설정
LOG_DIR = os.getenv('CC_LOG_DIR', 'logs/runs')  # 세션 로그 디렉토리
LOG_LEVEL = os.getenv('CC_LOG_LEVEL', 'WARNING')  # 콘솔 로그 레벨

# LP 설정
LP_SOLVER = os.getenv('CC_LP_SOLVER', 'simplex')  # simplex | highs
LP_TOLERANCE = 1e-7        # 실행 가능성/최적성 허용 오차
PIVOT_TOLERANCE = 1e-9     # 피벗 선택 허용 오차 (열 최대 크기 대비)
ZERO_TOLERANCE = 1e-12     # 피벗 후 0으로 정리하는 크기
SIMPLEX_ITERATION_FACTOR = 100  # 반복 한도 = 100 * (행 + 열)

# 분수 클러스터링 설정
TRIANGLE_TOLERANCE = 1e-9   # 삼각 부등식/상자 제약 허용 오차
THRESHOLD_TOLERANCE = 1e-9  # 라운딩 임계값 비교 허용 오차
BOUND_TOLERANCE = 1e-6      # 정점별 비율 검사 허용 오차

# 정확 탐색 설정
ORACLE_HARD_CAP = 13
ORACLE_MAX_VERTICES = min(int(os.getenv('CC_ORACLE_MAX_VERTICES', ORACLE_HARD_CAP)), ORACLE_HARD_CAP)
EXACT_CHUNK_SIZE = 4096     # 분할 평가 배치 크기

# 스윕 설정
SWEEP_WORKERS = max(int(os.getenv('CC_SWEEP_WORKERS', '1')), 1)
