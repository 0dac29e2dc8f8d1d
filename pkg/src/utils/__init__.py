"""로깅 유틸리티 (세션 로그, 콘솔/파일 로거)"""
