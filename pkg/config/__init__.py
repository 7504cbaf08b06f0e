"""실행 설정"""
