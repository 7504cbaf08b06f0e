"""fvb-lab 라이브러리 모듈 (fvb_lab.py 가 이 디렉토리를 경로에 추가해 평면 import)"""
