"""
소스 코드 패키지
"""
