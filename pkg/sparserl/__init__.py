"""
희소 선형 MDP 강화학습 실험 패키지
"""
