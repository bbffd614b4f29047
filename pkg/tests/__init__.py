"""
Testes do SuperComb.
"""
