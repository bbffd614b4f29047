"""
Infraestrutura do processo: settings, erros, logging e paralelismo.
"""
