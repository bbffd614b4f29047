"""
Testes de Integração.

Executam o CLI e o pipeline completos sobre designs de referência.
"""
