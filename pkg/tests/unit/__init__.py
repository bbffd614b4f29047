"""
Testes unitários, um arquivo por service.
"""
