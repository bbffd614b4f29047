"""
SuperComb
=========

Simulador de pentes espectrais de SPDC em superredes biPPLN.
"""

__version__ = "1.0.0"
