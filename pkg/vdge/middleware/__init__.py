# Middleware package for the VDGE command line
from .exit_codes import exit_codes, INPUT_ERROR, RUNTIME_ERROR

__all__ = ['exit_codes', 'INPUT_ERROR', 'RUNTIME_ERROR']
