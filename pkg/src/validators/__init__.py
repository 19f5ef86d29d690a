"""Verification of simulator invariants"""

from .invariant_suite import InvariantSuite, ValidationResult

__all__ = ['InvariantSuite', 'ValidationResult']
