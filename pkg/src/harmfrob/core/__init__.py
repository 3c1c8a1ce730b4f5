#!/usr/bin/env python3
"""
Computational core of harmonic-frobenius.

Subpackages:
- arith: exact rationals and fixed-precision p-adic numbers
- words: word algebra, truncated series and the Ihara product
- harmonic: multiple harmonic sums
- power_sums: power sums and the symbolic expansion of har_{p^alpha m}
- adjoint: adjoint p-adic multiple zeta values
- validation: identity checks and suites
- processing: parallel execution
"""
