"""
Ladder Package

Exact Fock-space matrices, Coulomb integrals, the two-level helium model and
its ladder-operator ground state, with a CLI and a Prefect reproduction flow.
"""

__version__ = "0.1.0"
