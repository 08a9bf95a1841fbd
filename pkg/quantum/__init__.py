"""
State-vector simulation for small multi-site quantum registers.

Contains:
- state.py: StateVector, WeightedEnsemble and gate application
- operators.py: Unitary, SU(2) strategies and the entangling gate
"""
