"""
Numerical equilibrium toolkit.

Contains:
- search.py: grid-seeded Nelder-Mead best responses
- nash.py: Nash verification, counter strategies and equilibrium searches
- entanglement.py: gamma sweeps and the critical entanglement level
"""
