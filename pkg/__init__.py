"""
Quantum game theory toolkit.

This package can:
1. Simulate penny flip, EisertFull and MarinattoWeber games on dense state vectors
2. Analyse classical payoff tables
3. Search and verify equilibria over SU(2) strategies
4. Run reproducible experiments from the command line
"""

__version__ = "1.0.0"
