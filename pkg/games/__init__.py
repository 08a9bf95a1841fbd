"""
Classical payoff tables, canonical games and their analysis.

Contains:
- matrix.py: ClassicalMatrix
- catalog.py: prisoners' dilemma, minority game, penny flip and friends
- analysis.py: dominance, pure Nash, Pareto, saddle points and ESS
"""
