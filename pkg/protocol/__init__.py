"""
Quantum game protocols.

Contains:
- game.py: GameSpec, Strategy and StrategyProfile
- runner.py: EisertFull and MarinattoWeber pipelines and payoff evaluation
"""
