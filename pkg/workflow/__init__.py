"""
Experiment workflow behind the command line.

Contains:
- game_file.py: JSON game-file parsing
- experiments.py: named experiments producing ExperimentResult tables
- output.py: CSV and JSON rendering
"""
