"""
Configuration for the quantum game toolkit.

Contains:
- logging_config.py: dictConfig-based logging setup
- settings.py: tolerances, SearchConfig and environment settings
"""
