"""
Core algorithms for reversible deterministic finite automata.
This module contains no CLI dependencies.
"""
