"""
Tests for Archive Duplicate Finder.
"""
