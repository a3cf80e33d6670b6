"""
Command-line front end for revkit.
"""
