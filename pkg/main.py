#!/usr/bin/env python3
"""
revkit - Main entry point.

Decides, converts and generates reversible deterministic finite automata.
"""
import sys

from cli.app import dispatch


def main():
    """Run the revkit command group on the process arguments."""
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == '__main__':
    main()
