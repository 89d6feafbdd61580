"""
Command-line launcher for the solver
"""
import os
import sys

# Add backend to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from backend.cli import main

if __name__ == "__main__":
    sys.exit(main())
