"""
Backend package for the exact substitution-method LP solver
"""
