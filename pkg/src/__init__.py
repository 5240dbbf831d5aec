"""
elabduce - connection-minimal TBox abduction for EL through prime implicates
"""

__version__ = "1.0.0"
