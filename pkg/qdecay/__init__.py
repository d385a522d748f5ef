"""
qdecay: concurrence and interferometric power of two-qubit states under
dephasing, generalized amplitude damping and depolarizing noise.
"""

__version__ = "1.0.0"
