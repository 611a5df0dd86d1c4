"""Subspace fuzzy vaults over spread codes.

Modules, bottom up: ``field`` (F_q and polynomials), ``companion``,
``linalg`` (matrices and subspaces), ``spread`` (spread codes), ``rs``
(Reed-Solomon), ``pfv`` and ``sfv`` (the two vaults), ``security``
(counting formulas and attacks), ``vaultfile`` and ``cli``.
"""

__version__ = "0.1.0"
