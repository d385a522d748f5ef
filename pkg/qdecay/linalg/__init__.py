from .core import (
    I2,
    PAULIS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    SpectralDecomposition,
    adjoint,
    as_matrix,
    eigh,
    kron,
    matmul,
)
