"""
Oracle models: truncated Fock spaces and dense operators on them.
"""
from dataclasses import dataclass

import numpy as np

from config.exceptions import OracleGuardError

MAX_VECTOR_DIMENSION = 100_000
MAX_MATRIX_DIMENSION = 2048


@dataclass(frozen=True)
class TruncatedSpace:
    """Product basis |n_1 ... n_modes>, 0 <= n_k <= cutoff."""
    cutoff: int
    modes: int = 1
    max_dimension: int = MAX_VECTOR_DIMENSION

    def __post_init__(self):
        if self.cutoff < 1:
            raise OracleGuardError(f'Cutoff must be at least 1, got {self.cutoff}')
        if self.modes < 1:
            raise OracleGuardError(f'Need at least one mode, got {self.modes}')
        if self.dimension > self.max_dimension:
            raise OracleGuardError(
                f'Truncated dimension {self.dimension} exceeds the limit {self.max_dimension}'
            )

    @property
    def local_dimension(self):
        return self.cutoff + 1

    @property
    def dimension(self):
        return self.local_dimension ** self.modes

    @property
    def shape(self):
        return (self.local_dimension,) * self.modes

    def single_mode(self):
        return TruncatedSpace(self.cutoff, 1, self.max_dimension)

    def without_mode(self):
        return TruncatedSpace(self.cutoff, self.modes - 1, self.max_dimension)


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """Complex square matrix over the product basis of `space`."""
    matrix: np.ndarray
    space: TruncatedSpace

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        dimension = self.space.dimension
        if matrix.shape != (dimension, dimension):
            raise OracleGuardError(f'Matrix shape {matrix.shape} does not match dimension {dimension}')
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    def trace(self):
        return complex(np.trace(self.matrix))

    def adjoint(self):
        return DenseOperator(self.matrix.conj().T, self.space)

    def __matmul__(self, other):
        return DenseOperator(self.matrix @ other.matrix, self.space)
