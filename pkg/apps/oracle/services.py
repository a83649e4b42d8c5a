"""
Brute-force Weyl functions on a truncated Fock space.

Only ladder matrices, matrix exponentials and explicit basis expansions are
used here, so the closed-form engine can be checked against something that
shares none of its formulas.
"""
import logging
import math
from functools import reduce

import numpy as np
from scipy.special import gammainc

from apps.states.models import SlotKind
from config.exceptions import OracleGuardError, StateError
from .expm import expm
from .models import MAX_MATRIX_DIMENSION, DenseOperator, TruncatedSpace

logger = logging.getLogger(__name__)

TAIL_MASS_LIMIT = 1e-12


def ladder_matrices(space):
    """Annihilation and creation operators on one mode of `space`."""
    mode_space = space.single_mode()
    a = np.diag(np.sqrt(np.arange(1, mode_space.local_dimension, dtype=float)), k=1).astype(complex)
    return DenseOperator(a, mode_space), DenseOperator(a.conj().T, mode_space)


def check_drive_guard(z, cutoff):
    """Require |z| sqrt(cutoff) < cutoff / 4."""
    if abs(z) * math.sqrt(cutoff) >= cutoff / 4:
        raise OracleGuardError(
            f'|lambda| = {abs(z):.6g} too large for cutoff {cutoff}', code='oracle_guard'
        )


def coherent_tail_mass(amplitude, cutoff):
    """Poisson weight beyond the cutoff, sum_{n > cutoff} e^-|A|^2 |A|^2n / n!."""
    return float(gammainc(cutoff + 1, abs(amplitude) ** 2))


def displacement_matrix(z, space):
    """D(z) = exp(z a^dagger - z^* a) on one truncated mode."""
    z = complex(z)
    check_drive_guard(z, space.cutoff)
    a, a_dagger = ladder_matrices(space)
    generator = z * a_dagger.matrix - z.conjugate() * a.matrix
    return DenseOperator(expm(generator), a.space)


def slot_vector(slot, cutoff):
    """Single-mode basis expansion of a Fock or coherent slot."""
    vector = np.zeros(cutoff + 1, dtype=complex)
    if slot.kind == SlotKind.FOCK:
        if slot.occupation > cutoff:
            raise OracleGuardError(f'Occupation {slot.occupation} exceeds cutoff {cutoff}')
        vector[slot.occupation] = 1.0
        return vector

    amplitude = slot.amplitude
    tail = coherent_tail_mass(amplitude, cutoff)
    if tail >= TAIL_MASS_LIMIT:
        raise OracleGuardError(
            f'Coherent amplitude {amplitude} leaves tail mass {tail:.3g} beyond cutoff {cutoff}'
        )
    vector[0] = math.exp(-abs(amplitude) ** 2 / 2)
    for n in range(1, cutoff + 1):
        vector[n] = vector[n - 1] * amplitude / math.sqrt(n)
    return vector


def ket_vector(ket, space):
    """Product-basis vector of a ProductKet."""
    if ket.mode_count != space.modes:
        raise StateError(f'Ket has {ket.mode_count} modes, space has {space.modes}', code='mode_mismatch')
    return reduce(np.kron, (slot_vector(slot, space.cutoff) for slot in ket.modes))


def embed_state(rho, space, max_dimension=MAX_MATRIX_DIMENSION):
    """Dense density matrix sum_k w_k |ket_k><bra_k|."""
    if space.dimension > max_dimension:
        raise OracleGuardError(
            f'Dense matrix dimension {space.dimension} exceeds the limit {max_dimension}'
        )
    vectors = {}
    matrix = np.zeros((space.dimension, space.dimension), dtype=complex)
    for term in rho.terms:
        for ket in (term.ket, term.bra):
            if ket not in vectors:
                vectors[ket] = ket_vector(ket, space)
        matrix += term.weight * np.outer(vectors[term.ket], vectors[term.bra].conj())
    return DenseOperator(matrix, space)


def apply_per_mode(matrices, vector, space):
    """(M_1 (x) ... (x) M_n) v without forming the Kronecker product."""
    tensor = vector.reshape(space.shape)
    for mode, matrix in enumerate(matrices):
        tensor = np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [mode])), 0, mode)
    return tensor.reshape(-1)


def oracle_weyl(rho, at, space):
    """Tr[rho D(lambda_1) (x) ... (x) D(lambda_n)] evaluated dyad by dyad."""
    if at.mode_count != rho.mode_count or space.modes != rho.mode_count:
        raise StateError(
            f'State, drive and space disagree on mode count: {rho.mode_count}, {at.mode_count}, {space.modes}',
            code='mode_mismatch',
        )
    displacements = [displacement_matrix(z, space).matrix for z in at.lambdas]
    vectors = {}
    displaced = {}
    total = 0j
    for term in rho.terms:
        for ket in (term.ket, term.bra):
            if ket not in vectors:
                vectors[ket] = ket_vector(ket, space)
        if term.ket not in displaced:
            displaced[term.ket] = apply_per_mode(displacements, vectors[term.ket], space)
        total += term.weight * np.vdot(vectors[term.bra], displaced[term.ket])
    return complex(total)


def oracle_weyl_dense(rho_dense, at):
    """Tr[rho D] with rho already embedded; small spaces only."""
    space = rho_dense.space
    displacements = [displacement_matrix(z, space).matrix for z in at.lambdas]
    operator = reduce(np.kron, displacements)
    return complex(np.trace(rho_dense.matrix @ operator))


def oracle_partial_trace(rho_dense, mode):
    """Trace out `mode` (0-based) by index contraction."""
    space = rho_dense.space
    if not 0 <= mode < space.modes:
        raise StateError(f'Mode index {mode} out of range for {space.modes} modes', code='mode_mismatch')
    if space.modes == 1:
        raise StateError('Cannot trace out the only mode', code='mode_mismatch')
    tensor = rho_dense.matrix.reshape(space.shape + space.shape)
    reduced = np.trace(tensor, axis1=mode, axis2=mode + space.modes)
    remaining = space.without_mode()
    return DenseOperator(reduced.reshape(remaining.dimension, remaining.dimension), remaining)


def space_for(rho, cutoff, max_dimension=None):
    """TruncatedSpace matching the mode count of `rho`."""
    kwargs = {} if max_dimension is None else {'max_dimension': max_dimension}
    return TruncatedSpace(cutoff, rho.mode_count, **kwargs)
