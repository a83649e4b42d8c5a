"""
State services for TopoPhase: overlaps, traces and the built-in density operators.
"""
import cmath
import logging

from config.exceptions import StateError
from .models import (
    Coherent, Fock, Normalization, OperatorEnsemble, ProductKet, SlotKind, StateFamily, Term,
)

logger = logging.getLogger(__name__)

NUMBER_FAMILIES = {
    StateFamily.SEP_NUMBER2: 2, StateFamily.ENT_NUMBER2: 2,
    StateFamily.SEP_NUMBER3: 3, StateFamily.ENT_NUMBER3: 3,
}
COHERENT_FAMILIES = {
    StateFamily.SEP_COHERENT2: 2, StateFamily.ENT_COHERENT2: 2,
    StateFamily.SEP_COHERENT3: 3, StateFamily.ENT_COHERENT3: 3,
}
ENTANGLED_FAMILIES = {
    StateFamily.ENT_NUMBER2, StateFamily.ENT_COHERENT2,
    StateFamily.ENT_NUMBER3, StateFamily.ENT_COHERENT3,
}


def slot_overlap(a, b):
    """<a|b> for one mode."""
    if a.kind != b.kind:
        raise StateError('Cannot overlap Fock and coherent slots', code='kind_mismatch')
    if a.kind == SlotKind.FOCK:
        return 1.0 + 0j if a.occupation == b.occupation else 0j
    x, y = a.amplitude, b.amplitude
    return cmath.exp(-abs(x) ** 2 / 2 - abs(y) ** 2 / 2 + x.conjugate() * y)


def overlap(a, b):
    """<a|b> as the product of per-mode overlaps."""
    if a.mode_count != b.mode_count:
        raise StateError(f'Mode counts differ: {a.mode_count} vs {b.mode_count}', code='mode_mismatch')
    if a.kind != b.kind:
        raise StateError('Cannot overlap Fock and coherent kets', code='kind_mismatch')
    result = 1.0 + 0j
    for x, y in zip(a.modes, b.modes):
        result *= slot_overlap(x, y)
        if result == 0:
            break
    return result


def trace(rho):
    """Tr rho = sum of weight * <bra|ket>."""
    return sum((t.weight * overlap(t.bra, t.ket) for t in rho.terms), 0j)


def partial_trace(rho, mode):
    """Trace out `mode` (0-based); each dyad picks up <bra_mode|ket_mode>."""
    if not 0 <= mode < rho.mode_count:
        raise StateError(f'Mode index {mode} out of range for {rho.mode_count} modes', code='mode_mismatch')
    if rho.mode_count == 1:
        raise StateError('Cannot trace out the only mode', code='mode_mismatch')
    return OperatorEnsemble.from_terms(
        Term(
            t.weight * slot_overlap(t.bra.modes[mode], t.ket.modes[mode]),
            t.ket.without(mode),
            t.bra.without(mode),
        )
        for t in rho.terms
    )


def reduced_state(rho, keep):
    """Reduced operator on the single mode `keep`."""
    reduced = rho
    for mode in reversed(range(rho.mode_count)):
        if mode != keep:
            reduced = partial_trace(reduced, mode)
    return reduced


def tensor_product(rho_a, rho_b):
    """rho_A (x) rho_B, modes of rho_A first."""
    if rho_a.kind != rho_b.kind:
        raise StateError('Fock and coherent factors cannot be combined', code='kind_mismatch')
    return OperatorEnsemble.from_terms(
        Term(a.weight * b.weight, a.ket.concat(b.ket), a.bra.concat(b.bra))
        for a in rho_a.terms
        for b in rho_b.terms
    )


def superposition(coefficients, kets):
    """Normalized |psi><psi| for |psi> = sum_i c_i |k_i>, norm taken from overlaps."""
    pairs = list(zip(coefficients, kets))
    norm = sum(
        (ci.conjugate() * cj * overlap(ki, kj) for ci, ki in pairs for cj, kj in pairs),
        0j,
    ).real
    if norm <= 0:
        raise StateError('Superposition has zero norm', code='zero_norm')
    return OperatorEnsemble.from_terms(
        Term(ci * cj.conjugate() / norm, ki, kj)
        for ci, ki in pairs
        for cj, kj in pairs
    )


def mixture(components):
    """sum_k p_k rho_k for (p_k, rho_k) pairs."""
    return OperatorEnsemble.from_terms(
        Term(p * t.weight, t.ket, t.bra)
        for p, rho in components
        for t in rho.terms
    )


def build_family_state(family, values, normalization=Normalization.OVERLAP):
    """
    Build one of the built-in density operators.

    Args:
        family: StateFamily value
        values: photon numbers (number families), amplitudes (coherent
            families) or a ProductKet (factorizable)
        normalization: 'overlap' recomputes the entangled normalization
            from <S|S>; 'printed' uses the tripartite coherent formula with
            Re(tau_12 + tau_23 + tau_31), which does not give unit trace

    Returns:
        OperatorEnsemble
    """
    try:
        family = StateFamily(family)
    except ValueError:
        raise StateError(f'Unknown state family: {family}', code='missing_params')

    if family == StateFamily.FACTORIZABLE:
        if not isinstance(values, ProductKet):
            raise StateError('factorizable needs a product ket', code='missing_params')
        return OperatorEnsemble.dyad(values)

    if family in NUMBER_FAMILIES:
        modes = NUMBER_FAMILIES[family]
        slot = Fock
    else:
        modes = COHERENT_FAMILIES[family]
        slot = Coherent

    values = list(values or ())
    if len(values) != modes:
        raise StateError(
            f'{family.value} needs {modes} parameters, got {len(values)}', code='missing_params'
        )

    first = ProductKet(tuple(slot(v) for v in values))
    second = first.rotated(1)

    if family not in ENTANGLED_FAMILIES:
        return mixture([(0.5, OperatorEnsemble.dyad(first)), (0.5, OperatorEnsemble.dyad(second))])

    rho = superposition([1.0 + 0j, 1.0 + 0j], [first, second])
    if normalization == Normalization.PRINTED and family == StateFamily.ENT_COHERENT3:
        rho = _printed_tripartite_normalization(first, second)
        logger.warning('Using printed tripartite normalization; trace is %s', trace(rho))
    return rho


def _printed_tripartite_normalization(first, second):
    a1, a2, a3 = first.modes
    taus = slot_overlap(a1, a2) + slot_overlap(a2, a3) + slot_overlap(a3, a1)
    norm_sq = 1.0 / (2.0 + 2.0 * taus.real)
    return OperatorEnsemble.from_terms(
        Term(norm_sq + 0j, ket, bra)
        for ket in (first, second)
        for bra in (first, second)
    )
