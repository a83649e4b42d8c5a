"""
Lowering parsed state text to dyad ensembles, and rendering ensembles back to text.
"""
import logging

import numpy as np

from apps.states.models import format_complex
from apps.states.services import mixture, overlap, superposition
from config.exceptions import DslParseError, StateError
from .parser import KetNode, ScaledNode, SumNode, parse

logger = logging.getLogger(__name__)

EIGENVALUE_CUTOFF = 1e-13


def linear_combination(node):
    """Mapping ket -> coefficient for a vector expression."""
    if isinstance(node, KetNode):
        return {node.ket: 1.0 + 0j}
    if isinstance(node, ScaledNode):
        return {ket: node.coefficient * c for ket, c in linear_combination(node.child).items()}
    combined = {}
    for child in node.children:
        for ket, c in linear_combination(child).items():
            combined[ket] = combined.get(ket, 0j) + c
    return combined


def lower(expr):
    """
    Dyad ensemble for a parsed state.

    Each component is renormalized from the overlaps of its kets; mixture
    components are then weighted by their probabilities.
    """
    components = []
    for probability, node in expr.components:
        combination = {ket: c for ket, c in linear_combination(node).items() if c != 0}
        try:
            if not combination:
                raise StateError('Superposition has zero norm', code='zero_norm')
            rho = superposition(list(combination.values()), list(combination.keys()))
        except StateError as exc:
            position = node.position
            raise DslParseError(
                exc.detail, code=exc.code, offset=position.offset, line=position.line, column=position.column,
            ) from exc
        components.append((probability, rho))
    if len(components) == 1 and not expr.is_mixture:
        return components[0][1]
    return mixture(components)


def parse_state(text):
    """parse followed by lower."""
    return lower(parse(text))


def _format_coefficient(value):
    value = complex(value)
    return repr(value.real) if value.imag == 0 else format_complex(value)


def _render_vector(coefficients, kets):
    return ' + '.join(
        f'{_format_coefficient(c)}*{ket}' for c, ket in zip(coefficients, kets) if c != 0
    )


def render(rho):
    """
    State text that lowers back to `rho`.

    The weight matrix over the distinct kets is diagonalized; each
    eigenvector becomes one superposition with probability
    eigenvalue * <v|v>, since superpositions are renormalized on lowering.
    """
    kets = sorted({t.ket for t in rho.terms} | {t.bra for t in rho.terms}, key=lambda k: k.sort_key())
    index = {ket: i for i, ket in enumerate(kets)}
    weights = np.zeros((len(kets), len(kets)), dtype=complex)
    for term in rho.terms:
        weights[index[term.ket], index[term.bra]] += term.weight
    if not np.allclose(weights, weights.conj().T, atol=1e-12):
        raise StateError('Only Hermitian operators can be rendered', code='not_positive')
    gram = np.array([[overlap(a, b) for b in kets] for a in kets])

    eigenvalues, vectors = np.linalg.eigh(weights)
    scale = max(abs(eigenvalues).max(), 1.0)
    if eigenvalues.min() < -EIGENVALUE_CUTOFF * scale:
        raise StateError(f'Operator has negative eigenvalue {eigenvalues.min():.3g}', code='not_positive')

    components = []
    for mu, u in zip(eigenvalues[::-1], vectors.T[::-1]):
        if mu <= EIGENVALUE_CUTOFF * scale:
            continue
        probability = float(mu * np.vdot(u, gram @ u).real)
        components.append((probability, _render_vector(u, kets)))

    if len(components) == 1 and abs(components[0][0] - 1.0) <= 1e-9:
        return components[0][1]
    logger.debug('Rendering %d mixture components', len(components))
    return 'mix ' + '; '.join(f'{p!r}: {text}' for p, text in components)
