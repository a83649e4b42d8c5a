"""
Closed-form Weyl functions and correlators.

W(lambda) = Tr[rho D(lambda_1) ... D(lambda_n)] for rho given as a sum of
weighted product dyads; every dyad contributes
weight * prod_k <bra_k|D(lambda_k)|ket_k>.
"""
import cmath
import itertools
import logging
import math

from apps.observables.fringes import phase_is_undefined, phase_shift, visibility
from apps.special.laguerre import generalized_laguerre, sqrt_factorial_ratio
from apps.states.models import SlotKind
from apps.states.services import slot_overlap
from config.exceptions import EngineError, StateError
from .models import CorrelatorValue, DriveAt, NumberStateWeyl, WeylResult

logger = logging.getLogger(__name__)


def drive_lambda(drive, t):
    """lambda_i(t) = i q exp(i omega_i t) for every mode of the drive."""
    if not math.isfinite(t):
        raise EngineError(f'Time must be finite, got {t}', code='invalid_argument')
    q = drive.q
    return DriveAt(tuple(1j * q * cmath.exp(1j * omega * t) for omega in drive.omegas))


def displacement_element_fock(m, n, z):
    """
    <m|D(z)|n> in the number basis.

    For m >= n: sqrt(n!/m!) z^(m-n) exp(-|z|^2/2) L_n^(m-n)(|z|^2).
    For m < n the conjugation identity <m|D(z)|n> = <n|D(-z)|m>* keeps the
    Laguerre order nonnegative.
    """
    if m < 0 or n < 0:
        raise EngineError(f'Fock indices must be nonnegative, got ({m}, {n})', code='invalid_argument')
    z = complex(z)
    if m < n:
        return displacement_element_fock(n, m, -z).conjugate()
    x = abs(z) ** 2
    return (
        sqrt_factorial_ratio(n, m)
        * z ** (m - n)
        * math.exp(-x / 2)
        * generalized_laguerre(n, m - n, x)
    )


def displacement_element_coherent(a, b, z):
    """<A|D(z)|B> = exp(-|-A+z+B|^2/2) exp(chi)."""
    a, b, z = complex(a), complex(b), complex(z)
    chi = 0.5 * (
        -a * z.conjugate() + a.conjugate() * z
        - a * b.conjugate() + a.conjugate() * b
        - z.conjugate() * b + z * b.conjugate()
    )
    return cmath.exp(-abs(-a + z + b) ** 2 / 2 + chi)


def _slot_element(bra, ket, z):
    if z == 0:
        return slot_overlap(bra, ket)
    if ket.kind == SlotKind.FOCK:
        return displacement_element_fock(bra.occupation, ket.occupation, z)
    return displacement_element_coherent(bra.amplitude, ket.amplitude, z)


def weyl(rho, at):
    """Multimode Weyl function of an OperatorEnsemble at the given lambdas."""
    if at.mode_count != rho.mode_count:
        raise StateError(
            f'Drive has {at.mode_count} modes, state has {rho.mode_count}', code='mode_mismatch'
        )
    total = 0j
    for term in rho.terms:
        value = term.weight
        for bra, ket, z in zip(term.bra.modes, term.ket.modes, at.lambdas):
            value *= _slot_element(bra, ket, z)
            if value == 0:
                break
        total += value
    return total


def correlator(rho, at):
    """Joint Weyl value, marginals (other lambdas zeroed) and their difference c."""
    joint = weyl(rho, at)
    marginals = tuple(weyl(rho, at.only(mode)) for mode in range(at.mode_count))
    return CorrelatorValue(joint=joint, marginals=marginals, c=joint - math.prod(marginals, start=1 + 0j))


def signed_weyl_table(rho, at):
    """W(s_1 lambda_1, ..., s_n lambda_n) for every sign pattern s in {+1, -1}^n."""
    return {
        signs: weyl(rho, DriveAt(tuple(s * z for s, z in zip(signs, at.lambdas))))
        for signs in itertools.product((1, -1), repeat=at.mode_count)
    }


def closed_form_number_weyl(n1, n2, q, omega_t):
    """
    Bipartite number-state Weyl values at |lambda| = q.

    marginal   1/2 exp(-q^2/2) [L_N1(q^2) + L_N2(q^2)]
    joint_sep  exp(-q^2) L_N1(q^2) L_N2(q^2)
    joint_ent  joint_sep + exp(-q^2) L_N1^(N2-N1)(q^2) L_N2^(N1-N2)(q^2) cos(omega_t)

    With N1 = N2 the entangled family is the product ket |N N>, so
    joint_ent equals joint_sep.
    """
    if n1 < 0 or n2 < 0:
        raise EngineError(f'Photon numbers must be nonnegative, got ({n1}, {n2})', code='invalid_argument')
    x = q * q
    l1 = generalized_laguerre(n1, 0, x)
    l2 = generalized_laguerre(n2, 0, x)
    joint_sep = math.exp(-x) * l1 * l2
    joint_ent = joint_sep
    if n1 != n2:
        joint_ent += (
            math.exp(-x)
            * generalized_laguerre(n1, n2 - n1, x)
            * generalized_laguerre(n2, n1 - n2, x)
            * math.cos(omega_t)
        )
    return NumberStateWeyl(
        marginal=0.5 * math.exp(-x / 2) * (l1 + l2),
        joint_sep=joint_sep,
        joint_ent=joint_ent,
    )


def closed_form_number_correlators(n1, n2, q, omega_t):
    """(c_sep, c_ent) for the bipartite number states; c_sep does not depend on time."""
    values = closed_form_number_weyl(n1, n2, q, omega_t)
    product = values.marginal ** 2
    return values.joint_sep - product, values.joint_ent - product


def beat_frequency(numbers, omegas):
    """
    Oscillation frequency of the entangled number-state correlator.

    Bipartite: (N1 - N2)(w1 - w2).
    Tripartite: N1(w3 - w1) + N2(w1 - w2) + N3(w2 - w3).
    """
    numbers, omegas = tuple(numbers), tuple(float(w) for w in omegas)
    if len(numbers) != len(omegas) or len(numbers) not in (2, 3):
        raise StateError(
            f'Need 2 or 3 matching photon numbers and frequencies, got {len(numbers)} and {len(omegas)}',
            code='mode_mismatch',
        )
    if len(numbers) == 2:
        (n1, n2), (w1, w2) = numbers, omegas
        return (n1 - n2) * (w1 - w2)
    (n1, n2, n3), (w1, w2, w3) = numbers, omegas
    return n1 * (w3 - w1) + n2 * (w1 - w2) + n3 * (w2 - w3)


def tripartite_interference_term(numbers, at):
    """<N1|D(lambda_A)|N2><N2|D(lambda_B)|N3><N3|D(lambda_C)|N1>."""
    if len(numbers) != 3 or at.mode_count != 3:
        raise StateError('Tripartite term needs three photon numbers and three lambdas', code='mode_mismatch')
    n1, n2, n3 = numbers
    za, zb, zc = at.lambdas
    return (
        displacement_element_fock(n1, n2, za)
        * displacement_element_fock(n2, n3, zb)
        * displacement_element_fock(n3, n1, zc)
    )


def weyl_result(w):
    """Wrap a Weyl value with its visibility and phase shift."""
    w = complex(w)
    undefined = phase_is_undefined(w)
    if undefined:
        logger.debug('Zero Weyl value, phase shift reported as 0')
    return WeylResult(value=w, visibility=visibility(w), phase_shift=phase_shift(w), phase_undefined=undefined)
