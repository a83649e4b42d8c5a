"""
Test factories for states.
"""
import math

import factory

from .models import DEFAULT_CHARGE, Coherent, DriveParams, Fock, OperatorEnsemble, ProductKet, StateFamily
from .services import build_family_state


class FockKetFactory(factory.Factory):
    """Two-mode number ket |1,0>."""

    class Meta:
        model = ProductKet

    class Params:
        occupations = (1, 0)

    modes = factory.LazyAttribute(lambda o: tuple(Fock(n) for n in o.occupations))


class CoherentKetFactory(factory.Factory):
    """Two-mode coherent ket |1,0>."""

    class Meta:
        model = ProductKet

    class Params:
        amplitudes = (1.0, 0.0)

    modes = factory.LazyAttribute(lambda o: tuple(Coherent(a) for a in o.amplitudes))


class DyadEnsembleFactory(factory.Factory):
    """Single-dyad product state |k><k|."""

    class Meta:
        model = OperatorEnsemble.dyad

    ket = factory.SubFactory(FockKetFactory)


class DriveParamsFactory(factory.Factory):
    """Drive with the bipartite figure frequencies."""

    class Meta:
        model = DriveParams

    omegas = (1.2e-4, 1.0e-4)
    xi = 1.0
    e_charge = DEFAULT_CHARGE


PARAMETER_SETS = {
    StateFamily.SEP_NUMBER2: [(1, 0), (3, 1), (2, 2)],
    StateFamily.ENT_NUMBER2: [(1, 0), (4, 2), (2, 2)],
    StateFamily.SEP_COHERENT2: [(1, 0), (0.3 + 0.4j, -1j)],
    StateFamily.ENT_COHERENT2: [(1, 0), (0.3 + 0.4j, -1j), (0.5, 0.5)],
    StateFamily.SEP_NUMBER3: [(0, 1, 2), (1, 1, 3)],
    StateFamily.ENT_NUMBER3: [(0, 1, 2), (2, 0, 0)],
    StateFamily.SEP_COHERENT3: [(0, 1, math.sqrt(2)), (0.2j, 1, -0.5)],
    StateFamily.ENT_COHERENT3: [(0, 1, math.sqrt(2)), (0.2j, 1, -0.5)],
}


def all_built_states():
    """Yield (family, parameters, ensemble) for a spread of built-in states."""
    for family, parameter_sets in PARAMETER_SETS.items():
        for values in parameter_sets:
            yield family, values, build_family_state(family, values)
    ket = FockKetFactory(occupations=(2, 0, 1))
    yield StateFamily.FACTORIZABLE, ket, build_family_state(StateFamily.FACTORIZABLE, ket)
