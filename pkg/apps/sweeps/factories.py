"""
Test factories for sweeps.
"""
import factory

from apps.states.models import DEFAULT_CHARGE, Normalization
from .models import BIPARTITE_OMEGAS, SweepConfig


class SweepConfigFactory(factory.Factory):
    """Bipartite entangled number-state sweep with a short grid."""

    class Meta:
        model = SweepConfig

    state = 'ent_number2:1,0'
    omegas = BIPARTITE_OMEGAS
    xi = 1.0
    e_charge = DEFAULT_CHARGE
    t_range = None
    points = 50
    normalization = Normalization.OVERLAP
    axis_omega = None
    label = factory.LazyAttribute(lambda o: o.state.partition(':')[0])
