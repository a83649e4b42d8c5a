"""
State models for TopoPhase.

Plain immutable value objects; nothing here is stored in a database.
"""
import math
from dataclasses import dataclass, field

from django.db import models
from django.utils.translation import gettext_lazy as _

from config.exceptions import StateError

DEFAULT_CHARGE = math.sqrt(4 * math.pi / 137)


class SlotKind(models.TextChoices):
    """Per-mode slot kind choices."""
    FOCK = 'fock', _('Fock 态')
    COHERENT = 'coherent', _('相干态')


class StateFamily(models.TextChoices):
    """Built-in density operators."""
    SEP_NUMBER2 = 'sep_number2', _('两模可分离数态')
    ENT_NUMBER2 = 'ent_number2', _('两模纠缠数态')
    SEP_COHERENT2 = 'sep_coherent2', _('两模可分离相干态')
    ENT_COHERENT2 = 'ent_coherent2', _('两模纠缠相干态')
    SEP_NUMBER3 = 'sep_number3', _('三模可分离数态')
    ENT_NUMBER3 = 'ent_number3', _('三模纠缠数态')
    SEP_COHERENT3 = 'sep_coherent3', _('三模可分离相干态')
    ENT_COHERENT3 = 'ent_coherent3', _('三模纠缠相干态')
    FACTORIZABLE = 'factorizable', _('直积态')


class Normalization(models.TextChoices):
    """How entangled-state normalization constants are obtained."""
    OVERLAP = 'overlap', _('由内积计算')
    PRINTED = 'printed', _('按文献公式')


@dataclass(frozen=True)
class Fock:
    """Number-state slot |N>."""
    occupation: int

    kind = SlotKind.FOCK

    def __post_init__(self):
        if int(self.occupation) != self.occupation or self.occupation < 0:
            raise StateError(f'Fock occupation must be a nonnegative integer, got {self.occupation}')
        object.__setattr__(self, 'occupation', int(self.occupation))

    def sort_key(self):
        return (self.occupation,)

    def __str__(self):
        return str(self.occupation)


@dataclass(frozen=True)
class Coherent:
    """Coherent-state slot |A>."""
    amplitude: complex

    kind = SlotKind.COHERENT

    def __post_init__(self):
        object.__setattr__(self, 'amplitude', complex(self.amplitude))

    def sort_key(self):
        return (self.amplitude.real, self.amplitude.imag)

    def __str__(self):
        return f'c:{format_complex(self.amplitude)}'


def format_complex(value):
    """Render a complex number as an `a+bi` literal that round-trips exactly."""
    value = complex(value)
    sign = '-' if math.copysign(1.0, value.imag) < 0 else '+'
    return f'{value.real!r}{sign}{abs(value.imag)!r}i'


@dataclass(frozen=True)
class ProductKet:
    """Multimode product ket; all slots share one kind."""
    modes: tuple

    def __post_init__(self):
        modes = tuple(self.modes)
        if not modes:
            raise StateError('A product ket needs at least one mode', code='missing_params')
        kinds = {slot.kind for slot in modes}
        if len(kinds) > 1:
            raise StateError('Fock and coherent slots cannot share a ket', code='kind_mismatch')
        object.__setattr__(self, 'modes', modes)

    @classmethod
    def fock(cls, *occupations):
        return cls(tuple(Fock(n) for n in occupations))

    @classmethod
    def coherent(cls, *amplitudes):
        return cls(tuple(Coherent(a) for a in amplitudes))

    @property
    def kind(self):
        return self.modes[0].kind

    @property
    def mode_count(self):
        return len(self.modes)

    def without(self, mode):
        """Ket on the remaining modes after removing `mode`."""
        return ProductKet(self.modes[:mode] + self.modes[mode + 1:])

    def concat(self, other):
        return ProductKet(self.modes + other.modes)

    def rotated(self, shift=1):
        """Cyclic relabelling, |N1 N2 N3> -> |N2 N3 N1> for shift 1."""
        shift %= self.mode_count
        return ProductKet(self.modes[shift:] + self.modes[:shift])

    def sort_key(self):
        return tuple(slot.sort_key() for slot in self.modes)

    def __str__(self):
        return '|' + ','.join(str(slot) for slot in self.modes) + '>'


@dataclass(frozen=True)
class Term:
    """Weighted dyad weight * |ket><bra|."""
    weight: complex
    ket: ProductKet
    bra: ProductKet

    def adjoint(self):
        return Term(self.weight.conjugate(), self.bra, self.ket)

    def sort_key(self):
        return (self.ket.sort_key(), self.bra.sort_key())


@dataclass(frozen=True)
class OperatorEnsemble:
    """
    Density operator as a finite sum of weighted dyads.

    Build through `from_terms`, which merges repeated dyads, drops exact
    zeros and fixes a canonical term order.
    """
    terms: tuple
    mode_count: int = field(init=False)
    kind: str = field(init=False)

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise StateError('An operator needs at least one dyad', code='missing_params')
        counts = {t.ket.mode_count for t in terms} | {t.bra.mode_count for t in terms}
        if len(counts) > 1:
            raise StateError(f'Dyads disagree on mode count: {sorted(counts)}', code='mode_mismatch')
        kinds = {t.ket.kind for t in terms} | {t.bra.kind for t in terms}
        if len(kinds) > 1:
            raise StateError('Fock and coherent dyads cannot be mixed', code='kind_mismatch')
        object.__setattr__(self, 'terms', terms)
        object.__setattr__(self, 'mode_count', counts.pop())
        object.__setattr__(self, 'kind', kinds.pop())

    @classmethod
    def from_terms(cls, terms):
        merged = {}
        for term in terms:
            key = (term.ket, term.bra)
            merged[key] = merged.get(key, 0j) + complex(term.weight)
        canonical = [
            Term(weight, ket, bra)
            for (ket, bra), weight in merged.items()
            if weight != 0
        ]
        canonical.sort(key=Term.sort_key)
        return cls(tuple(canonical))

    @classmethod
    def dyad(cls, ket, bra=None, weight=1.0):
        return cls.from_terms([Term(complex(weight), ket, ket if bra is None else bra)])

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def scaled(self, factor):
        return OperatorEnsemble.from_terms(Term(t.weight * factor, t.ket, t.bra) for t in self.terms)

    def weights(self):
        """Mapping (ket, bra) -> weight."""
        return {(t.ket, t.bra): t.weight for t in self.terms}

    def is_hermitian(self, tol=1e-12):
        weights = self.weights()
        for (ket, bra), weight in weights.items():
            partner = weights.get((bra, ket), 0j)
            if abs(partner - weight.conjugate()) > tol:
                return False
        return True

    def isclose(self, other, tol=1e-12):
        """Equal up to term order, with missing dyads read as zero weight."""
        if self.mode_count != other.mode_count or self.kind != other.kind:
            return False
        mine, theirs = self.weights(), other.weights()
        return all(abs(mine.get(key, 0j) - theirs.get(key, 0j)) <= tol for key in set(mine) | set(theirs))


@dataclass(frozen=True)
class DriveParams:
    """Coupling xi, electric charge and per-mode angular frequencies."""
    omegas: tuple
    xi: float = 1.0
    e_charge: float = DEFAULT_CHARGE

    def __post_init__(self):
        object.__setattr__(self, 'omegas', tuple(float(w) for w in self.omegas))

    @property
    def q(self):
        """Scaled charge q = xi * e / sqrt(2)."""
        return self.xi * self.e_charge / math.sqrt(2)

    @property
    def mode_count(self):
        return len(self.omegas)
