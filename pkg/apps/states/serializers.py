"""
State serializers for TopoPhase (JSON round-trips of OperatorEnsemble).
"""
from rest_framework import serializers

from config.exceptions import StateError
from .models import Coherent, Fock, OperatorEnsemble, ProductKet, SlotKind, Term


class ComplexField(serializers.Field):
    """Complex number as {"re": x, "im": y}; plain numbers are accepted on input."""
    default_error_messages = {
        'invalid': '需要含 re/im 键的复数对象或实数',
    }

    def to_representation(self, value):
        value = complex(value)
        return {'re': value.real, 'im': value.imag}

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid')
        if isinstance(data, (int, float)):
            return complex(data)
        if isinstance(data, dict) and set(data) <= {'re', 'im'}:
            try:
                return complex(float(data.get('re', 0.0)), float(data.get('im', 0.0)))
            except (TypeError, ValueError):
                self.fail('invalid')
        self.fail('invalid')


class ProductKetField(serializers.Field):
    """Product ket as a list of slots: integers (Fock) or complex objects (coherent)."""
    default_error_messages = {
        'invalid': '乘积态需要非空的槽位列表',
        'slot': '第 {index} 个槽位无效',
        'mixed': 'Fock 槽位与相干态槽位不能混用',
    }

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        self.complex_field = ComplexField()

    def to_representation(self, ket):
        if ket.kind == SlotKind.FOCK:
            return [slot.occupation for slot in ket.modes]
        return [self.complex_field.to_representation(slot.amplitude) for slot in ket.modes]

    def to_internal_value(self, data):
        if not isinstance(data, (list, tuple)) or not data:
            self.fail('invalid')
        slots = []
        for index, item in enumerate(data):
            if isinstance(item, int) and not isinstance(item, bool) and item >= 0:
                slots.append(Fock(item))
            elif isinstance(item, dict):
                slots.append(Coherent(self.complex_field.to_internal_value(item)))
            else:
                self.fail('slot', index=index)
        try:
            return ProductKet(tuple(slots))
        except StateError:
            self.fail('mixed')


class TermSerializer(serializers.Serializer):
    """Single weighted dyad."""
    weight = ComplexField()
    ket = ProductKetField()
    bra = ProductKetField()


class EnsembleSerializer(serializers.Serializer):
    """OperatorEnsemble wire format: kind, mode count and dyad list."""
    kind = serializers.ChoiceField(choices=SlotKind.choices)
    modes = serializers.IntegerField(min_value=1, source='mode_count')
    terms = TermSerializer(many=True)

    def validate(self, attrs):
        terms = [Term(**term) for term in attrs['terms']]
        if not terms:
            raise serializers.ValidationError({'terms': '至少需要一个并矢项'}, code='missing_params')
        for term in terms:
            if term.ket.kind != attrs['kind'] or term.bra.kind != attrs['kind']:
                raise serializers.ValidationError({'kind': '槽位类型与声明不一致'}, code='kind_mismatch')
            if term.ket.mode_count != attrs['mode_count'] or term.bra.mode_count != attrs['mode_count']:
                raise serializers.ValidationError({'modes': '模式数与声明不一致'}, code='mode_mismatch')
        attrs['ensemble'] = OperatorEnsemble.from_terms(terms)
        return attrs

    def create(self, validated_data):
        return validated_data['ensemble']


def ensemble_to_data(rho):
    """Serialize an OperatorEnsemble to plain JSON-ready data."""
    return EnsembleSerializer(rho).data


def ensemble_from_data(data):
    """Deserialize JSON-ready data, raising StateError on invalid input."""
    serializer = EnsembleSerializer(data=data)
    if not serializer.is_valid():
        raise StateError(f'Invalid ensemble data: {dict(serializer.errors)}', code='missing_params')
    return serializer.save()
