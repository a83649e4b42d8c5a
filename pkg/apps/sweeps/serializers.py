"""
Sweep serializers for TopoPhase (validation of command-line and file configs).
"""
from django.conf import settings
from rest_framework import serializers

from apps.states.models import DEFAULT_CHARGE, Normalization
from config.exceptions import ConfigError
from .models import SweepConfig


def _setting(name, default):
    return getattr(settings, name, default)


class SweepConfigSerializer(serializers.Serializer):
    """Validate a sweep configuration and build a SweepConfig."""
    state = serializers.CharField(trim_whitespace=True)
    omegas = serializers.ListField(child=serializers.FloatField(), min_length=1)
    xi = serializers.FloatField(required=False)
    e_charge = serializers.FloatField(required=False, min_value=0)
    t_range = serializers.ListField(
        child=serializers.FloatField(), min_length=2, max_length=2, required=False, allow_null=True
    )
    points = serializers.IntegerField(required=False, min_value=2)
    normalization = serializers.ChoiceField(choices=Normalization.choices, required=False)
    axis_omega = serializers.FloatField(required=False, allow_null=True)
    label = serializers.CharField(required=False, allow_blank=True)

    def validate_e_charge(self, value):
        if value <= 0:
            raise serializers.ValidationError('电荷必须为正数')
        return value

    def validate_t_range(self, value):
        """Validate start < end."""
        if value is not None and not value[0] < value[1]:
            raise serializers.ValidationError('时间范围的起点必须小于终点')
        return value

    def validate_axis_omega(self, value):
        if value is not None and value <= 0:
            raise serializers.ValidationError('标度频率必须为正数')
        return value

    def create(self, validated_data):
        return SweepConfig(
            state=validated_data['state'],
            omegas=tuple(validated_data['omegas']),
            xi=validated_data.get('xi', _setting('WEYL_XI', 1.0)),
            e_charge=validated_data.get('e_charge', _setting('WEYL_CHARGE', DEFAULT_CHARGE)),
            t_range=validated_data.get('t_range'),
            points=validated_data.get('points', _setting('SWEEP_DEFAULT_POINTS', 1000)),
            normalization=validated_data.get('normalization', Normalization.OVERLAP),
            axis_omega=validated_data.get('axis_omega'),
            label=validated_data.get('label', ''),
        )


def config_from_data(data):
    """Deserialize config data, raising ConfigError with per-field errors."""
    serializer = SweepConfigSerializer(data=data)
    if not serializer.is_valid():
        errors = {
            key: [str(e) for e in value] if isinstance(value, list) else str(value)
            for key, value in serializer.errors.items()
        }
        raise ConfigError('Invalid sweep configuration', errors=errors)
    return serializer.save()
