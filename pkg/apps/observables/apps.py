"""
Observables app configuration.
"""
from django.apps import AppConfig


class ObservablesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.observables'
    verbose_name = '可观测量'
