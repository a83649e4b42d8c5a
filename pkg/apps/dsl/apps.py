"""
Dsl app configuration.
"""
from django.apps import AppConfig


class DslConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.dsl'
    verbose_name = '态描述语言'
