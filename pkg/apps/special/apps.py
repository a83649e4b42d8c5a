"""
Special functions app configuration.
"""
from django.apps import AppConfig


class SpecialConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.special'
    verbose_name = '特殊函数'
