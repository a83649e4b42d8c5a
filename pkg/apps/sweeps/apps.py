"""
Sweeps app configuration.
"""
from django.apps import AppConfig


class SweepsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.sweeps'
    verbose_name = '参数扫描'
