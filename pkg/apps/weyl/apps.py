"""
Weyl app configuration.
"""
from django.apps import AppConfig


class WeylConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.weyl'
    verbose_name = 'Weyl 函数'
