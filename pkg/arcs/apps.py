from django.apps import AppConfig


class ArcsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'arcs'
    verbose_name = 'Arcs and normal rational curves'
