from django.apps import AppConfig


class DarbouxkitConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'darbouxkit'
    verbose_name = "Gauge invariants and Darboux transformations"
