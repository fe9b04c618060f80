from django.apps import AppConfig


class BianchiConfig(AppConfig):
    name = 'bianchi'
    verbose_name = 'Clifford-Bianchi groups'
