"""
Settings for the full acceptance run, including the slow oracle checks.

    python manage.py test bianchi --settings=clifford_project.settings_slow
"""

from .settings import *  # noqa: F401,F403

BIANCHI_RUN_SLOW_CHECKS = True
