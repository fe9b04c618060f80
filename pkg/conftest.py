import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'clifford_project.settings')
django.setup()
