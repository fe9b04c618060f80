"""
Django settings for clifford_project project.

Generated by 'django-admin startproject' and trimmed to what a command-line
toolkit needs: no database, no middleware, no URL routing.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/stable/ref/settings/
"""

import os

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = 'django-insecure-clifford-bianchi-toolkit'

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'bianchi',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [],
        },
    },
]

# Everything is computed in memory; nothing is persisted.
DATABASES = {}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging

BIANCHI_LOG_LEVEL = 'INFO'

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'bianchi': {
            'handlers': ['console'],
            'level': BIANCHI_LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Clifford-Bianchi toolkit configuration

# Largest arity m of a CliffordAlgebra (rank 2^m). Bott algebras may exceed it by 3.
BIANCHI_MAX_ARITY = 9

# Denominator-norm bound for candidate cusps in the fundamental domain search
BIANCHI_DENOMINATOR_NORM_BOUND = 10

# Word length k of the heuristic unit search
BIANCHI_UNIT_HEURISTIC_DEPTH = 4

# Seeds of the heuristic unit search: norm-1 signed sums of at most this many basis elements
BIANCHI_UNIT_SEED_WIDTH = 2

# Largest order rank whose unit group is enumerated exhaustively
BIANCHI_EXHAUSTIVE_UNIT_RANK = 32

# Cut/iteration cap of the under-spheres LP loop
BIANCHI_LP_ITERATION_CAP = 200

# Ring closure stops after factor * rank rounds
BIANCHI_CLOSURE_ITERATION_FACTOR = 2

# Coset table cap for the index certificate
BIANCHI_COSET_TABLE_CAP = 20000

# Random samples drawn by the Bott periodicity checks
BIANCHI_BOTT_SAMPLES = 200

# Significant digits used when exact rationals are rendered into SVG
BIANCHI_SVG_PRECISION = 20

# Longest binary code accepted by order_from_code (raised by one with --stretch)
BIANCHI_CODE_LENGTH_CAP = 9

# Seed shared by every randomized check
BIANCHI_RANDOM_SEED = 20240601

# Slow oracle tests (rank 16 orders, index 120, E8) run only when enabled
BIANCHI_RUN_SLOW_CHECKS = False

# Reports, JSON and SVG exports land here unless --out is given
BIANCHI_OUTPUT_DIR = os.environ.get('BIANCHI_OUTPUT_DIR', os.path.join(BASE_DIR, 'output'))
