"""
Django settings for the centroidkit project.
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only management commands run; the key is never used to sign anything.
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'django-insecure-centroidkit-dev-key')

DEBUG = os.environ.get('DEBUG', 'False').lower() == 'true'

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    # Local apps
    'algebra',
    'console',
]

# No persistence beyond flat JSON files
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Toolkit configuration
_multiplication_limit = os.environ.get('CENTROIDKIT_MULT_CLOSURE_LIMIT')

CENTROIDKIT = {
    'WINDOW': int(os.environ.get('CENTROIDKIT_WINDOW', '5')),
    'RANDOM_SEED': int(os.environ.get('CENTROIDKIT_RANDOM_SEED', '20240601')),
    'MULT_CLOSURE_LIMIT': int(_multiplication_limit) if _multiplication_limit else None,
    'VERIFY_BUILDS': os.environ.get('CENTROIDKIT_VERIFY_BUILDS', 'False').lower() == 'true',
}

LOG_LEVEL = os.environ.get('CENTROIDKIT_LOG_LEVEL', 'INFO').upper()

# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': 'INFO',
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / 'logs' / 'centroidkit.log',
            'formatter': 'verbose',
        },
        'console': {
            'level': 'WARNING',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console', 'file'],
        'level': 'WARNING',
    },
    'loggers': {
        'algebra': {
            'handlers': ['console', 'file'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'console': {
            'handlers': ['console', 'file'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}

# Create logs directory
(BASE_DIR / 'logs').mkdir(exist_ok=True)
