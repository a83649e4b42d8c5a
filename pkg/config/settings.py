"""
Django settings for the TopoPhase project.
"""
import math
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-change-me-in-production')

DEBUG = os.getenv('DEBUG', 'True').lower() == 'true'

ALLOWED_HOSTS = []

# Application definition
DJANGO_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
]

THIRD_PARTY_APPS = [
    'rest_framework',
]

LOCAL_APPS = [
    'apps.special',
    'apps.states',
    'apps.weyl',
    'apps.oracle',
    'apps.observables',
    'apps.dsl',
    'apps.sweeps',
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

# No database tables: every value object lives in memory and results go to files.
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'zh-hans'
TIME_ZONE = 'Asia/Shanghai'
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Django REST Framework (serializers and renderers only)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'config.renderers.StandardJSONRenderer',
    ],
    'COMPACT_JSON': True,
    'UNICODE_JSON': True,
    'STRICT_JSON': True,
}

# Drive defaults, k_B = hbar = c = 1
WEYL_XI = float(os.getenv('WEYL_XI', 1.0))
WEYL_CHARGE = float(os.getenv('WEYL_CHARGE', math.sqrt(4 * math.pi / 137)))

# Sweep defaults (scaled time axis)
SWEEP_DEFAULT_POINTS = int(os.getenv('SWEEP_DEFAULT_POINTS', 1000))
SWEEP_DEFAULT_RANGE = (
    float(os.getenv('SWEEP_DEFAULT_RANGE_START', 0.0)),
    float(os.getenv('SWEEP_DEFAULT_RANGE_END', 4 * math.pi)),
)

# Dense Fock-space oracle
ORACLE_DEFAULT_CUTOFF = int(os.getenv('ORACLE_DEFAULT_CUTOFF', 40))
ORACLE_TOLERANCE = float(os.getenv('ORACLE_TOLERANCE', 1e-8))
ORACLE_SAMPLE_SEED = int(os.getenv('ORACLE_SAMPLE_SEED', 0))
ORACLE_MAX_DIMENSION = int(os.getenv('ORACLE_MAX_DIMENSION', 100000))
ORACLE_MAX_MATRIX_DIMENSION = int(os.getenv('ORACLE_MAX_MATRIX_DIMENSION', 2048))

# Logging
LOGS_DIR = BASE_DIR / 'logs'
if not LOGS_DIR.exists():
    LOGS_DIR.mkdir(parents=True, exist_ok=True)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
            'level': os.getenv('CONSOLE_LOG_LEVEL', 'WARNING'),
        },
        'file': {
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / 'logs' / 'topophase.log',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'INFO',
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': 'INFO',
            'propagate': False,
        },
        'apps': {
            'handlers': ['console', 'file'],
            'level': 'DEBUG',
            'propagate': False,
        },
    },
}
