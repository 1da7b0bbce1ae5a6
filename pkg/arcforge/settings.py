"""
Django settings for arcforge project.
Generated by 'django-admin startproject' using Django 5.2.1.
"""

from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config("SECRET_KEY", default="arcforge-local-only")

DEBUG = config("DEBUG", default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
    "rest_framework",
    "arcs",
]

# Batch tool: certificates and reports are files, nothing goes to a database
DATABASES = {}

# Django Rest Framework (serializers and renderers only)
REST_FRAMEWORK = {
    "UNICODE_JSON": True,
    "COMPACT_JSON": False,
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "DEFAULT_PARSER_CLASSES": [
        "rest_framework.parsers.JSONParser",
    ],
}

# Internationalization
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# --- Search and verification ---
ARCFORGE_THREADS = config("ARCFORGE_THREADS", default=1, cast=int)
ARCFORGE_SEED = config("ARCFORGE_SEED", default=1, cast=int)
ARCFORGE_CERT_DIR = Path(
    config("ARCFORGE_CERT_DIR", default=str(BASE_DIR / "certificates"))
)
ARCFORGE_ALPHA_NODES = config("ARCFORGE_ALPHA_NODES", default=200000, cast=int)
ARCFORGE_HOLDOUT_SAMPLES = config("ARCFORGE_HOLDOUT_SAMPLES", default=500, cast=int)

# --- Logging ---
ARCFORGE_LOG_LEVEL = config("ARCFORGE_LOG_LEVEL", default="INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "arcs": {
            "handlers": ["console"],
            "level": ARCFORGE_LOG_LEVEL,
            "propagate": False,
        },
    },
}
