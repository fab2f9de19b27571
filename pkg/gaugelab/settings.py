"""
Django settings for gaugelab project.

Every tunable is read from the environment (or a local .env file).
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv("SECRET_KEY", "django-insecure-gaugelab-local-development-key")

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.getenv("DEBUG", "True") == "True"

ALLOWED_HOSTS = os.getenv("ALLOWED_HOSTS", "localhost,127.0.0.1,testserver").split(",")


# Application definition

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    # Local apps
    "darbouxkit",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
]

ROOT_URLCONF = "gaugelab.urls"

WSGI_APPLICATION = "gaugelab.wsgi.application"


# Database
# The app has no models; Django still wants a default alias.

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": os.getenv("DB_NAME", str(BASE_DIR / "db.sqlite3")),
    }
}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# Logging

LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "{levelname} {name}: {message}", "style": "{"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "plain"},
    },
    "loggers": {
        "darbouxkit": {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False},
    },
}


# Self-test bounds
# Symbolic identities are checked up to SELFTEST_MAX_ORDER, randomized
# exact-rational jet checks up to SELFTEST_NUMERIC_MAX_ORDER.

SELFTEST_MAX_ORDER = int(os.getenv("SELFTEST_MAX_ORDER", "6"))
SELFTEST_NUMERIC_MAX_ORDER = int(os.getenv("SELFTEST_NUMERIC_MAX_ORDER", "10"))
SELFTEST_SEED = int(os.getenv("SELFTEST_SEED", "20240607"))
SELFTEST_RANDOM_POINTS = int(os.getenv("SELFTEST_RANDOM_POINTS", "200"))
SELFTEST_RANDOM_CASES = int(os.getenv("SELFTEST_RANDOM_CASES", "1000"))
