import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "gaugelab.settings")
django.setup()
