import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'arcforge.settings')
django.setup()
