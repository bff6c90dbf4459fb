import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'centroidkit.settings')
django.setup()
