"""
Access to the CENTROIDKIT settings group with library defaults.
"""
from typing import Any

from django.conf import settings

DEFAULTS = {
    'WINDOW': 5,
    'RANDOM_SEED': 20240601,
    'MULT_CLOSURE_LIMIT': None,
    'VERIFY_BUILDS': False,
}


def kit_setting(name: str) -> Any:
    """Value of CENTROIDKIT[name], falling back to DEFAULTS when unset or unconfigured."""
    if settings.configured:
        return getattr(settings, 'CENTROIDKIT', {}).get(name, DEFAULTS[name])
    return DEFAULTS[name]
