"""Size caps for the exponential parts of the library.

The caps can be raised for experiments through the ``ARGQ_LIMITS``
environment variable, e.g. ``ARGQ_LIMITS="dnf_atoms=14,np_attacks=12"``.
"""

import os

from .errors import InputError, ResourceLimitError

DEFAULTS = {
    "dnf_atoms": 12,
    "predicates": 4,
    "np_attacks": 10,
    "brute_force_nodes": 16,
    "cg_pairs": 10,
    "paths": 200000,
}


def get(name):
    value = DEFAULTS[name]
    raw = os.environ.get("ARGQ_LIMITS", "")
    for item in raw.split(","):
        if not item.strip():
            continue
        key, sep, num = item.partition("=")
        if not sep:
            raise InputError(f"bad ARGQ_LIMITS entry {item!r}")
        if key.strip() == name:
            value = int(num)
    return value


def check(name, size, what):
    cap = get(name)
    if size > cap:
        raise ResourceLimitError(f"{what}: {size} exceeds the limit of {cap} ({name})")
