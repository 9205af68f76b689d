"""Three-valued truth values: 0 (out), 1/2 (undecided) and 1 (in)."""

from .errors import InputError

HALF = 0.5
TRI_VALUES = (0, HALF, 1)

_WORDS = {0: "out", HALF: "und", 1: "in"}
_FROM_WORD = {"out": 0, "und": HALF, "in": 1, "0": 0, "1": 1, "1/2": HALF, "0.5": HALF, "½": HALF}


def check_value(v):
    if v not in (0, HALF, 1):
        raise InputError(f"not a three-valued truth value: {v!r}")
    return normalize(v)


def normalize(v):
    """Map numerically equal inputs onto the canonical objects 0, HALF, 1."""
    if v == 0:
        return 0
    if v == 1:
        return 1
    return HALF


def neg(v):
    return normalize(1 - v)


def word(v):
    return _WORDS[normalize(v)]


def from_word(text):
    try:
        return _FROM_WORD[text.strip()]
    except KeyError:
        raise InputError(f"unknown truth value {text!r}") from None


def show(v):
    v = normalize(v)
    return "1/2" if v == HALF else str(v)
