import re

from utils.normalizers import EXPECTATIONS

_FIELD = re.compile(r"^(cyclotomic|cyc|q|(prime:)?\d+)$", re.IGNORECASE)
_ORDER = re.compile(r"^(grevlex|lex|block:\d+)$", re.IGNORECASE)


def is_valid_field(text: str) -> bool:
    if not text or not isinstance(text, str):
        return False
    return _FIELD.match(text.strip()) is not None


def is_valid_order(name: str) -> bool:
    if not name or not isinstance(name, str):
        return False
    return _ORDER.match(name.strip()) is not None


def is_valid_expect(value) -> bool:
    return value is None or (isinstance(value, str) and value.strip().lower() in EXPECTATIONS)


def is_positive(value) -> bool:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool):
        return False
    try:
        return float(value) > 0
    except (TypeError, ValueError):
        return False
