from typing import Optional
import re

EXPECTATIONS = ("containment", "noncontainment", "pass", "fail")


def normalize_field(raw: Optional[str]) -> Optional[str]:
    """Canonical field text: "cyclotomic" or "prime:p"."""
    if raw is None:
        return None
    raw = str(raw).strip().lower()
    if not raw:
        return None
    if raw in ("cyclotomic", "cyc", "q"):
        return "cyclotomic"
    digits = re.sub(r"^prime:", "", raw)
    if digits.isdigit():
        return f"prime:{int(digits)}"
    return None


def normalize_order(raw: Optional[str]) -> Optional[str]:
    if raw is None:
        return None
    raw = re.sub(r"\s+", "", str(raw)).lower()
    return raw or None


def normalize_expect(raw: Optional[str]) -> Optional[str]:
    if raw is None:
        return None
    raw = str(raw).strip().lower()
    # accept the hyphenated spelling too
    raw = {"non-containment": "noncontainment", "passed": "pass", "failed": "fail"}.get(raw, raw)
    return raw if raw in EXPECTATIONS else None
