"""Canonical JSON encoding shared by the library, CLI, and service."""

from __future__ import annotations

import json


def canonical_json(obj) -> bytes:
    """Stable byte encoding: sorted keys, compact separators, UTF-8."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode(
        "utf-8"
    )
