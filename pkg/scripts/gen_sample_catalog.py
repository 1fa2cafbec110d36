#!/usr/bin/env python3
"""Regenerate the shipped sample catalog (manifest + PNG assets)."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from swkit.sample_catalog import write_sample_catalog  # noqa: E402


def main() -> None:
    dest = Path(__file__).resolve().parents[1] / "src" / "swkit" / "data" / "sample_catalog"
    manifest = write_sample_catalog(dest)
    count = sum(1 for line in manifest.read_text().splitlines() if not line.startswith("#"))
    print(f"wrote {manifest} ({count} glyphs)")


if __name__ == "__main__":
    main()
