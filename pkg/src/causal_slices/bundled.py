"""Example files shipped with the package."""

from __future__ import annotations

from pathlib import Path

FIXTURE_DIR = Path(__file__).with_name("fixtures")


def fixtures() -> dict[str, Path]:
    """Bundled example files by name."""
    return {p.name: p for p in sorted(FIXTURE_DIR.iterdir()) if p.is_file()}


def fixture_path(name: str) -> Path:
    path = FIXTURE_DIR / name
    if not path.is_file():
        raise FileNotFoundError(f"no bundled fixture {name!r}")
    return path
