"""Bundled problem, grading-matrix and seed files."""

from importlib import resources
from pathlib import Path


def path(name: str) -> Path:
    p = Path(str(resources.files("orbifold") / "data" / name))
    if not p.exists():
        raise FileNotFoundError(name)
    return p


def names() -> list:
    return sorted(p.name for p in Path(str(resources.files("orbifold") / "data")).iterdir())
