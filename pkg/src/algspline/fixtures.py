"""Bundled example complexes."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .cellcomplex import EmbeddedComplex, load_complex

PLANAR_SIMPLICIAL = ("fexm", "star_n2", "star_n3", "star_n3_skew", "star_n5",
                     "morgan_scott", "morgan_scott_generic", "generic")
STARS = ("star_n2", "star_n3", "star_n3_skew", "fexm", "star_n5")
SPATIAL = ("octahedron", "tetra_split")
POLYHEDRAL = ("th", "th_perturbed")


def fixture_path(name: str) -> Path:
    path = resources.files("algspline") / "data" / f"{name}.json"
    if not path.is_file():
        raise FileNotFoundError(f"no bundled complex named {name!r}")
    return Path(str(path))


def fixture_names() -> list[str]:
    folder = resources.files("algspline") / "data"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> EmbeddedComplex:
    return load_complex(fixture_path(name))
