"""Built-in example presentations (.cdga files shipped with the package)."""

from __future__ import annotations

from importlib import resources

from ..dsl import SourceDocument, parse_algebra
from ..errors import FixtureError

FIXTURE_NAMES = (
    "cp2",
    "m11",
    "m14",
    "sphere3",
    "oddproj1",
    "oddproj2",
    "oddproj3",
    "elliptic228",
)

# fixtures that `reproduce all` runs without --heavy
DEFAULT_REPRODUCE = ("cp2", "m11", "m14", "sphere3", "oddproj1", "oddproj2", "oddproj3")


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise FixtureError(
            f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}"
        )
    return (
        resources.files(__name__).joinpath(f"{name}.cdga").read_text()
    )


def load_fixture(name: str) -> SourceDocument:
    return parse_algebra(fixture_text(name))
