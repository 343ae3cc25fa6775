"""Two small block shifts where a bound is attained although its equality hypothesis fails."""

from importlib import resources

FIXTURES = ("zero_block", "zero_chain")


def fixture_path(name: str):
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    return resources.files(__name__) / f"{name}.json"


def load_fixture(name: str):
    from ..documents import loads_document

    return loads_document(fixture_path(name).read_text(encoding="utf-8"))[0]
