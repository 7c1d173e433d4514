"""Built-in knots and links with reference Alexander polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import InvalidInputError
from .knotio import parse_pd, parse_presentation, wirtinger
from .laurent import parse_poly

__all__ = ["KnotEntry", "catalog_get", "catalog_list"]


@dataclass(frozen=True)
class KnotEntry:
    name: str
    source: str
    reference: str
    notes: str = ""

    @property
    def is_pd(self):
        return self.source.lstrip().upper().startswith("PD")

    def pd(self):
        if not self.is_pd:
            raise InvalidInputError(f"{self.name} is stored as a presentation, not a diagram")
        return parse_pd(self.source)

    def presentation(self):
        return wirtinger(self.pd()) if self.is_pd else parse_presentation(self.source)

    def reference_poly(self, p=None):
        return parse_poly(self.reference, p)


@lru_cache(maxsize=None)
def _load():
    text = resources.files("knotperiod").joinpath("data/catalog.txt").read_text()
    entries = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, source, ref, notes = (s.strip() for s in line.split("|", 3))
        entries[name] = KnotEntry(name, source, ref, notes)
    return entries


def catalog_list():
    return list(_load().values())


def catalog_get(name: str) -> KnotEntry:
    try:
        return _load()[name]
    except KeyError:
        known = ", ".join(_load())
        raise InvalidInputError(f"unknown catalog entry {name!r}; known: {known}") from None
