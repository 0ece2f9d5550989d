"""Bundled example models."""

from __future__ import annotations

from importlib import resources

from .modelfile import ModelFile, parse_model

CORPORA = ("sentinel",)


def corpus_bytes(name: str = "sentinel") -> bytes:
    if name not in CORPORA:
        raise KeyError(f"no bundled model named {name!r}")
    return resources.files(__package__).joinpath("data", f"{name}.json").read_bytes()


def load_sentinel() -> ModelFile:
    return parse_model(corpus_bytes("sentinel"))
