"""Packaged defaults: grid bounds, counterexample cap, expected failures."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def load_defaults() -> dict:
    text = resources.files("pbernoulli").joinpath("data/defaults.json").read_text()
    return json.loads(text)


def default_expected_failures() -> frozenset[str]:
    return frozenset(load_defaults()["expected_fail"])
