"""Bundled example datasets."""

from __future__ import annotations

from importlib import resources

from .graph import BipartiteGraph, load_edge_list

_BUILTINS = {
    "davis": "davis_southern_women.tsv",
}


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def load_builtin(name: str) -> BipartiteGraph:
    """Load a bundled dataset by name.

    ``davis``: the Davis-Gardner Southern Women attendance network
    (18 women x 14 events), women on the left side.
    """
    try:
        filename = _BUILTINS[name]
    except KeyError:
        raise ValueError(
            f"unknown dataset {name!r}; available: {', '.join(builtin_names())}"
        ) from None
    text = resources.files("hellrank.data").joinpath(filename).read_text("utf-8")
    return load_edge_list(text.splitlines(), delimiter="\t")
