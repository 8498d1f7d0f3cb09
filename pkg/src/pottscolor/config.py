"""Hyperparameter configs: JSON files, shipped presets, strict key checking."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import InputError
from .gnn import Hyperparams

# structural keys that have no sensible default
REQUIRED_KEYS = ("model_kind", "embedding_dim", "hidden_dims", "num_colors")
ALL_KEYS = (
    "model_kind",
    "embedding_dim",
    "hidden_dims",
    "num_colors",
    "learning_rate",
    "dropout",
    "max_epochs",
    "patience",
    "tolerance",
    "seed",
    "optimizer_kind",
    "weight_decay",
)
# accepted for forward compatibility but not implemented: a penalty on the
# number of colors actually used. Anything but zero is refused loudly.
STUB_KEYS = ("color_count_regularization",)


def hyperparams_from_dict(raw: dict) -> Hyperparams:
    if not isinstance(raw, dict):
        raise InputError(f"config must be an object, got {type(raw).__name__}")
    unknown = sorted(set(raw) - set(ALL_KEYS) - set(STUB_KEYS))
    if unknown:
        raise InputError(f"unknown config keys: {', '.join(unknown)}")
    missing = sorted(set(REQUIRED_KEYS) - set(raw))
    if missing:
        raise InputError(f"missing config keys: {', '.join(missing)}")
    stub = raw.get("color_count_regularization", 0)
    if stub not in (0, 0.0):
        raise InputError(
            "color_count_regularization is a stub and must be 0 (penalizing "
            "the number of colors used is not implemented)"
        )
    kwargs = {k: raw[k] for k in ALL_KEYS if k in raw}
    kwargs["hidden_dims"] = tuple(kwargs["hidden_dims"])
    return Hyperparams(**kwargs)


def hyperparams_to_dict(hp: Hyperparams) -> dict:
    out = {k: getattr(hp, k) for k in ALL_KEYS}
    out["hidden_dims"] = list(hp.hidden_dims)
    return out


def load_config(path: str | Path) -> Hyperparams:
    p = Path(path)
    if not p.is_file():
        raise InputError(f"config file not found: {p}")
    try:
        raw = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"config {p} is not valid JSON: {exc}") from None
    return hyperparams_from_dict(raw)


def _preset_dir():
    return resources.files("pottscolor") / "data" / "presets"


def list_presets() -> list[str]:
    return sorted(
        entry.name[: -len(".json")]
        for entry in _preset_dir().iterdir()
        if entry.name.endswith(".json")
    )


def load_preset(name: str) -> Hyperparams:
    entry = _preset_dir() / f"{name}.json"
    if not entry.is_file():
        raise InputError(
            f"unknown preset {name!r}; available: {', '.join(list_presets())}"
        )
    return hyperparams_from_dict(json.loads(entry.read_text()))


def resolve_config(spec) -> Hyperparams:
    """Accepts a Hyperparams, an inline dict, a JSON file path, or a
    shipped preset name."""
    if isinstance(spec, Hyperparams):
        return spec
    if isinstance(spec, dict):
        return hyperparams_from_dict(spec)
    if isinstance(spec, (str, Path)):
        if Path(spec).is_file():
            return load_config(spec)
        return load_preset(str(spec))
    raise InputError(f"cannot interpret {type(spec).__name__} as a config")
