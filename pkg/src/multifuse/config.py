"""Run configuration: TOML file, defaults, and command-line overrides."""
from __future__ import annotations

import copy
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import ConfigError

SCHEMA_VERSION = 1
RECIPES = ("citation", "words", "topics", "precomputed")

DEFAULTS: dict[str, Any] = {
    "schema_version": SCHEMA_VERSION,
    "output_dir": "multifuse-out",
    "threads": None,
    "input": {"sep": ",", "drop_empty": False},
    "layers": [],
    "vocabulary": {"min_docs": 3, "max_doc_fraction": 0.95},
    "lda": {"alpha": None, "beta": 0.01, "sweeps": 1000, "burn_in": 500, "seed": 0},
    "snf": {"k_neighbors": 20, "iterations": 20},
    "fusion": {"pairs": None},
    "baselines": {"boyack_auto": True, "fixed_weights": [0.5, 0.333, 0.2], "glanzel_w": 0.5},
    "cluster": {"seed": 0, "resolution": 1.0, "matrices": None},
    "compare": {"matrices": None},
    "export": {"matrix": None, "partition": None, "threshold": 0.0, "crosstab": None},
    "synth": {
        "generator": "complementary_pair",
        "n": 200,
        "k": 4,
        "sigma": 0.05,
        "mu_in": 0.7,
        "mu_out": 0.2,
        "seeds": list(range(10)),
    },
}


@dataclass(frozen=True)
class LayerRecipe:
    name: str
    recipe: str
    path: Path
    k_topics: tuple[int, ...] = ()
    format: str = "matrix"  # precomputed only: "matrix" or "distribution"

    def output_names(self) -> list[str]:
        if self.recipe == "topics":
            return [f"{self.name}_{k}" for k in self.k_topics]
        return [self.name]


def _merge(base: dict, extra: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _parse_value(text: str) -> Any:
    try:
        return tomllib.loads(f"v = {text}")["v"]
    except tomllib.TOMLDecodeError:
        return text


def apply_override(data: dict, assignment: str) -> None:
    """Apply ``a.b.c=value``; the value is parsed as a TOML literal when possible."""
    if "=" not in assignment:
        raise ConfigError(f"override {assignment!r} is not of the form key=value")
    key, raw = assignment.split("=", 1)
    parts = key.strip().split(".")
    node = data
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ConfigError(f"override {key!r}: {part!r} is not a table")
    node[parts[-1]] = _parse_value(raw.strip())


class RunConfig:
    """Resolved configuration. ``data`` is the merged key-value tree."""

    def __init__(self, data: dict, base_dir: Path):
        self.data = data
        self.base_dir = Path(base_dir)
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {data.get('schema_version')!r}; expected {SCHEMA_VERSION}")
        self.layers = [self._recipe(i, spec) for i, spec in enumerate(data.get("layers") or [])]
        names = [n for layer in self.layers for n in layer.output_names()]
        if len(set(names)) != len(names):
            raise ConfigError(f"layer names collide: {names}")
        if self.sep not in (",", "\t"):
            raise ConfigError("input.sep must be ',' or a tab")

    @classmethod
    def load(cls, path: str | os.PathLike | None, overrides: list[str] = ()) -> "RunConfig":
        data = copy.deepcopy(DEFAULTS)
        base = Path.cwd()
        if path is not None:
            path = Path(path)
            try:
                with open(path, "rb") as fh:
                    loaded = tomllib.load(fh)
            except OSError as exc:
                raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
            except tomllib.TOMLDecodeError as exc:
                raise ConfigError(f"{path}: {exc}") from exc
            data = _merge(data, loaded)
            base = path.resolve().parent
        for item in overrides:
            apply_override(data, item)
        return cls(data, base)

    def _recipe(self, i: int, spec: dict) -> LayerRecipe:
        if not isinstance(spec, dict):
            raise ConfigError(f"layers[{i}] must be a table")
        recipe = spec.get("recipe")
        if recipe not in RECIPES:
            raise ConfigError(f"layers[{i}].recipe must be one of {RECIPES}, got {recipe!r}")
        if "path" not in spec:
            raise ConfigError(f"layers[{i}] needs a path")
        name = str(spec.get("name") or {"citation": "cited_references", "words": "bags_of_words",
                                          "topics": "topics", "precomputed": f"layer{i}"}[recipe])
        ks: tuple[int, ...] = ()
        if recipe == "topics":
            raw = spec.get("k_topics", [5, 10, 15, 20, 25, 30])
            ks = tuple(int(k) for k in (raw if isinstance(raw, list) else [raw]))
            if not ks:
                raise ConfigError(f"layers[{i}].k_topics is empty")
        fmt = spec.get("format", "matrix")
        if fmt not in ("matrix", "distribution"):
            raise ConfigError(f"layers[{i}].format must be 'matrix' or 'distribution'")
        return LayerRecipe(name, recipe, self.resolve(spec["path"]), ks, fmt)

    def resolve(self, p: str | os.PathLike) -> Path:
        p = Path(p)
        return p if p.is_absolute() else self.base_dir / p

    def section(self, name: str) -> dict:
        return self.data.get(name) or {}

    @property
    def output_dir(self) -> Path:
        return self.resolve(self.data["output_dir"])

    @property
    def sep(self) -> str:
        return self.section("input").get("sep", ",")

    @property
    def drop_empty(self) -> bool:
        return bool(self.section("input").get("drop_empty", False))

    @property
    def threads(self) -> int:
        env = os.environ.get("MULTIFUSE_THREADS")
        cap = int(env) if env else None
        t = self.data.get("threads") or cap or os.cpu_count() or 1
        return max(1, min(int(t), cap) if cap else int(t))

    def dumps(self) -> str:
        return json.dumps(self.data, sort_keys=True, default=str, indent=2)
