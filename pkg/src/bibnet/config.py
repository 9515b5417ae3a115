"""Run configuration: key=value file plus command-line overrides."""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .records import CorpusFilter, DocType, EntityKind


class ConfigError(ValueError):
    """Invalid configuration value or file."""


KINDS = {k.value: k for k in EntityKind}
BETWEENNESS_NORMS = ("paper", "pairs", "none")
CLOSENESS_MODES = ("component", "harmonic")
EIGEN_MODES = ("binary", "weighted")
FORMATS = ("wos", "canonical")


@dataclass(frozen=True)
class RunConfig:
    input_path: str | None = None
    input_format: str = "wos"
    out_dir: str = "out"
    kinds: tuple[EntityKind, ...] = (EntityKind.AUTHOR,)
    year_min: int | None = None
    year_max: int | None = None
    doc_types: tuple[str, ...] | None = None  # None = all
    betweenness_norm: str = "paper"
    closeness_mode: str = "component"
    eigenvector_mode: str = "binary"
    seed: int = 42
    resolution: float = 1.0
    threads: int = 1
    top_k: int = 20
    weights: tuple[float, ...] = (0.25, 0.25, 0.25, 0.25)
    directions: tuple[str, ...] = ("benefit",) * 4

    def corpus_filter(self) -> CorpusFilter:
        doc_types = None
        if self.doc_types is not None:
            try:
                doc_types = frozenset(DocType(d) for d in self.doc_types)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        try:
            return CorpusFilter(
                year_min=self.year_min, year_max=self.year_max, doc_types=doc_types
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def validate(self) -> "RunConfig":
        if self.input_format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.betweenness_norm not in BETWEENNESS_NORMS:
            raise ConfigError(f"betweenness-norm must be one of {BETWEENNESS_NORMS}")
        if self.closeness_mode not in CLOSENESS_MODES:
            raise ConfigError(f"closeness must be one of {CLOSENESS_MODES}")
        if self.eigenvector_mode not in EIGEN_MODES:
            raise ConfigError(f"eigen must be one of {EIGEN_MODES}")
        if self.top_k < 1:
            raise ConfigError("top-k must be >= 1")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if len(self.weights) != 4:
            raise ConfigError("weights must list four values")
        if any(w < 0 for w in self.weights) or sum(self.weights) <= 0:
            raise ConfigError("weights must be nonnegative with a positive sum")
        if len(self.directions) != 4 or any(
            d not in ("benefit", "cost") for d in self.directions
        ):
            raise ConfigError("directions must list four of benefit|cost")
        self.corpus_filter()
        return self

    def normalized_weights(self) -> tuple[float, ...]:
        total = sum(self.weights)
        return tuple(w / total for w in self.weights)

    def echo(self) -> dict:
        """Every effective value, for the manifest."""
        return {
            "input": self.input_path,
            "format": self.input_format,
            "out": self.out_dir,
            "kinds": [k.value for k in self.kinds],
            "year_min": self.year_min,
            "year_max": self.year_max,
            "doc_types": list(self.doc_types) if self.doc_types else "all",
            "betweenness_norm": self.betweenness_norm,
            "closeness": self.closeness_mode,
            "eigen": self.eigenvector_mode,
            "seed": self.seed,
            "resolution": self.resolution,
            "threads": self.threads,
            "top_k": self.top_k,
            "weights": list(self.normalized_weights()),
            "directions": list(self.directions),
        }


_KEYS = {
    "input",
    "format",
    "out",
    "kinds",
    "year_min",
    "year_max",
    "doc_types",
    "betweenness_norm",
    "closeness",
    "eigen",
    "seed",
    "resolution",
    "threads",
    "top_k",
    "weights",
    "directions",
}


def parse_config_file(path: str | Path) -> dict[str, str]:
    """key=value lines; blank lines and #-comments are skipped."""
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _KEYS:
            raise ConfigError(f"{path}:{line_no}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def _parse_kinds(value: str) -> tuple[EntityKind, ...]:
    kinds = []
    for token in value.split(","):
        token = token.strip().lower()
        if token not in KINDS:
            raise ConfigError(f"unknown entity kind {token!r}")
        kinds.append(KINDS[token])
    if not kinds:
        raise ConfigError("kinds must not be empty")
    return tuple(dict.fromkeys(kinds))


def build_config(
    file_values: dict[str, str] | None, overrides: dict[str, object]
) -> RunConfig:
    """Merge config-file values with CLI overrides (CLI wins)."""
    config = RunConfig()
    merged: dict[str, object] = dict(file_values or {})
    merged.update({k: v for k, v in overrides.items() if v is not None})
    try:
        for key, value in merged.items():
            if key == "input":
                config = replace(config, input_path=str(value))
            elif key == "format":
                config = replace(config, input_format=str(value))
            elif key == "out":
                config = replace(config, out_dir=str(value))
            elif key == "kinds":
                kinds = (
                    value
                    if isinstance(value, tuple)
                    else _parse_kinds(str(value))
                )
                config = replace(config, kinds=kinds)
            elif key == "year_min":
                config = replace(config, year_min=int(value))
            elif key == "year_max":
                config = replace(config, year_max=int(value))
            elif key == "doc_types":
                if str(value).strip().lower() == "all":
                    config = replace(config, doc_types=None)
                else:
                    config = replace(
                        config,
                        doc_types=tuple(
                            t.strip() for t in str(value).split(",") if t.strip()
                        ),
                    )
            elif key == "betweenness_norm":
                config = replace(config, betweenness_norm=str(value))
            elif key == "closeness":
                config = replace(config, closeness_mode=str(value))
            elif key == "eigen":
                config = replace(config, eigenvector_mode=str(value))
            elif key == "seed":
                config = replace(config, seed=int(value))
            elif key == "resolution":
                config = replace(config, resolution=float(value))
            elif key == "threads":
                config = replace(config, threads=int(value))
            elif key == "top_k":
                config = replace(config, top_k=int(value))
            elif key == "weights":
                if isinstance(value, tuple):
                    weights = value
                else:
                    weights = tuple(float(w) for w in str(value).split(","))
                config = replace(config, weights=weights)
            elif key == "directions":
                if isinstance(value, tuple):
                    directions = value
                else:
                    directions = tuple(
                        d.strip().lower() for d in str(value).split(",")
                    )
                config = replace(config, directions=directions)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {key!r}: {exc}") from exc
    return config.validate()
