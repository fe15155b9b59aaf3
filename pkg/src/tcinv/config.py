"""JSON input documents and the built-in example catalog."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .polyring import PolynomialSyntaxError, parse_polynomial

EXAMPLES = ("lixu-cubic", "conic-double-line")

_KEYS = {"coordinates", "ideal", "W", "weights", "dimension", "caps", "description"}
_CAPS = {"lmax", "kmax", "check_cap"}
_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


class DocumentError(ValueError):
    """Malformed or invalid input document."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


@dataclass
class ConfigDocument:
    coordinates: list
    ideal: list
    W: list
    weights: dict
    dimension: int | None = None
    caps: dict = field(default_factory=dict)
    description: str = ""
    source: str = ""

    @property
    def w_prime(self) -> list:
        return [c for c in self.coordinates if c not in set(self.W)]


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_document(text: str, source: str = "<string>") -> ConfigDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: malformed JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    return validate_document(raw, source)


def validate_document(raw, source: str = "<document>") -> ConfigDocument:
    if not isinstance(raw, dict):
        raise DocumentError(f"{source}: top level must be an object")
    extra = set(raw) - _KEYS
    if extra:
        raise DocumentError(f"{source}: unknown key(s) {sorted(extra)}")
    for key in ("coordinates", "ideal", "W", "weights"):
        if key not in raw:
            raise DocumentError(f"{source}: missing required key {key!r}")

    coords = raw["coordinates"]
    if not isinstance(coords, list) or not coords or not all(isinstance(c, str) and c for c in coords):
        raise DocumentError(f"{source}: 'coordinates' must be a nonempty list of names")
    for c in coords:
        if not (c[0].isalpha() or c[0] == "_") or not set(c) <= _NAME_CHARS:
            raise DocumentError(f"{source}: invalid coordinate name {c!r}")
    if len(set(coords)) != len(coords):
        raise DocumentError(f"{source}: coordinate names must be unique")

    ideal = raw["ideal"]
    if not isinstance(ideal, list) or not ideal or not all(isinstance(g, str) for g in ideal):
        raise DocumentError(f"{source}: 'ideal' must be a nonempty list of polynomial strings")
    for i, g in enumerate(ideal):
        try:
            parse_polynomial(g, coords)
        except PolynomialSyntaxError as exc:
            raise DocumentError(f"{source}: ideal[{i}]: {exc}") from exc

    W = raw["W"]
    if not isinstance(W, list) or not W or not all(isinstance(c, str) for c in W):
        raise DocumentError(f"{source}: 'W' must be a nonempty list of coordinate names")
    unknown = [c for c in W if c not in coords]
    if unknown:
        raise DocumentError(f"{source}: unknown coordinate(s) in W: {unknown}")
    if len(set(W)) != len(W):
        raise DocumentError(f"{source}: W lists a coordinate twice")

    weights = raw["weights"]
    if not isinstance(weights, dict):
        raise DocumentError(f"{source}: 'weights' must be an object")
    unknown = [c for c in weights if c not in coords]
    if unknown:
        raise DocumentError(f"{source}: unknown coordinate(s) in weights: {unknown}")
    for name, w in weights.items():
        if name in W:
            raise DocumentError(f"{source}: coordinate {name} is in W and must not carry a weight")
        if not _is_int(w) or w < 1:
            raise DocumentError(f"{source}: weight of {name} must be a positive integer, got {w!r}")
    missing = [c for c in coords if c not in W and c not in weights]
    if missing:
        raise DocumentError(f"{source}: W' coordinate(s) without a weight: {missing}")

    dim = raw.get("dimension")
    if dim is not None and (not _is_int(dim) or dim < 0):
        raise DocumentError(f"{source}: 'dimension' must be a non-negative integer")

    caps = raw.get("caps", {})
    if not isinstance(caps, dict) or set(caps) - _CAPS:
        raise DocumentError(f"{source}: 'caps' may only contain {sorted(_CAPS)}")
    for k, v in caps.items():
        if not _is_int(v) or v < 1:
            raise DocumentError(f"{source}: cap {k} must be a positive integer")

    desc = raw.get("description", "")
    if not isinstance(desc, str):
        raise DocumentError(f"{source}: 'description' must be a string")
    return ConfigDocument(list(coords), list(ideal), list(W), dict(weights), dim, dict(caps), desc, source)


def load_config(path) -> ConfigDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DocumentError(f"{path}: cannot read: {exc}") from exc
    return parse_document(text, str(path))


def example_text(name: str) -> str:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; available: {', '.join(EXAMPLES)}")
    return resources.files("tcinv").joinpath("data", f"{name}.json").read_text(encoding="utf-8")


def load_example(name: str) -> ConfigDocument:
    return parse_document(example_text(name), name)
