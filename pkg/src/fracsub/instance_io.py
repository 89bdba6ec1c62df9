"""JSON instance files.

Layout::

    {"format_version": "1.0",
     "kind": "multiratio" | "mmnl" | "pchoice",
     "payload": {...},
     "generator": {...}}          # optional

Floats are written with ``repr`` precision, so numeric fields survive a
round trip bit for bit.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from .assortment import MMNLInstance
from .errors import FracSubError, InvalidInstance
from .facility import PChoiceInstance
from .ratio import MultiRatioInstance, Ratio
from .regions import Unconstrained, region_from_dict

FORMAT_VERSION = "1.0"
KINDS = ("multiratio", "mmnl", "pchoice")

Instance = Union[MultiRatioInstance, MMNLInstance, PChoiceInstance]


class InstanceFileError(FracSubError, ValueError):
    """Unreadable or invalid instance file; the message names the offending field."""


@dataclass
class InstanceFile:
    kind: str
    instance: Any
    generator: Optional[dict] = None
    format_version: str = FORMAT_VERSION

    def to_dict(self) -> dict:
        out = {
            "format_version": self.format_version,
            "kind": self.kind,
            "payload": self.instance.to_dict(),
        }
        if self.generator is not None:
            out["generator"] = self.generator
        return out


def kind_of(instance: Instance) -> str:
    if isinstance(instance, MultiRatioInstance):
        return "multiratio"
    if isinstance(instance, MMNLInstance):
        return "mmnl"
    if isinstance(instance, PChoiceInstance):
        return "pchoice"
    raise TypeError(f"not an instance: {type(instance).__name__}")


def _field(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise InstanceFileError(f"{where}: missing field {key!r}")
    return d[key]


def _region(payload: dict, where: str):
    if "region" not in payload:
        return Unconstrained()
    try:
        return region_from_dict(payload["region"])
    except (KeyError, TypeError) as exc:
        raise InstanceFileError(f"{where}.region: malformed region ({exc})") from None
    except InvalidInstance as exc:
        raise InstanceFileError(f"{where}.region: {exc}") from None


def _build_multiratio(payload: dict) -> MultiRatioInstance:
    ratios = _field(payload, "ratios", "payload")
    if not isinstance(ratios, list):
        raise InstanceFileError("payload.ratios: expected a list")
    built = []
    for k, r in enumerate(ratios):
        where = f"payload.ratios[{k}]"
        try:
            built.append(Ratio(_field(r, "a", where), _field(r, "b0", where), _field(r, "b", where)))
        except (InvalidInstance, TypeError, ValueError) as exc:
            if isinstance(exc, InstanceFileError):
                raise
            raise InstanceFileError(f"{where}: {exc}") from None
    region = _region(payload, "payload")
    try:
        return MultiRatioInstance(tuple(built), region)
    except InvalidInstance as exc:
        raise InstanceFileError(f"payload: {exc}") from None


def _build_mmnl(payload: dict) -> MMNLInstance:
    args = [_field(payload, key, "payload") for key in ("p", "v0", "v", "r")]
    try:
        return MMNLInstance(*args, region=_region(payload, "payload"))
    except (InvalidInstance, TypeError, ValueError) as exc:
        if isinstance(exc, InstanceFileError):
            raise
        raise InstanceFileError(f"payload: {exc}") from None


def _build_pchoice(payload: dict) -> PChoiceInstance:
    args = [_field(payload, key, "payload") for key in ("d", "v", "w", "p")]
    try:
        return PChoiceInstance(*args, delta=payload.get("delta", 0.5))
    except (InvalidInstance, TypeError, ValueError) as exc:
        raise InstanceFileError(f"payload: {exc}") from None


_BUILDERS = {"multiratio": _build_multiratio, "mmnl": _build_mmnl, "pchoice": _build_pchoice}


def parse_instance(doc: dict) -> InstanceFile:
    if not isinstance(doc, dict):
        raise InstanceFileError("top level: expected a JSON object")
    version = _field(doc, "format_version", "top level")
    if str(version).split(".")[0] != FORMAT_VERSION.split(".")[0]:
        raise InstanceFileError(f"format_version: unsupported version {version!r}")
    kind = _field(doc, "kind", "top level")
    if kind not in KINDS:
        raise InstanceFileError(f"kind: expected one of {KINDS}, got {kind!r}")
    payload = _field(doc, "payload", "top level")
    instance = _BUILDERS[kind](payload)
    return InstanceFile(kind, instance, doc.get("generator"), str(version))


def loads(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_instance(doc)


def load(path: Union[str, Path]) -> InstanceFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceFileError(f"{path}: {exc.strerror}") from None
    return loads(text)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        x = x.item()
    if isinstance(x, float) and not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return x


def dumps(obj: Union[InstanceFile, dict]) -> str:
    """Deterministic JSON text; non-finite floats become the strings ``"inf"``/``"-inf"``."""
    doc = obj.to_dict() if isinstance(obj, InstanceFile) else obj
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_atomic(path: Union[str, Path], text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(path: Union[str, Path], obj: Union[InstanceFile, Instance], generator: Optional[dict] = None) -> None:
    if not isinstance(obj, InstanceFile):
        obj = InstanceFile(kind_of(obj), obj, generator)
    write_atomic(path, dumps(obj))
