"""JSON file formats with canonical serialization.

Canonical means sorted keys, compact separators, one trailing LF and no
floating point, so that writing what was read reproduces the same bytes.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from .errors import FormatError
from .generators import LabeledSpace
from .incidence import LinearSpace, validate
from .pluecker import Coplanar, MaximalRelatedSet, Star

log = logging.getLogger(__name__)

LINEAR_SPACE = "linear-space/1"
LINE_MAP = "line-map/1"
CLIQUES = "cliques/1"
SUPPORTED_FORMATS = frozenset({LINEAR_SPACE, LINE_MAP, CLIQUES})


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8", newline="\n")


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def _expect_format(doc: Any, fmt: str) -> None:
    if not isinstance(doc, dict) or doc.get("format") != fmt:
        found = doc.get("format") if isinstance(doc, dict) else type(doc).__name__
        raise FormatError(f"expected format {fmt!r}, found {found!r}")


# -- linear-space/1 ----------------------------------------------------------


def space_to_doc(space: LinearSpace) -> dict:
    return {"format": LINEAR_SPACE, "points": space.point_count, "lines": [list(l) for l in space.lines]}


def space_from_doc(doc: Any) -> LinearSpace:
    _expect_format(doc, LINEAR_SPACE)
    points, lines = doc.get("points"), doc.get("lines")
    if not isinstance(points, int) or isinstance(points, bool) or not isinstance(lines, list):
        raise FormatError("linear-space/1 needs integer 'points' and a 'lines' list")
    if not all(isinstance(l, list) and all(isinstance(p, int) and not isinstance(p, bool) for p in l) for l in lines):
        raise FormatError("every line must be a list of integers")
    return validate(points, lines)


def load_space(path: str | Path) -> LinearSpace:
    return space_from_doc(read_json(path))


def save_space(path: str | Path, space: LinearSpace) -> None:
    write_json(path, space_to_doc(space))


def sidecar_doc(labeled: LabeledSpace) -> dict:
    labels = {
        str(i): list(lab) if isinstance(lab, tuple) else lab for i, lab in enumerate(labeled.labels)
    }
    return {"labels": labels, "provenance": dict(labeled.provenance)}


def sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".labels.json")


# -- line-map/1 --------------------------------------------------------------


def _resolve_space(ref: Any, base: Path, key: str) -> LinearSpace:
    if isinstance(ref, str):
        return load_space(base / ref)
    if isinstance(ref, dict):
        inline = space_from_doc({k: v for k, v in ref.items() if k != "path"})
        hint = ref.get("path")
        if isinstance(hint, str) and (base / hint).exists():
            on_disk = load_space(base / hint)
            if on_disk != inline:
                log.warning("%s: inline geometry differs from %s; using the inline one", key, hint)
        return inline
    raise FormatError(f"line-map/1 '{key}' must be a path or an inline linear-space/1 object")


def map_to_doc(source_ref: Any, target_ref: Any, image) -> dict:
    return {"format": LINE_MAP, "source": source_ref, "target": target_ref, "image": list(image)}


def load_line_map(path: str | Path) -> tuple[LinearSpace, LinearSpace, list[int]]:
    """Read a line-map/1 file; path references resolve relative to the file."""
    path = Path(path)
    doc = read_json(path)
    _expect_format(doc, LINE_MAP)
    image = doc.get("image")
    if not isinstance(image, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in image):
        raise FormatError("line-map/1 'image' must be a list of integers")
    source = _resolve_space(doc.get("source"), path.parent, "source")
    target = _resolve_space(doc.get("target"), path.parent, "target")
    return source, target, image


# -- cliques/1 ---------------------------------------------------------------


def clique_entry(M: MaximalRelatedSet) -> dict:
    entry: dict[str, Any] = {"lines": list(M.lines), "class": M.kind}
    if isinstance(M.classification, Star):
        entry["vertex"] = M.classification.vertex
    elif isinstance(M.classification, Coplanar):
        entry["plane"] = list(M.classification.plane)
    return entry


def cliques_doc(sets: list[MaximalRelatedSet]) -> dict:
    return {"format": CLIQUES, "sets": [clique_entry(M) for M in sets]}


def check_cliques_doc(doc: Any) -> dict:
    _expect_format(doc, CLIQUES)
    if not isinstance(doc.get("sets"), list):
        raise FormatError("cliques/1 needs a 'sets' list")
    for s in doc["sets"]:
        if s.get("class") not in ("star", "coplanar", "other") or not isinstance(s.get("lines"), list):
            raise FormatError(f"malformed cliques/1 entry {s!r}")
    return doc


# -- verdict report -----------------------------------------------------------


def verdict_doc(verdict) -> dict:
    if verdict.kind == "collineation":
        return {"verdict": "collineation", "point_map": list(verdict.mapping.image)}
    return {"verdict": "correlation", "plane_map": verdict.mapping.plane_map}
