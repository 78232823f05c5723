"""JSON descriptors for paths, surfaces and fields, as consumed by the CLI.

Potential descriptors live on :class:`~gaugelab.potentials.PotentialSpec`.
Unknown keys are rejected everywhere.
"""
import json
from pathlib import Path

import numpy as np

from . import geometry as geo
from .calculus import curl_field
from .potentials import PotentialSpec, monopole_field, solenoid_field

PATH_SHORTCUTS = {
    "unit-circle": lambda: geo.unit_circle(),
}

SURFACE_SHORTCUTS = {
    "unit-disk": lambda: geo.disk(1.0),
    "unit-sphere": lambda: geo.sphere(1.0),
}


def load_json(text):
    """Parse inline JSON, or the contents of a file when ``text`` starts with ``@``."""
    if isinstance(text, dict):
        return text
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    return json.loads(text)


def _take(d, kind, required=(), optional=()):
    keys = set(d) - {"kind"}
    extra = keys - set(required) - set(optional)
    if extra:
        raise ValueError(f"unknown fields for {kind}: {sorted(extra)}")
    missing = set(required) - keys
    if missing:
        raise ValueError(f"missing fields for {kind}: {sorted(missing)}")
    return d


def _vec(v, name):
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector")
    return a


def path_from_descriptor(desc) -> geo.ParamPath:
    if isinstance(desc, str) and desc in PATH_SHORTCUTS:
        return PATH_SHORTCUTS[desc]()
    d = load_json(desc)
    kind = d.get("kind")
    if kind == "circle":
        _take(d, kind, optional=("radius", "center", "turns", "normal"))
        return geo.circle(
            float(d.get("radius", 1.0)),
            _vec(d.get("center", [0, 0, 0]), "center"),
            d.get("turns", 1),
            _vec(d.get("normal", [0, 0, 1]), "normal"),
        )
    if kind == "segment":
        _take(d, kind, required=("start", "end"))
        return geo.segment(_vec(d["start"], "start"), _vec(d["end"], "end"))
    if kind == "polyline":
        _take(d, kind, required=("points",), optional=("closed",))
        return geo.polyline(d["points"], closed=bool(d.get("closed", False)))
    if kind == "custom-samples":
        _take(d, kind, required=("samples",), optional=("closed",))
        return geo.polyline(d["samples"], closed=bool(d.get("closed", True)))
    raise ValueError(f"unknown path kind {kind!r}")


def surface_from_descriptor(desc) -> geo.ParamSurface:
    if isinstance(desc, str) and desc in SURFACE_SHORTCUTS:
        return SURFACE_SHORTCUTS[desc]()
    d = load_json(desc)
    kind = d.get("kind")
    if kind == "disk":
        _take(d, kind, optional=("radius", "center", "normal", "split_radii"))
        return geo.disk(
            float(d.get("radius", 1.0)),
            _vec(d.get("center", [0, 0, 0]), "center"),
            _vec(d.get("normal", [0, 0, 1]), "normal"),
            tuple(float(r) for r in d.get("split_radii", ())),
        )
    if kind == "sphere":
        _take(d, kind, optional=("radius", "center"))
        return geo.sphere(float(d.get("radius", 1.0)), _vec(d.get("center", [0, 0, 0]), "center"))
    if kind == "rectangle":
        _take(d, kind, required=("origin", "edge_u", "edge_v"))
        return geo.rectangle(_vec(d["origin"], "origin"), _vec(d["edge_u"], "edge_u"), _vec(d["edge_v"], "edge_v"))
    raise ValueError(f"unknown surface kind {kind!r}")


def field_from_descriptor(desc):
    """Vectorised field ``(n, 3) -> (n, 3)`` from a descriptor."""
    d = load_json(desc)
    kind = d.get("kind")
    if kind == "monopole":
        _take(d, kind, required=("g",))
        g = float(d["g"])
        return lambda pts: monopole_field(g, pts)
    if kind == "solenoid":
        _take(d, kind, required=("B", "R"))
        B, R = float(d["B"]), float(d["R"])
        return lambda pts: solenoid_field(B, R, pts)
    if kind == "zero":
        _take(d, kind)
        return lambda pts: np.zeros_like(np.atleast_2d(pts), dtype=float)
    if kind == "curl":
        _take(d, kind, required=("potential",), optional=("h",))
        h = d.get("h")
        return curl_field(PotentialSpec.from_dict(d["potential"]), None if h is None else float(h))
    raise ValueError(f"unknown field kind {kind!r}")


def potential_from_descriptor(desc) -> PotentialSpec:
    return PotentialSpec.from_dict(load_json(desc))
