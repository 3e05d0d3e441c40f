"""Strict JSON schema for variety descriptors.

Every descriptor is an object with a ``kind`` key. Unknown keys are
rejected so that typos do not silently fall back to defaults.
"""

from __future__ import annotations

import json
from pathlib import Path

from .classify import (Abelian, Enriques, Flags, Generic, K3, PGroup, Superspecial, Surface,
                       VarietyDescriptor)
from .errors import InvalidArgument
from .hodge_witt import HodgeDiamond
from .slopes import SlopeMultiset

_SCHEMA = {
    "abelian": ({"g", "h1_slopes", "rho"}, set()),
    "k3": ({"height"}, {"rho", "artin_invariant"}),
    "enriques": ({"p", "subtype"}, set()),
    "surface": ({"b2", "rho", "h01", "h02", "np_h2"}, {"np_h1", "ns_torsion", "flags"}),
    "superspecial": ({"g", "p"}, set()),
    "generic": ({"dim", "profiles", "hodge", "rho"}, {"flags", "j_exponent_log"}),
}
_COMMON = {"kind", "name", "p", "comment"}

_FLAG_KEYS = {"ordinary", "frolicher_degenerates", "torsion_free"}


def _int(data: dict, key: str) -> int:
    value = data[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidArgument(f"{key!r} must be an integer, got {value!r}")
    return value


def _opt_int(data: dict, key: str):
    return _int(data, key) if data.get(key) is not None else None


def parse_flags(data) -> Flags:
    if not isinstance(data, dict):
        raise InvalidArgument("flags must be an object")
    extra = set(data) - _FLAG_KEYS
    if extra:
        raise InvalidArgument(f"unknown flag keys: {sorted(extra)}")
    for key in ("ordinary", "frolicher_degenerates"):
        if key in data and not isinstance(data[key], bool):
            raise InvalidArgument(f"flag {key!r} must be a boolean")
    tf = data.get("torsion_free", [])
    if not isinstance(tf, list) or not all(isinstance(n, int) and not isinstance(n, bool) for n in tf):
        raise InvalidArgument("torsion_free must be a list of degrees")
    return Flags(data.get("ordinary", False), data.get("frolicher_degenerates", False), frozenset(tf))


def flags_to_json(flags: Flags) -> dict:
    return {"ordinary": flags.ordinary, "frolicher_degenerates": flags.frolicher_degenerates,
            "torsion_free": sorted(flags.torsion_free)}


def parse_descriptor(data) -> VarietyDescriptor:
    if not isinstance(data, dict):
        raise InvalidArgument("a descriptor is a JSON object")
    kind = data.get("kind")
    if kind not in _SCHEMA:
        raise InvalidArgument(f"'kind' must be one of {sorted(_SCHEMA)}, got {kind!r}")
    required, optional = _SCHEMA[kind]
    missing = required - set(data)
    if missing:
        raise InvalidArgument(f"{kind} descriptor is missing {sorted(missing)}")
    extra = set(data) - required - optional - _COMMON
    if extra:
        raise InvalidArgument(f"unknown keys for {kind} descriptor: {sorted(extra)}")

    if kind == "abelian":
        return Abelian(_int(data, "g"), SlopeMultiset.from_json(data["h1_slopes"]), _int(data, "rho"))
    if kind == "k3":
        height = data["height"]
        if height != "supersingular":
            height = _int(data, "height")
        return K3(height, _opt_int(data, "rho"), _opt_int(data, "artin_invariant"))
    if kind == "enriques":
        return Enriques(_int(data, "p"), data["subtype"])
    if kind == "superspecial":
        return Superspecial(_int(data, "g"), _int(data, "p"))
    if kind == "surface":
        ns = data.get("ns_torsion", [])
        if not isinstance(ns, list):
            raise InvalidArgument("ns_torsion is a list of invariant factors")
        return Surface(_int(data, "b2"), _int(data, "rho"), _int(data, "h01"), _int(data, "h02"),
                       SlopeMultiset.from_json(data["np_h2"]), PGroup(tuple(ns)),
                       parse_flags(data.get("flags", {})),
                       SlopeMultiset.from_json(data.get("np_h1", [])))
    # generic
    profiles = data["profiles"]
    if not isinstance(profiles, dict):
        raise InvalidArgument("profiles maps a degree (as a string) to slope triples")
    try:
        parsed = {int(n): SlopeMultiset.from_json(ms) for n, ms in profiles.items()}
    except ValueError as exc:
        if isinstance(exc, InvalidArgument):
            raise
        raise InvalidArgument(f"profile degrees must be integers: {exc}") from None
    if not isinstance(data["hodge"], dict):
        raise InvalidArgument("hodge maps 'i,j' to h^ij")
    dim = _int(data, "dim")
    return Generic(dim, parsed, HodgeDiamond.from_json(dim, data["hodge"]), _int(data, "rho"),
                   parse_flags(data.get("flags", {})), _opt_int(data, "j_exponent_log"))


def descriptor_to_json(desc: VarietyDescriptor) -> dict:
    if isinstance(desc, Abelian):
        return {"kind": "abelian", "g": desc.g, "h1_slopes": desc.h1_slopes.to_json(), "rho": desc.rho}
    if isinstance(desc, K3):
        out = {"kind": "k3", "height": desc.height}
        if desc.rho is not None:
            out["rho"] = desc.rho
        if desc.artin_invariant is not None:
            out["artin_invariant"] = desc.artin_invariant
        return out
    if isinstance(desc, Enriques):
        return {"kind": "enriques", "p": desc.p, "subtype": desc.subtype}
    if isinstance(desc, Superspecial):
        return {"kind": "superspecial", "g": desc.g, "p": desc.p}
    if isinstance(desc, Surface):
        return {"kind": "surface", "b2": desc.b2, "rho": desc.rho, "h01": desc.h01, "h02": desc.h02,
                "np_h2": desc.np_h2.to_json(), "np_h1": desc.np_h1.to_json(),
                "ns_torsion": list(desc.ns_torsion.invariant_factors), "flags": flags_to_json(desc.flags)}
    if isinstance(desc, Generic):
        out = {"kind": "generic", "dim": desc.dim,
               "profiles": {str(n): ms.to_json() for n, ms in sorted(desc.profiles.items())},
               "hodge": desc.hodge.to_json(), "rho": desc.rho, "flags": flags_to_json(desc.flags)}
        if desc.j_exponent_log is not None:
            out["j_exponent_log"] = desc.j_exponent_log
        return out
    raise InvalidArgument(f"not a variety descriptor: {desc!r}")


def load_json(path) -> object:
    """Read a JSON file. OSError propagates (I/O), malformed JSON becomes InvalidArgument."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path}: not valid JSON ({exc})") from None


def load_descriptor(path) -> VarietyDescriptor:
    return parse_descriptor(load_json(path))
