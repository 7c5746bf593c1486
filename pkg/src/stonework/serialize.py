"""JSON formats for monoids, groupoids, maps and corpus entries.

Loading always re-runs the structural validation: the constructors are the
single source of truth, so a corrupted file fails exactly like a corrupted
in-memory table.
"""

from __future__ import annotations

import json
from pathlib import Path

from .config import DEFAULT_LIMITS, Limits
from .duality import IsoCertificate, MonoidMorphism, StoneGroupoid
from .errors import StructureError
from .groupoids import CoveringFunctor, FiniteGroupoid, groupoid_to_dot
from .inverse_core import InverseMonoid


def monoid_to_json(monoid: InverseMonoid) -> dict:
    return {
        "n": monoid.n,
        "zero": monoid.zero,
        "one": monoid.one,
        "inv": list(monoid.inv),
        "mul": [[int(x) for x in row] for row in monoid.mul],
        "labels": list(monoid.labels) if monoid.labels else None,
    }


def monoid_from_json(data: dict, *, limits: Limits = DEFAULT_LIMITS) -> InverseMonoid:
    monoid = InverseMonoid(data["mul"], data["inv"], data["zero"], data["one"],
                           data.get("labels"), limits=limits)
    if monoid.n != data["n"]:
        raise StructureError("declared size disagrees with the table")
    return monoid


def groupoid_to_json(groupoid: FiniteGroupoid) -> dict:
    return {
        "m": groupoid.m,
        "identities": list(groupoid.identities),
        "d": list(groupoid.d),
        "r": list(groupoid.r),
        "inv": list(groupoid.inv),
        "compose": sorted([g, h, k] for (g, h), k in groupoid.compose.items()),
        "labels": list(groupoid.labels) if groupoid.labels else None,
    }


def groupoid_from_json(data: dict) -> FiniteGroupoid:
    compose = {(g, h): k for g, h, k in data["compose"]}
    groupoid = FiniteGroupoid(data["d"], data["r"], data["inv"], compose,
                              data["identities"], data.get("labels"))
    if groupoid.m != data["m"]:
        raise StructureError("declared size disagrees with the tables")
    return groupoid


def stone_groupoid_to_json(sg: StoneGroupoid) -> dict:
    """The ultrafilter-groupoid export: filters as index lists plus the
    dom/ran/composition data."""
    return sg.filters.to_json()


def morphism_to_json(theta: MonoidMorphism) -> dict:
    return {
        "source": monoid_to_json(theta.source),
        "target": monoid_to_json(theta.target),
        "map": list(theta.mapping),
        "weak": theta.weak,
    }


def morphism_from_json(data: dict, *, limits: Limits = DEFAULT_LIMITS) -> MonoidMorphism:
    return MonoidMorphism(monoid_from_json(data["source"], limits=limits),
                          monoid_from_json(data["target"], limits=limits),
                          tuple(data["map"]), weak=data.get("weak", False))


def functor_to_json(f: CoveringFunctor) -> dict:
    return {
        "source": groupoid_to_json(f.source),
        "target": groupoid_to_json(f.target),
        "map": list(f.arrow_map),
    }


def functor_from_json(data: dict) -> CoveringFunctor:
    return CoveringFunctor(groupoid_from_json(data["source"]),
                           groupoid_from_json(data["target"]),
                           tuple(data["map"]))


def certificate_to_json(cert: IsoCertificate) -> dict:
    return cert.to_json()


# -- corpus entries --------------------------------------------------------------


KINDS = ("monoid", "groupoid", "morphism", "functor", "cn-element")


def entry_to_json(name: str, kind: str, payload: dict) -> dict:
    if kind not in KINDS:
        raise StructureError(f"unknown entry kind {kind!r}")
    return {"name": name, "kind": kind, "payload": payload}


def save_entry(store: Path, name: str, kind: str, payload: dict) -> Path:
    store = Path(store)
    store.mkdir(parents=True, exist_ok=True)
    path = store / f"{name}.json"
    path.write_text(json.dumps(entry_to_json(name, kind, payload), indent=2) + "\n")
    return path


def load_entry(path_or_name, store: Path | None = None, *,
               limits: Limits = DEFAULT_LIMITS):
    """Load and re-verify an entry by path, or by name inside the store.
    Returns (name, kind, object)."""
    path = Path(path_or_name)
    if not path.exists() and store is not None:
        path = Path(store) / f"{path_or_name}.json"
    if not path.exists():
        raise FileNotFoundError(path_or_name)
    data = json.loads(path.read_text())
    kind, payload = data["kind"], data["payload"]
    if kind == "monoid":
        obj = monoid_from_json(payload, limits=limits)
    elif kind == "groupoid":
        obj = groupoid_from_json(payload)
    elif kind == "morphism":
        obj = morphism_from_json(payload, limits=limits)
    elif kind == "functor":
        obj = functor_from_json(payload)
    elif kind == "cn-element":
        from .polycyclic import parse_cn

        obj = parse_cn(payload["expr"], payload["n"])
    else:
        raise StructureError(f"unknown entry kind {kind!r}")
    return data["name"], kind, obj


def render(obj, kind: str, fmt: str) -> str:
    """Render a loaded object in the requested output format."""
    if fmt == "dot":
        if kind != "groupoid":
            raise StructureError("dot output is only defined for groupoids")
        return groupoid_to_dot(obj)
    if kind == "monoid":
        data = monoid_to_json(obj)
    elif kind == "groupoid":
        data = groupoid_to_json(obj)
    elif kind == "morphism":
        data = morphism_to_json(obj)
    elif kind == "functor":
        data = functor_to_json(obj)
    else:
        from .polycyclic import format_cn

        data = {"n": obj.n, "expr": format_cn(obj)}
    if fmt == "json":
        return json.dumps(data, indent=2)
    # text: a short human summary
    if kind == "monoid":
        return f"monoid with {obj.n} elements, zero={obj.zero}, one={obj.one}"
    if kind == "groupoid":
        return f"groupoid with {obj.m} arrows, {len(obj.identities)} identities"
    if kind == "morphism":
        return f"morphism on {obj.source.n} elements"
    if kind == "functor":
        return f"functor on {obj.source.m} arrows"
    return f"element of C_{obj.n}: {data['expr']}"
