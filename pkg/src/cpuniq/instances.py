"""JSON instance documents: parsing, validation and conversion to library objects."""
from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path
from typing import Any

from .corr import FinCorr, jx
from .digraph import MultiDigraph, MultivaluedMap, graph_of_map
from .errors import InvalidInput, NotOpen
from .fintop import FinTopSpace, discrete_space, make_space, to_mask, to_points
from .verdict import EndoSystem, FinQuiver, QuiverEdge, from_endomorphism, from_quiver

KINDS = ("graph", "mvmap", "correspondence", "quiver", "endomorphism")


@dataclass
class InstanceDoc:
    kind: str
    raw: dict[str, Any]
    obj: Any  # MultiDigraph, MultivaluedMap, FinCorr, FinQuiver or EndoSystem
    u: int | None = None
    ideal: int | None = None

    def correspondence(self) -> tuple[FinCorr, int]:
        """The correspondence behind a correspondence, quiver or endomorphism document, with J."""
        if self.kind == "correspondence":
            c = self.obj
        elif self.kind == "quiver":
            c = from_quiver(self.obj)[0]
        elif self.kind == "endomorphism":
            c = from_endomorphism(self.obj)
        else:
            raise InvalidInput(f"a {self.kind} document has no correspondence")
        return c, jx(c) if self.ideal is None else self.ideal

    def graph(self) -> MultiDigraph:
        if self.kind == "graph":
            return self.obj
        if self.kind == "mvmap":
            return graph_of_map(self.obj)
        raise InvalidInput(f"a {self.kind} document has no graph on a space")


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidInput(f"{what} must be an integer, got {x!r}")
    return x


def _key_int(x, what: str) -> int:
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            raise InvalidInput(f"{what} {x!r} is not an integer") from None
    return _int(x, what)


def _points(xs, n: int, what: str) -> int:
    if not isinstance(xs, list):
        raise InvalidInput(f"{what} must be a list of point indices")
    for p in xs:
        if not 0 <= _int(p, what) < n:
            raise InvalidInput(f"{what} contains {p}, outside 0..{n - 1}")
    return to_mask(xs)


def _space(d: dict, n: int) -> FinTopSpace:
    if "opens" not in d:
        return discrete_space(n)
    opens = d["opens"]
    if not isinstance(opens, list):
        raise InvalidInput("opens must be a list of point lists")
    return make_space(n, [_points(o, n, "open set") for o in opens])


def _open_u(d: dict, space: FinTopSpace) -> int:
    if "u" not in d:
        return space.full
    u = _points(d["u"], space.n_points, "u")
    if not space.is_open(u):
        raise NotOpen(f"u = {to_points(u)} is not open in the given topology")
    return u


def _weight(w) -> Fraction:
    if isinstance(w, float):
        raise InvalidInput("weights must be decimal strings or integers, not floats")
    if isinstance(w, bool):
        raise InvalidInput("weights must be decimal strings or integers")
    if isinstance(w, int):
        return Fraction(w)
    if isinstance(w, str):
        try:
            return Fraction(Decimal(w))
        except (InvalidOperation, ValueError):
            try:
                return Fraction(w)
            except ValueError:
                raise InvalidInput(f"weight {w!r} is not a decimal or rational number") from None
    raise InvalidInput(f"weight {w!r} is not a decimal string")


def _ideal(d: dict, c: FinCorr) -> int | None:
    if "ideal" not in d:
        return None
    j = _points(d["ideal"], c.k, "ideal")
    return j


def parse_instance(d: Any) -> InstanceDoc:
    if not isinstance(d, dict):
        raise InvalidInput("instance must be a JSON object")
    kind = d.get("kind")
    if kind not in KINDS:
        raise InvalidInput(f"kind must be one of {', '.join(KINDS)}")
    if kind in ("graph", "mvmap"):
        n = _int(d.get("points"), "points")
        if n < 1:
            raise InvalidInput("points must be at least 1")
        space = _space(d, n)
        if kind == "graph":
            edges = d.get("edges", [])
            if not isinstance(edges, list) or any(not isinstance(e, list) or len(e) != 2 for e in edges):
                raise InvalidInput("edges must be a list of [src, rng] pairs")
            for e in edges:
                for p in e:
                    if not 0 <= _int(p, "edge endpoint") < n:
                        raise InvalidInput(f"edge endpoint {p} outside 0..{n - 1}")
            obj = MultiDigraph.from_edges(space, [tuple(e) for e in edges])
        else:
            m = d.get("map", {})
            if not isinstance(m, dict):
                raise InvalidInput("map must be an object from point to list of points")
            targets = [0] * n
            for k, v in m.items():
                x = _key_int(k, "map key")
                if not 0 <= x < n:
                    raise InvalidInput(f"map key {x} outside 0..{n - 1}")
                targets[x] = _points(v, n, f"map value at {x}")
            obj = MultivaluedMap(space, tuple(targets))
        return InstanceDoc(kind, d, obj, u=_open_u(d, space))
    if kind == "correspondence":
        dims, mult = d.get("dims"), d.get("mult")
        if not isinstance(dims, list) or not isinstance(mult, list) or not all(isinstance(r, list) for r in mult):
            raise InvalidInput("correspondence needs a dims list and a mult matrix")
        c = FinCorr(tuple(dims), tuple(tuple(r) for r in mult))
        return InstanceDoc(kind, d, c, ideal=_ideal(d, c))
    if kind == "quiver":
        n = _int(d.get("vertices"), "vertices")
        raw_edges = d.get("edges", [])
        if not isinstance(raw_edges, list):
            raise InvalidInput("edges must be a list")
        edges = []
        for i, e in enumerate(raw_edges):
            if not isinstance(e, dict) or not {"src", "rng", "weight"} <= set(e):
                raise InvalidInput("each quiver edge needs src, rng and weight")
            edges.append(QuiverEdge(i, _int(e["src"], "src"), _int(e["rng"], "rng"), _weight(e["weight"])))
        q = FinQuiver(n, tuple(edges))
        return InstanceDoc(kind, d, q)
    n = _int(d.get("points"), "points")
    phi_raw, idx_raw = d.get("phi", {}), d.get("index", {})
    if not isinstance(phi_raw, dict) or not isinstance(idx_raw, dict):
        raise InvalidInput("phi and index must be objects keyed by point")
    phi = {_key_int(k, "phi key"): _key_int(v, "phi value") for k, v in phi_raw.items()}
    index = {_key_int(k, "index key"): _int(v, "index") for k, v in idx_raw.items()}
    for x in phi:
        index.setdefault(x, 1)
    e = EndoSystem(n, phi, index)
    c = from_endomorphism(e)
    return InstanceDoc(kind, d, e, ideal=_ideal(d, c))


def load_instance(path: str | Path) -> InstanceDoc:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None
    return parse_instance(d)
