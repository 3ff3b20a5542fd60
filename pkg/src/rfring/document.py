"""Loading the JSON workspace document that declares groups, amalgams and presentations."""

from __future__ import annotations

import json
from pathlib import Path

from .amalgam import Amalgam
from .groups import (DEFAULT_CAP, FiniteGroup, GroupHom, direct_product, from_permutations, hom,
                     make_cyclic)
from .presentations import RingPresentation, parse_presentation

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    code = "document.invalid"


class WorkspaceDoc:
    """Named definitions resolved lazily, with cycle detection on references."""

    def __init__(self, data: dict, cap: int | None = None):
        if not isinstance(data, dict):
            raise DocumentError("document must be a JSON object")
        if data.get("schema") != SCHEMA_VERSION:
            raise DocumentError(f"unsupported schema {data.get('schema')!r}, expected {SCHEMA_VERSION}")
        self.data = data
        self.options = dict(data.get("options", {}))
        self.cap = cap if cap is not None else int(self.options.get("cap", DEFAULT_CAP))
        self._groups: dict = {}
        self._homs: dict = {}
        self._amalgams: dict = {}
        self._resolving: set = set()

    @classmethod
    def load(cls, path, cap: int | None = None) -> WorkspaceDoc:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
        return cls(data, cap)

    def _section(self, name):
        sec = self.data.get(name, {})
        if not isinstance(sec, dict):
            raise DocumentError(f"'{name}' must be an object")
        return sec

    def names(self, section: str) -> list:
        return list(self._section(section))

    def _lookup(self, section, name):
        sec = self._section(section)
        if name not in sec:
            raise DocumentError(f"unknown {section[:-1]} {name!r}")
        return sec[name]

    def group(self, name: str) -> FiniteGroup:
        if name in self._groups:
            return self._groups[name]
        spec = self._lookup("groups", name)
        key = ("group", name)
        if key in self._resolving:
            raise DocumentError(f"cyclic definition involving group {name!r}")
        self._resolving.add(key)
        try:
            G = self._build_group(name, spec)
        finally:
            self._resolving.discard(key)
        self._groups[name] = G
        return G

    def _build_group(self, name, spec):
        if not isinstance(spec, dict) or len(spec) != 1:
            raise DocumentError(f"group {name!r} needs exactly one of cyclic/product/perm")
        (kind, arg), = spec.items()
        if kind == "cyclic":
            G = make_cyclic(int(arg), cap=self.cap)
        elif kind == "product":
            if not isinstance(arg, list) or len(arg) != 2:
                raise DocumentError(f"product {name!r} takes two group references")
            G = direct_product(self.group(arg[0]), self.group(arg[1]), cap=self.cap)
        elif kind == "perm":
            G = from_permutations(int(arg["degree"]), arg.get("gens", []), cap=self.cap)
        else:
            raise DocumentError(f"unknown group constructor {kind!r} for {name!r}")
        G.name = name
        return G

    def hom(self, name: str) -> GroupHom:
        if name not in self._homs:
            spec = self._lookup("homs", name)
            self._homs[name] = hom(self.group(spec["source"]), self.group(spec["target"]),
                                   spec["images"])
        return self._homs[name]

    def _embedding(self, ref, edge, target):
        if isinstance(ref, str):
            f = self.hom(ref)
            if f.source is not edge or f.target is not target:
                raise DocumentError(f"homomorphism {ref!r} does not match the amalgam groups")
            return f
        if isinstance(ref, dict):
            return hom(edge, target, ref)
        raise DocumentError("embedding must be a hom name or a generator-image map")

    def amalgam(self, name: str) -> Amalgam:
        if name not in self._amalgams:
            spec = self._lookup("amalgams", name)
            try:
                G1, G2, H = (self.group(spec[k]) for k in ("left", "right", "edge"))
                e1 = self._embedding(spec["embed_left"], H, G1)
                e2 = self._embedding(spec["embed_right"], H, G2)
            except KeyError as exc:
                raise DocumentError(f"amalgam {name!r} is missing {exc.args[0]!r}") from None
            self._amalgams[name] = Amalgam(G1, G2, H, e1, e2, name=name)
        return self._amalgams[name]

    def presentation(self, name: str) -> tuple[RingPresentation, dict]:
        """The parsed presentation and its metadata (``expected_rank``, ``note``)."""
        spec = self._lookup("presentations", name)
        meta = {}
        if isinstance(spec, dict):
            meta = {k: v for k, v in spec.items() if k != "text"}
            spec = spec.get("text")
        if not isinstance(spec, str):
            raise DocumentError(f"presentation {name!r} must be a string or have a 'text' field")
        return parse_presentation(spec), meta
