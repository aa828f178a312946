"""The module dependence graph: modules, features, edges, queries, JSON I/O.

The graph is built single-writer during analysis and then frozen; queries and
serialization are read-only and deterministically ordered (module path, then
feature name).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import SchemaError, UnknownModule


@dataclass(frozen=True)
class ModuleId:
    """A module's name (AMD/CJS name, or the module path for plain scripts)
    plus its canonical project-relative path."""

    name: str
    path: str


class FeatureKind(Enum):
    EXTRACTED_PROPERTY = "ExtractedProperty"
    MODULE_OBJECT = "ModuleObject"
    GLOBAL_VAR = "GlobalVar"
    IMPLIED_GLOBAL = "ImpliedGlobal"
    GLOBAL_OBJECT_PROPERTY = "GlobalObjectProperty"
    TOP_LEVEL_DECL = "TopLevelDecl"
    MUTATOR = "Mutator"


@dataclass
class ModuleFeature:
    """An individually exportable declaration of a module."""

    name: str
    kind: FeatureKind
    decl_site: Optional[tuple[int, int]] = field(default=None, compare=False)
    emitted_name: str = ""
    exported: bool = False
    # a Mutator references exactly one non-Mutator feature of its module
    target: Optional[str] = None

    def __post_init__(self):
        if not self.emitted_name:
            self.emitted_name = self.name
        if (self.kind is FeatureKind.MUTATOR) != (self.target is not None):
            raise ValueError("target is required exactly for Mutator features")


class UsageType(Enum):
    R = "R"  # read
    W = "W"  # written
    C = "C"  # called
    L = "L"  # external library import
    S = "S"  # imported only for side effects


#: usages whose edges carry no feature
FEATURELESS_USAGES = (UsageType.L, UsageType.S)


@dataclass(frozen=True)
class Dependency:
    """Fine-grained edge: importing module, target module, feature name
    (None for library and side-effect edges), usage type."""

    from_: ModuleId
    to: ModuleId
    feature: Optional[str]
    usage: UsageType

    def __post_init__(self):
        if (self.feature is None) != (self.usage in FEATURELESS_USAGES):
            raise ValueError("feature must be absent exactly for L/S usage")


@dataclass
class ModuleNode:
    id: ModuleId
    features: dict[str, ModuleFeature] = field(default_factory=dict)

    def feature_names(self) -> set[str]:
        return set(self.features)


class Mdg:
    """Whole-project graph ``(M, D)`` plus the external library targets."""

    def __init__(self):
        self.modules: dict[str, ModuleNode] = {}  # keyed by path
        self.deps: set[Dependency] = set()
        self.libraries: dict[str, ModuleId] = {}  # keyed by path/specifier

    # --- construction ---

    def add_module(self, module_id: ModuleId, features: list[ModuleFeature] | None = None) -> ModuleNode:
        if module_id.path in self.modules:
            raise ValueError(f"duplicate module path {module_id.path!r}")
        node = ModuleNode(id=module_id)
        for feat in features or []:
            node.features[feat.name] = feat
        self.modules[module_id.path] = node
        return node

    def add_library(self, module_id: ModuleId) -> ModuleId:
        return self.libraries.setdefault(module_id.path, module_id)

    def add_dep(self, dep: Dependency) -> None:
        if dep.from_ == dep.to:
            raise ValueError("a module never imports its own features")
        if dep.from_.path not in self.modules:
            raise ValueError(f"unknown source module {dep.from_.path!r}")
        if dep.usage is UsageType.L:
            if dep.to.path not in self.libraries:
                raise ValueError(f"unknown library {dep.to.path!r}")
        else:
            target = self.modules.get(dep.to.path)
            if target is None:
                raise ValueError(f"unknown target module {dep.to.path!r}")
            if dep.feature is not None and dep.feature not in target.features:
                raise ValueError(f"{dep.feature!r} is not a feature of {dep.to.path!r}")
        self.deps.add(dep)

    # --- queries ---

    def module(self, path: str) -> ModuleNode:
        node = self.modules.get(path)
        if node is None:
            raise UnknownModule(path)
        return node

    def incoming(self, m: ModuleId | str) -> list[Dependency]:
        path = m if isinstance(m, str) else m.path
        self.module(path)
        found = [d for d in self.deps if d.to.path == path]
        found.sort(key=lambda d: (d.from_.path, d.feature or "", d.usage.value))
        return found

    def outgoing(self, m: ModuleId | str) -> list[Dependency]:
        path = m if isinstance(m, str) else m.path
        self.module(path)
        found = [d for d in self.deps if d.from_.path == path]
        found.sort(key=lambda d: (d.to.path, d.feature or "", d.usage.value))
        return found

    # --- equality (structural) ---

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mdg):
            return NotImplemented
        if set(self.libraries) != set(other.libraries) or self.deps != other.deps:
            return False
        if set(self.modules) != set(other.modules):
            return False
        for path, node in self.modules.items():
            if node.id != other.modules[path].id:
                return False
            if node.features != other.modules[path].features:
                return False
        return True

    def __repr__(self) -> str:
        return f"Mdg(modules={len(self.modules)}, deps={len(self.deps)}, libraries={len(self.libraries)})"


# --- serialization ---


def serialize(mdg: Mdg) -> str:
    """Deterministic JSON text; byte-identical across runs for equal graphs."""
    modules = []
    for path in sorted(mdg.modules):
        node = mdg.modules[path]
        features = []
        for name in sorted(node.features):
            feat = node.features[name]
            features.append(
                {
                    "name": feat.name,
                    "kind": feat.kind.value,
                    "exported": feat.exported,
                    "emitted_name": feat.emitted_name,
                }
            )
        modules.append({"name": node.id.name, "path": node.id.path, "features": features})
    deps = []
    for dep in sorted(mdg.deps, key=lambda d: (d.from_.path, d.to.path, d.feature or "", d.usage.value)):
        deps.append(
            {
                "from": dep.from_.path,
                "to": dep.to.path,
                "feature": dep.feature,
                "usage": dep.usage.value,
            }
        )
    libraries = sorted(mdg.libraries)
    return json.dumps({"modules": modules, "deps": deps, "libraries": libraries}, indent=2) + "\n"


def deserialize(text: str) -> Mdg:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("top-level value must be an object")
    for key in ("modules", "deps", "libraries"):
        if key not in data or not isinstance(data[key], list):
            raise SchemaError(f"missing or invalid {key!r} list")

    mdg = Mdg()
    for entry in data["modules"]:
        try:
            module_id = ModuleId(name=entry["name"], path=entry["path"])
            features = [
                ModuleFeature(
                    name=f["name"],
                    kind=FeatureKind(f["kind"]),
                    exported=bool(f["exported"]),
                    emitted_name=f["emitted_name"],
                )
                for f in entry["features"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"invalid module entry: {exc}") from exc
        mdg.add_module(module_id, features)
    for spec in data["libraries"]:
        if not isinstance(spec, str):
            raise SchemaError("library entries must be strings")
        mdg.add_library(ModuleId(name=spec, path=spec))
    for entry in data["deps"]:
        try:
            usage = UsageType(entry["usage"])
            from_path, to_path = entry["from"], entry["to"]
            feature = entry["feature"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"invalid dependency entry: {exc}") from exc
        from_node = mdg.modules.get(from_path)
        if from_node is None:
            raise SchemaError(f"dependency from unknown module {from_path!r}")
        if usage is UsageType.L:
            to_id = mdg.libraries.get(to_path)
            if to_id is None:
                raise SchemaError(f"dependency on unknown library {to_path!r}")
        else:
            to_node = mdg.modules.get(to_path)
            if to_node is None:
                raise SchemaError(f"dependency on unknown module {to_path!r}")
            to_id = to_node.id
        try:
            mdg.add_dep(Dependency(from_=from_node.id, to=to_id, feature=feature, usage=usage))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    return mdg
