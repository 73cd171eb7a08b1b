"""Run configuration: a single JSON document with exact rationals as strings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cohomology import CohomologyDecl
from .examples import BUILTIN_NAMES, ExampleSpec, builtin
from .hochschild import Cochain
from .poly import BasePoly
from .scalar import as_scalar, parse_scalar
from .weyl import Truncation

__all__ = ["ConfigError", "RunConfig", "spec_to_json", "spec_from_json", "canonical_json"]

DEFAULTS = {"degree_cap": 10, "laurent_floor": 0, "order": 5, "test_degree": 2, "seed": 0}


class ConfigError(ValueError):
    """Malformed configuration (with a location when it comes from JSON text)."""


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _matrix_to_json(m) -> list:
    return [[as_scalar(v).render() for v in row] for row in m]


def _matrix_from_json(data, where: str) -> list:
    try:
        rows = [[parse_scalar(str(v)) for v in row] for row in data]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ConfigError(f"{where}: matrix must be square")
    return rows


def spec_to_json(spec: ExampleSpec) -> dict:
    out = {
        "name": spec.name,
        "coords": list(spec.coords),
        "omega": _matrix_to_json(spec.omega),
        "christoffel": [{"index": list(idx), "poly": p.to_json()}
                        for idx, p in sorted(spec.christoffel.items())],
        "perturbations": [{"order": k, "omega": _matrix_to_json(w)} for k, w in spec.perturbations],
        "periodic": list(spec.periodic),
        "description": spec.description,
    }
    if spec.candidate is not None:
        out["candidate"] = spec.candidate.to_json()["terms"]
    if spec.decl is not None:
        out["decl"] = [{"name": n, "omega": _matrix_to_json(_form_matrix(w, spec.dim))}
                       for n, w in zip(spec.decl.names, spec.decl.forms)]
    return out


def _form_matrix(w, dim: int) -> list:
    m = [[as_scalar(0)] * dim for _ in range(dim)]
    for (_, dx, _), c in w.terms.items():
        i, j = dx
        m[i][j] = c
        m[j][i] = -c
    return m


def spec_from_json(data: dict) -> ExampleSpec:
    try:
        coords = tuple(data["coords"])
        omega = _matrix_from_json(data["omega"], "omega")
    except KeyError as exc:
        raise ConfigError(f"inline spec is missing {exc}") from exc
    dim = len(coords)
    if len(omega) != dim:
        raise ConfigError("omega size does not match coords")
    chris = {}
    for item in data.get("christoffel", []):
        idx = tuple(item["index"])
        if len(idx) != 3:
            raise ConfigError("christoffel index must have three entries")
        try:
            chris[idx] = BasePoly.from_json(dim, item["poly"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"christoffel {idx}: {exc}") from exc
    perts = [(int(item["order"]), _matrix_from_json(item["omega"], "perturbation"))
             for item in data.get("perturbations", [])]
    cand = None
    if "candidate" in data:
        cand = Cochain.from_json({"arity": 1, "dim": dim, "terms": data["candidate"]})
    decl = None
    if "decl" in data:
        decl = CohomologyDecl(dim, [(d["name"], _matrix_from_json(d["omega"], "decl"))
                                    for d in data["decl"]])
    return ExampleSpec(
        name=data.get("name", "inline"),
        coords=coords,
        omega=omega,
        christoffel=chris,
        perturbations=perts,
        candidate=cand,
        decl=decl,
        periodic=tuple(data.get("periodic", ())),
        description=data.get("description", ""),
    )


@dataclass
class RunConfig:
    example: str | None = None
    spec: dict | None = None
    degree_cap: int = DEFAULTS["degree_cap"]
    laurent_floor: int = DEFAULTS["laurent_floor"]
    order: int = DEFAULTS["order"]
    test_degree: int = DEFAULTS["test_degree"]
    seed: int = DEFAULTS["seed"]
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.example is None) == (self.spec is None):
            raise ConfigError("give exactly one of 'example' or 'spec'")
        if self.example is not None and self.example not in BUILTIN_NAMES:
            raise ConfigError(f"unknown example {self.example!r}")
        try:
            self.truncation()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.order < 0:
            raise ConfigError("order must be >= 0")
        if 2 * self.order > self.degree_cap:
            raise ConfigError(f"order {self.order} needs degree_cap >= {2 * self.order}")

    def truncation(self) -> Truncation:
        return Truncation(self.degree_cap, self.laurent_floor)

    def example_spec(self) -> ExampleSpec:
        spec = builtin(self.example) if self.example else spec_from_json(self.spec)
        spec.trunc = self.truncation()
        return spec

    def to_json(self) -> dict:
        out = {
            "degree_cap": self.degree_cap,
            "laurent_floor": self.laurent_floor,
            "order": self.order,
            "test_degree": self.test_degree,
            "seed": self.seed,
        }
        if self.example is not None:
            out["example"] = self.example
        else:
            out["spec"] = self.spec
        if self.out is not None:
            out["out"] = self.out
        return out

    def dumps(self) -> str:
        return canonical_json(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {"example", "spec", "degree_cap", "laurent_floor", "order", "test_degree", "seed", "out"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        kwargs = {k: data[k] for k in known if k in data}
        for k in ("degree_cap", "laurent_floor", "order", "test_degree", "seed"):
            if k in kwargs and (not isinstance(kwargs[k], int) or isinstance(kwargs[k], bool)):
                raise ConfigError(f"{k} must be an integer")
        cfg = cls(**kwargs)
        if cfg.spec is not None:
            spec = spec_from_json(cfg.spec)
            try:
                spec.connection()
                spec.prescription()
            except (ValueError, ArithmeticError) as exc:
                raise ConfigError(f"inline spec: {exc}") from exc
        return cfg

    @classmethod
    def loads(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        return cls.from_json(data)

    @classmethod
    def for_builtin_inline(cls, name: str, **kw) -> "RunConfig":
        return cls(spec=spec_to_json(builtin(name)), **kw)
