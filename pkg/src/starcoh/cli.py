"""Command line: ``starcoh {star,verify,class,examples,emit-config}``.

Exit status: 0 when every requested check passes, 1 when a verification
fails, 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cohomology import liouville_obstruction, project_class
from .config import DEFAULTS, ConfigError, RunConfig, canonical_json, spec_to_json
from .examples import BUILTIN_NAMES, builtin
from .fedosov import characteristic_class, extract_table
from .suites import SUITES, Context, jsonable, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="starcoh", description="Exact Fedosov star-products and Hochschild checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--example", choices=BUILTIN_NAMES)
        sp.add_argument("--config", metavar="PATH")
        sp.add_argument("--order", type=int)
        sp.add_argument("--degree-cap", type=int)
        sp.add_argument("--laurent-floor", type=int)
        sp.add_argument("--test-degree", type=int)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--out", metavar="PATH")

    common(sub.add_parser("star", help="emit the star-product table C_0..C_N"))
    v = sub.add_parser("verify", help="run residual suites; exit status reflects the outcome")
    common(v)
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    common(sub.add_parser("class", help="characteristic class, its hbar-derivative and projections"))
    sub.add_parser("examples", help="list builtin examples")
    e = sub.add_parser("emit-config", help="print a builtin as an inline config")
    e.add_argument("name", choices=BUILTIN_NAMES)
    e.add_argument("--out", metavar="PATH")
    return p


def load_config(args) -> RunConfig:
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read {args.config}: {exc}") from exc
        data = RunConfig.loads(text).to_json()
        if args.example:
            raise ConfigError("--example and --config are mutually exclusive")
    elif args.example:
        data = {"example": args.example}
    else:
        raise ConfigError("one of --example or --config is required")
    for key in ("order", "degree_cap", "laurent_floor", "test_degree", "seed", "out"):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    if "order" in data and "degree_cap" not in data:
        data["degree_cap"] = max(DEFAULTS["degree_cap"], 2 * data["order"])
    return RunConfig.from_json(data)


def _emit(payload: dict, out: str | None) -> None:
    text = canonical_json(jsonable(payload))
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_star(cfg: RunConfig) -> int:
    spec = cfg.example_spec()
    table = extract_table(spec.setup(), cfg.order, seed=cfg.seed)
    _emit({"command": "star", "config": cfg.to_json(), "example": spec.name,
           "coords": list(spec.coords), "table": table.to_json()}, cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    spec = cfg.example_spec()
    ctx = Context(spec, cfg.order, cfg.test_degree, cfg.seed)
    names = SUITES if suite == "all" else (suite,)
    report = run_suites(ctx, names)
    _emit({"command": "verify", "config": cfg.to_json(), **report}, cfg.out)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_class(cfg: RunConfig) -> int:
    spec = cfg.example_spec()
    presc = spec.prescription()
    cl = characteristic_class(presc)
    out = {"command": "class", "config": cfg.to_json(), "example": spec.name,
           "class": cl, "derivative": cl.hbar_derivative()}
    if spec.decl is not None:
        ob = liouville_obstruction(presc, spec.decl)
        out["class_coordinates"] = project_class(cl, spec.decl)["coordinates"]
        out["derivative_coordinates"] = ob["coordinates"]
        out["obstructed"] = ob["obstructed"]
    _emit(out, cfg.out)
    return EXIT_OK


def cmd_examples() -> int:
    _emit({"examples": [{"name": n, "description": builtin(n).description} for n in BUILTIN_NAMES]}, None)
    return EXIT_OK


def cmd_emit_config(name: str, out: str | None) -> int:
    cfg = RunConfig.for_builtin_inline(name)
    text = cfg.dumps()
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "examples":
            return cmd_examples()
        if args.command == "emit-config":
            return cmd_emit_config(args.name, args.out)
        cfg = load_config(args)
        if args.command == "star":
            return cmd_star(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite)
        if args.command == "class":
            return cmd_class(cfg)
    except ConfigError as exc:
        print(f"starcoh: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"starcoh: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
