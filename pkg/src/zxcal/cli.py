"""Command-line interface.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage or I/O
errors.  Reports are written as line-delimited JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import IO, Iterator, Optional, Sequence

from .diagram import Diagram, from_json, to_json, validate
from .errors import ZXError
from .semantics import HARD_CEILING, interpret, matrix_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SETS = ("algebraic", "legacy", "derived", "zh", "all")


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    backend: str = "float"
    tol: float = 1e-9
    seed: int = 42
    samples: int = 200
    rule_set: str = "all"
    capacity: Optional[int] = None
    threads: int = 1

    def __post_init__(self) -> None:
        if self.tol < 0:
            raise UsageError("--tol must be nonnegative")
        if self.capacity is not None and not 0 <= self.capacity <= HARD_CEILING:
            raise UsageError(f"--capacity must lie in [0, {HARD_CEILING}]")
        if self.threads < 0:
            raise UsageError("--threads must be nonnegative")
        if self.samples < 0:
            raise UsageError("--samples must be nonnegative")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit; surface as a usage error
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zxcal", description="Executable ZX-calculus toolkit.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--in", dest="input", required=True, help="input JSON file, '-' for stdin")
        sp.add_argument("--out", dest="output", help="output file (default stdout)")
        sp.add_argument("--backend", choices=("float", "exact"), default="float")
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--capacity", type=int, default=None, help="open-wire limit")
        sp.add_argument("--threads", type=int, default=1, help="worker threads, 0 = auto")

    sp = sub.add_parser("interpret", help="diagram -> matrix JSON")
    common(sp)
    sp.add_argument("--precision", type=int, default=None)

    sp = sub.add_parser("check-rules", help="soundness sweep over a rule set")
    common(sp, needs_input=False)
    sp.add_argument("--set", dest="rule_set", choices=SETS, default="all")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--catalogue", action="store_true", help="print the rule catalogue instead")

    sp = sub.add_parser("translate", help="ZH diagram -> ZX diagram")
    common(sp)
    sp.add_argument("--from", dest="source", choices=("zh",), default="zh")

    sp = sub.add_parser("simplify", help="apply the terminating rule subset")
    common(sp)
    sp.add_argument("--max-steps", type=int, default=1000)

    sp = sub.add_parser("fuzz", help="random rewrite fuzzing")
    common(sp, needs_input=False)
    sp.add_argument("--iterations", type=int, default=500)
    sp.add_argument("--max-nodes", type=int, default=10)
    sp.add_argument("--max-wires", type=int, default=8)

    sp = sub.add_parser("replay", help="check a derivation script")
    common(sp)
    return p


# ---------------------------------------------------------------------------
# I/O


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _read_diagram(path: str) -> Diagram:
    obj = _read_json(path)
    try:
        d = from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"{path}: malformed diagram ({exc})") from exc
    problems = validate(d)
    if problems:
        raise UsageError(f"{path}: invalid diagram: " + "; ".join(problems))
    return d


@contextmanager
def _sink(path: Optional[str]) -> Iterator[IO[str]]:
    if path is None:
        yield sys.stdout
        return
    try:
        fh = open(path, "w")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc
    with fh:
        yield fh


def _emit(fh: IO[str], obj) -> None:
    fh.write(json.dumps(obj, sort_keys=False) + "\n")
    fh.flush()


@contextmanager
def _capacity(cap: Optional[int]) -> Iterator[None]:
    if cap is None:
        yield
        return
    old = os.environ.get("ZXCAL_CAPACITY")
    os.environ["ZXCAL_CAPACITY"] = str(cap)
    try:
        yield
    finally:
        if old is None:
            os.environ.pop("ZXCAL_CAPACITY", None)
        else:
            os.environ["ZXCAL_CAPACITY"] = old


# ---------------------------------------------------------------------------
# commands


def _cmd_interpret(cfg: CliConfig, args) -> int:
    d = _read_diagram(cfg.input)
    mat = interpret(d, cfg.backend)
    with _sink(cfg.output) as fh:
        _emit(fh, matrix_to_json(mat, args.precision))
    return EXIT_OK


def _registries(name: str):
    from .rules import registry_algebraic, registry_derived, registry_legacy
    from .zh import registry_zh, registry_zh_translated

    zh = [registry_zh(), registry_zh_translated()]
    table = {
        "algebraic": [registry_algebraic()],
        "legacy": [registry_legacy()],
        "derived": [registry_derived()],
        "zh": zh,
        "all": [registry_algebraic(), registry_derived(), registry_legacy()] + zh,
    }
    return table[name]


def _cmd_check(cfg: CliConfig, args) -> int:
    from .harness import sweep

    regs = _registries(cfg.rule_set)
    with _sink(cfg.output) as fh:
        if args.catalogue:
            for reg in regs:
                for entry in reg.catalogue():
                    _emit(fh, {"registry": reg.name, **entry})
            return EXIT_OK
        ok = True
        for reg in regs:
            rep = sweep([reg], cfg.samples, cfg.tol, cfg.backend, cfg.seed, cfg.threads)
            for r in rep.results:
                _emit(fh, {"registry": reg.name, **r.to_json()})
            _emit(fh, {"registry": reg.name, "totals": rep.totals()})
            ok = ok and rep.ok
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_translate(cfg: CliConfig, args) -> int:
    from .zh import translate

    d = _read_diagram(cfg.input)
    out = translate(d)
    with _sink(cfg.output) as fh:
        _emit(fh, to_json(out))
    return EXIT_OK


def _cmd_simplify(cfg: CliConfig, args) -> int:
    from .simplify import simplify

    d = _read_diagram(cfg.input)
    res = simplify(d, args.max_steps)
    with _sink(cfg.output) as fh:
        for entry in res.log:
            _emit(fh, entry)
        _emit(fh, {"complete": res.complete, "diagram": to_json(res.diagram)})
    return EXIT_OK


def _cmd_fuzz(cfg: CliConfig, args) -> int:
    from .harness import fuzz_rewrites

    rep = fuzz_rewrites(args.iterations, cfg.seed, cfg.tol, None, args.max_nodes, args.max_wires, cfg.threads)
    with _sink(cfg.output) as fh:
        summary = rep.to_json()
        for v in summary.pop("violations"):
            _emit(fh, {"violation": v})
        summary["violations"] = len(rep.violations)
        _emit(fh, summary)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_replay(cfg: CliConfig, args) -> int:
    from .harness import DerivationScript, replay

    obj = _read_json(cfg.input)
    try:
        script = DerivationScript.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"{cfg.input}: malformed script ({exc})") from exc
    for k, step in enumerate(script.steps):
        problems = validate(step)
        if problems:
            raise UsageError(f"step {k} invalid: " + "; ".join(problems))
    rep = replay(script, cfg.tol, cfg.backend)
    with _sink(cfg.output) as fh:
        for s in rep.steps:
            _emit(fh, s)
        _emit(fh, {"name": rep.name, "passed": rep.ok, "first_failure": rep.first_failure})
    return EXIT_OK if rep.ok else EXIT_FAIL


COMMANDS = {
    "interpret": _cmd_interpret,
    "check-rules": _cmd_check,
    "translate": _cmd_translate,
    "simplify": _cmd_simplify,
    "fuzz": _cmd_fuzz,
    "replay": _cmd_replay,
}


def run(argv: Sequence[str]) -> int:
    try:
        args = build_parser().parse_args(list(argv))
        if args.command is None:
            raise UsageError("missing subcommand; choose one of " + ", ".join(COMMANDS))
        cfg = CliConfig(
            command=args.command,
            input=getattr(args, "input", None),
            output=args.output,
            backend=args.backend,
            tol=args.tol,
            seed=args.seed,
            samples=getattr(args, "samples", 200),
            rule_set=getattr(args, "rule_set", "all"),
            capacity=args.capacity,
            threads=args.threads,
        )
        with _capacity(cfg.capacity):
            return COMMANDS[cfg.command](cfg, args)
    except UsageError as exc:
        print(f"zxcal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ZXError as exc:
        print(f"zxcal: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
