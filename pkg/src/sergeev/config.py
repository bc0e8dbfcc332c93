"""Run configuration: argv and optional JSON config file into a validated RunConfig."""

from __future__ import annotations

import argparse
import json
import random
from dataclasses import dataclass, fields

from .linalg import Q, format_rational, parse_rational

COMMANDS = ("enum", "mult", "trace-check", "gram", "cocenter-rank", "supercocenter-rank", "center-rank", "verify")
CHECKS = (
    "relations", "weak_braid", "reduced_words", "associativity", "trace_symmetry", "theta",
    "gram", "traceforms", "generator_reduction", "integrality", "ranks",
)
FORMATS = ("json", "csv", "markdown")
DEFAULT_BUDGET = 10_000
# checks that stay affordable beyond the budget: a single streaming rank computation
STREAMING = ("cocenter_rank",)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str = "verify"
    n: int = 2
    d: int = 2
    coeffs: dict | None = None
    random_coeffs: bool = False
    seed: int = 0
    samples: int = 3
    checks: tuple = CHECKS
    budget: int = DEFAULT_BUDGET
    out: str | None = None
    format: str = "json"
    deterministic: bool = False
    self_test_fail: bool = False
    word: str | None = None
    set: str = "colored"
    show_matrix: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not isinstance(self.d, int) or self.d < 1:
            raise ConfigError("level must be >= 1")
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.coeffs is not None and self.random_coeffs:
            raise ConfigError("--coeffs and --random-coeffs are mutually exclusive")
        if self.coeffs is not None:
            self.coeffs = validate_coeffs(self.coeffs, self.d)
        if self.samples < 1:
            raise ConfigError("--samples must be >= 1")
        if self.budget < 1:
            raise ConfigError("--budget must be >= 1")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        bad = [c for c in self.checks if c not in CHECKS]
        if bad:
            raise ConfigError(f"unknown checks {bad}; known: {', '.join(CHECKS)}")

    def coefficient_samples(self) -> list[tuple[str, dict]]:
        """(label, coefficient map) for every parameter point of the run."""
        if self.random_coeffs:
            rng = random.Random(self.seed)
            return [(f"seed{self.seed}#{i}", random_coeffs(self.d, rng)) for i in range(self.samples)]
        coeffs = self.coeffs or {}
        label = "x^d" if not coeffs else "explicit"
        return [(label, coeffs)]

    def to_json(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "coeffs" and v is not None:
                v = {f"a{k}": format_rational(c) for k, c in sorted(v.items())}
            if isinstance(v, tuple):
                v = list(v)
            out[f.name] = v
        return out


def validate_coeffs(coeffs: dict, d: int) -> dict:
    out = {}
    for k, v in coeffs.items():
        k = int(k)
        if k < 0 or k > d:
            raise ConfigError(f"coefficient a{k} outside 0..{d}")
        if (d - k) % 2:
            raise ConfigError(f"coefficient a{k} is at an odd offset from d={d}")
        if k == d:
            if Q(v) != 1:
                raise ConfigError("leading coefficient a_d must be 1")
            continue
        if Q(v):
            out[k] = Q(v)
    return out


def parse_coeffs(text: str) -> dict:
    """``a0=1/2,a2=-3`` -> {0: 1/2, 2: -3}."""
    out = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or not key.startswith("a") or not key[1:].isdigit():
            raise ConfigError(f"malformed coefficient {item!r}; expected a<k>=<rational>")
        try:
            out[int(key[1:])] = parse_rational(val.strip())
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"malformed rational in {item!r}") from None
    return out


def random_coeffs(d: int, rng: random.Random) -> dict:
    """Nonzero p/q with p in [-9, 9], q in [1, 9] for every free coefficient a_{d-2t}, t >= 1."""
    out = {}
    for k in range(d - 2, -1, -2):
        p = 0
        while p == 0:
            p = rng.randint(-9, 9)
        out[k] = Q(p, rng.randint(1, 9))
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sergeev", description="Exact computations in cyclotomic Sergeev superalgebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file with option values (command-line flags win)")
        p.add_argument("--n", type=int)
        p.add_argument("--d", type=int)
        p.add_argument("--coeffs", help="a0=..,a1=.. (exponents at even offset from d)")
        p.add_argument("--random-coeffs", action="store_true", default=None)
        p.add_argument("--seed", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--budget", type=int, help=f"max basis size for full checks (default {DEFAULT_BUDGET})")
        p.add_argument("--out", help="write the report here (atomically) instead of stdout")
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--deterministic", action="store_true", default=None, help="omit timings")

    p = sub.add_parser("enum", help="list partitions, colored semi-bipartitions or index sets")
    common(p)
    p.add_argument("--set", choices=("partitions", "strict", "odd", "multipartitions", "colored", "tilde", "hat", "counts"))
    p = sub.add_parser("mult", help="normal form of a word")
    common(p)
    p.add_argument("--word", required=True, help="e.g. 's1 x1 c2 s0^2'")
    sub_trace = sub.add_parser("trace-check", help="exhaustive (super)symmetry of the trace")
    common(sub_trace)
    p = sub.add_parser("gram", help="Gram determinant of the trace form")
    common(p)
    p.add_argument("--show-matrix", action="store_true", default=None)
    for name in ("cocenter-rank", "supercocenter-rank", "center-rank"):
        common(sub.add_parser(name))
    p = sub.add_parser("verify", help="run the verification suite")
    common(p)
    p.add_argument("--checks", help=f"comma-separated subset of: {', '.join(CHECKS)}")
    p.add_argument("--self-test-fail", action="store_true", default=None,
                   help="inject a deliberately wrong expectation (harness self-test)")
    return parser


_FILE_KEYS = {f.name for f in fields(RunConfig)} - {"command"}


def parse_config(argv: list[str], parser: argparse.ArgumentParser | None = None) -> RunConfig:
    parser = parser or build_parser()
    args = parser.parse_args(argv)
    values: dict = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(data) - _FILE_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
        if isinstance(values.get("coeffs"), str):
            values["coeffs"] = parse_coeffs(values["coeffs"])
        elif isinstance(values.get("coeffs"), dict):
            values["coeffs"] = {int(str(k).lstrip("a")): parse_rational(str(v)) for k, v in values["coeffs"].items()}
        if isinstance(values.get("checks"), list):
            values["checks"] = tuple(values["checks"])
    for key in ("n", "d", "seed", "samples", "budget", "out", "format", "random_coeffs",
                "deterministic", "self_test_fail", "word", "set", "show_matrix"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if getattr(args, "coeffs", None) is not None:
        values["coeffs"] = parse_coeffs(args.coeffs)
    if getattr(args, "checks", None):
        values["checks"] = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    if "n" not in values or "d" not in values:
        raise ConfigError("--n and --d are required")
    return RunConfig(command=args.command, **values)
