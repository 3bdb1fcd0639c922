"""Command-line front end: verification reports, cocycle dumps, extension tables.

Subcommands
    verify     run the per-prime verification suite, one JSON report per line
    cocycles   emit explicit degree-2 cocycles in coordinates
    extension  emit the bracket/p-map presentation of one central extension

Exit status: 0 all checks passed, 1 some check failed, 2 invalid input.
Every flag has an environment-variable fallback named WITTCOH_<FLAG>
(e.g. WITTCOH_SEED); command-line values win.  Output is deterministic:
byte-identical across runs and across --jobs values for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from multiprocessing import Pool

from .extensions import build_extension, verify_restricted_axioms
from .gfp import PrimeField, is_prime
from .ordinary import virasoro_cocycle, wedge_pairs
from .restricted import DEFAULT_ENUM_LIMIT, omega_coordinate, virasoro_cochain
from .verify import _run_prime_args

_ENV_PREFIX = "WITTCOH_"


def _env_default(name: str, fallback=None):
    return os.environ.get(_ENV_PREFIX + name.upper().replace("-", "_"), fallback)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _parse_primes(single, chain) -> list[int] | str:
    """Primes to run, from --prime or an inclusive --primes A..B range."""
    if single is not None and chain is not None:
        return "use either --prime or --primes, not both"
    if single is not None:
        if single < 3 or not is_prime(single):
            return f"{single} is not prime (need an odd prime >= 3)"
        return [single]
    if chain is not None:
        parts = chain.split("..")
        if len(parts) != 2:
            return f"range must look like A..B, got {chain!r}"
        try:
            lo, hi = int(parts[0]), int(parts[1])
        except ValueError:
            return f"range must look like A..B with integers, got {chain!r}"
        primes = [p for p in range(max(lo, 3), hi + 1) if is_prime(p)]
        if not primes:
            return f"no primes >= 3 in {chain}"
        return primes
    return "one of --prime or --primes is required"


def _index_key(i: int) -> str:
    return str(i)


def _pair_key(pair: tuple[int, int]) -> str:
    return f"({pair[0]},{pair[1]})"


def cmd_verify(args) -> int:
    primes = _parse_primes(args.prime, args.primes)
    if isinstance(primes, str):
        return _fail(primes)
    jobs = [(p, args.seed, args.max_enum_prime) for p in primes]
    if args.jobs > 1 and len(primes) > 1:
        with Pool(min(args.jobs, len(primes))) as pool:
            reports = pool.map(_run_prime_args, jobs)
    else:
        reports = [_run_prime_args(j) for j in jobs]
    ok = True
    for report in reports:
        print(json.dumps(report))
        ok = ok and report["all_pass"]
    return 0 if ok else 1


def cmd_cocycles(args) -> int:
    p = args.prime
    if p is None:
        return _fail("--prime is required")
    if p < 3 or not is_prime(p):
        return _fail(f"{p} is not prime (need an odd prime >= 3)")
    field = PrimeField(p)
    which = args.which

    def phi10_payload() -> dict:
        gen = virasoro_cocycle(field)
        return {
            _pair_key(pair): v
            for pair, v in zip(wedge_pairs(p), gen.values)
            if v
        }

    def omega_payload(i: int) -> dict:
        c = omega_coordinate(field, i)
        return {_index_key(j): c.omega_value(j) for j in range(-1, p - 1)}

    if which[0] == "phi10":
        if len(which) != 1:
            return _fail("phi10 takes no index")
        if p == 3:
            return _fail("the phi10 cocycle needs p > 3")
        out = {"prime": p, "which": "phi10", "phi": phi10_payload()}
    elif which[0] == "omega":
        if len(which) != 2:
            return _fail("omega needs a basis index, e.g. --which omega 0")
        try:
            i = int(which[1])
        except ValueError:
            return _fail(f"bad basis index {which[1]!r}")
        if not -1 <= i <= p - 2:
            return _fail(f"basis index {i} out of range [-1, {p - 2}]")
        out = {"prime": p, "which": "omega", "index": _index_key(i), "omega": omega_payload(i)}
    elif which[0] == "all":
        if len(which) != 1:
            return _fail("all takes no index")
        out = {
            "prime": p,
            "which": "all",
            "phi10": phi10_payload() if p > 3 else None,
            "omega": {_index_key(i): omega_payload(i) for i in range(-1, p - 1)},
        }
    else:
        return _fail(f"unknown cocycle selector {which[0]!r} (expected phi10, omega I, or all)")
    print(json.dumps(out))
    return 0


def _basis_label(p: int, position: int) -> str:
    return "c" if position == p else f"e{position - 1}"


def cmd_extension(args) -> int:
    p = args.prime
    if p is None:
        return _fail("--prime is required")
    if p < 3 or not is_prime(p):
        return _fail(f"{p} is not prime (need an odd prime >= 3)")
    field = PrimeField(p)
    which = args.which
    if which == "virasoro":
        if p == 3:
            return _fail("the virasoro extension needs p > 3")
        cocycle = virasoro_cochain(field)
    else:
        try:
            i = int(which)
        except ValueError:
            return _fail(f"bad selector {which!r} (expected a basis index or 'virasoro')")
        if not -1 <= i <= p - 2:
            return _fail(f"basis index {i} out of range [-1, {p - 2}]")
        cocycle = omega_coordinate(field, i)
    ext = build_extension(cocycle)
    report = verify_restricted_axioms(ext, trials=5, seed=args.seed, enum_limit=args.max_enum_prime)

    triples = []
    for u in range(p + 1):
        for v in range(p + 1):
            for w in range(p + 1):
                coeff = int(ext.bracket_table[u, v, w])
                if coeff:
                    triples.append(
                        [_basis_label(p, u), _basis_label(p, v), _basis_label(p, w), coeff]
                    )
    pmap = {}
    for u in range(p + 1):
        row = {
            _basis_label(p, w): int(ext.pmap_basis[u, w])
            for w in range(p + 1)
            if ext.pmap_basis[u, w]
        }
        pmap[_basis_label(p, u)] = row

    if args.format == "csv":
        lines = ["left,right,component,coefficient"]
        lines += [",".join(str(x) for x in t) for t in triples]
        text = "\n".join(lines) + "\n"
    else:
        out = {
            "prime": p,
            "which": which,
            "basis": [_basis_label(p, u) for u in range(p + 1)],
            "brackets": triples,
            "pmap": pmap,
            "verification": {
                "pass": report.all_pass,
                "checks": [
                    {"name": c.name, "pass": c.passed, "detail": c.detail} for c in report.checks
                ],
            },
        }
        text = json.dumps(out) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wittcoh",
        description="Exact verification of the restricted cohomology and central "
        "extensions of the modular Witt algebra over GF(p).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--seed", type=int, default=int(_env_default("seed", 0)))
        sp.add_argument(
            "--max-enum-prime",
            type=int,
            default=int(_env_default("max_enum_prime", DEFAULT_ENUM_LIMIT)),
            help="largest prime for which exponential correction-sum enumerations run",
        )

    v = sub.add_parser("verify", help="run the verification suite and emit JSON reports")
    v.add_argument("--prime", type=int, default=_int_env("prime"))
    v.add_argument("--primes", default=_env_default("primes"), help="inclusive range A..B")
    v.add_argument("--jobs", type=int, default=int(_env_default("jobs", 1)))
    add_common(v)
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("cocycles", help="emit explicit degree-2 cocycles as JSON")
    c.add_argument("--prime", type=int, default=_int_env("prime"))
    c.add_argument(
        "--which",
        nargs="+",
        default=["all"],
        help="phi10 | omega I | all",
    )
    add_common(c)
    c.set_defaults(fn=cmd_cocycles)

    e = sub.add_parser("extension", help="emit one central extension presentation")
    e.add_argument("--prime", type=int, default=_int_env("prime"))
    e.add_argument("--which", default="virasoro", help="basis index i or 'virasoro'")
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.add_argument("--output", default=None, help="write to a file instead of stdout")
    add_common(e)
    e.set_defaults(fn=cmd_extension)
    return parser


def _int_env(name: str) -> int | None:
    raw = _env_default(name)
    return int(raw) if raw is not None else None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
