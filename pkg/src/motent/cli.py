"""``motent`` command-line front end.

Output is JSON with ``"schema": "motent-v1"`` unless ``--text`` is given.
Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classes import kapranov_zeta, measure_from_name, motivic_entropy, parse_class
from .errors import MotentError, PreconditionError
from .ffcount import FqVarietyDef, hasse_weil_zeta, local_hw_entropy
from .globalhw import DEFAULT_KMAX, DEFAULT_PMAX, global_entropy
from .infoloss import FlatFiniteMorphismDesc, ProperMorphismDesc, flat_loss, parse_ringhom, proper_loss, ringhom_loss
from .series import DEFAULT_TRUNC, TruncatedSeries
from .witt import WittElement

SCHEMA = "motent-v1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(args, doc: dict, text: str):
    if args.text:
        print(text)
    else:
        print(json.dumps({"schema": SCHEMA, **doc}, sort_keys=True))


def _varieties(specs) -> dict:
    out = {}
    for spec in specs or ():
        name, sep, path = spec.partition("=")
        if not sep or not name:
            raise UsageError(f"--fq expects NAME=PATH, got {spec!r}")
        out[name] = FqVarietyDef.load(path)
    return out


def _measure(args, name):
    return measure_from_name(name, _varieties(args.fq))


def _load_zeta(ref: str, order: int) -> WittElement:
    """A zeta from a JSON file (series or ``hw-zeta`` output) or a variety definition file."""
    path = Path(ref)
    if not path.exists():
        raise PreconditionError(f"no such file: {ref}")
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        data = data.get("zeta", data)
        z = WittElement(TruncatedSeries.from_json(data))
        if z.trunc < order:
            raise PreconditionError(f"{ref} is truncated at {z.trunc} < --order {order}")
        return WittElement(z.series.truncate(order))
    return hasse_weil_zeta(FqVarietyDef.load(path), order).zeta


# -- subcommands -------------------------------------------------------------------


def cmd_zeta(args) -> int:
    mu = _measure(args, args.measure)
    X = parse_class(args.variety)
    z = kapranov_zeta(mu, X, args.order)
    _emit(args, {"command": "zeta", "measure": args.measure, "variety": str(X), "zeta": z.series.to_json()}, str(z))
    return 0


def cmd_entropy(args) -> int:
    mu = _measure(args, args.measure)
    X = parse_class(args.variety)
    S = motivic_entropy(mu, X, args.order)
    _emit(args, {"command": "entropy", "measure": args.measure, "variety": str(X), "entropy": S.to_json()}, str(S))
    return 0


def cmd_hw_zeta(args) -> int:
    X = FqVarietyDef.load(args.def_)
    zd = hasse_weil_zeta(X, args.order)
    doc = {"command": "hw-zeta", "q": X.q, "kind": X.kind, **zd.to_json()}
    text = [f"N_m: {list(zd.point_counts)}", f"a_r: {list(zd.closed_points)}", f"Z: {zd.zeta}"]
    if args.entropy:
        S = local_hw_entropy(zd.zeta)
        doc["entropy"] = S.to_json()
        text.append(f"S: {S}")
    _emit(args, doc, "\n".join(text))
    return 0


def cmd_global_entropy(args) -> int:
    X = parse_class(args.variety)
    r = global_entropy(X, args.s, args.pmax, args.kmax)
    _emit(args, {"command": "global-entropy", "variety": str(X), **r.to_json()}, f"S({X}, s={r.s}) = {r.value!r}  (log L = {r.logL!r}, s d/ds part = {r.sdds!r})")
    return 0


def cmd_infoloss(args) -> int:
    if args.kind == "ringhom":
        mu, muprime = _measure(args, args.mu), _measure(args, args.muprime)
        phi = parse_ringhom(args.phi, mu.ring)
        loss = ringhom_loss(phi, mu, muprime, parse_class(args.variety), args.order)
    else:
        if not args.src or not args.dst:
            raise UsageError(f"infoloss {args.kind} needs --src and --dst")
        zx, zy = _load_zeta(args.src, args.order), _load_zeta(args.dst, args.order)
        if args.kind == "proper":
            loss = proper_loss(ProperMorphismDesc(zx, zy))
        else:
            loss = flat_loss(FlatFiniteMorphismDesc(zx, zy, args.deg))
    _emit(args, {"command": f"infoloss {args.kind}", "loss": loss.to_json()}, str(loss))
    return 0


def cmd_verify(args) -> int:
    from . import verify

    checks = verify.run(args.suite)
    failed = sum(not c.passed for c in checks)
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": "verify", "suite": args.suite, "checks": [c.to_json() for c in checks], "failed": failed}, sort_keys=True))
    else:
        for c in checks:
            print(c.line())
        print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


# -- parser ------------------------------------------------------------------------


def _output_flags(sp):
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="emit JSON (the default)")
    g.add_argument("--text", action="store_true", help="render series as c0 + c1 t + ...")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="motent", description="Motivic zeta functions, entropy and information loss.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, order=True):
        _output_flags(sp)
        if order:
            sp.add_argument("--order", type=int, default=DEFAULT_TRUNC, help="truncation order N (default %(default)s)")
        sp.add_argument("--fq", action="append", metavar="NAME=PATH", help="variety definition bound to atom fq:NAME")

    for name, fn, hlp in (("zeta", cmd_zeta, "Kapranov zeta of a class"), ("entropy", cmd_entropy, "motivic entropy of a class")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("--measure", required=True, help="chi | poincare | count:<q>")
        sp.add_argument("--variety", required=True, help='class expression, e.g. "P^2 - A^1"')
        common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("hw-zeta", help="Hasse-Weil zeta of a variety definition file")
    sp.add_argument("--def", dest="def_", required=True, metavar="FILE")
    sp.add_argument("--entropy", action="store_true", help="also print the local entropy")
    common(sp)
    sp.set_defaults(func=cmd_hw_zeta)

    sp = sub.add_parser("global-entropy", help="global Hasse-Weil entropy at real s")
    sp.add_argument("--variety", required=True)
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--pmax", type=int, default=DEFAULT_PMAX)
    sp.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    common(sp, order=False)
    sp.set_defaults(func=cmd_global_entropy)

    sp = sub.add_parser("infoloss", help="information loss of a morphism or ring homomorphism")
    sp.add_argument("kind", choices=("proper", "flat", "ringhom"))
    sp.add_argument("--src", help="source zeta: JSON file or variety definition")
    sp.add_argument("--dst", help="target zeta: JSON file or variety definition")
    sp.add_argument("--deg", type=int, default=1, help="degree of a flat morphism")
    sp.add_argument("--phi", default="id", help='"id" or "z->EXPR"')
    sp.add_argument("--mu", default="poincare")
    sp.add_argument("--muprime", default="chi")
    sp.add_argument("--variety", default="pt")
    common(sp)
    sp.set_defaults(func=cmd_infoloss)

    sp = sub.add_parser("verify", help="run the verification suites")
    from .verify import SUITES

    sp.add_argument("--suite", default="all", choices=("all", *SUITES))
    sp.add_argument("--json", action="store_true", help="emit JSON instead of the pass/fail table")
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "order", 1) < 0:
            raise UsageError("--order must be non-negative")
        return args.func(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 2
    except (MotentError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"motent: error: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:  # --help
        return int(e.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
