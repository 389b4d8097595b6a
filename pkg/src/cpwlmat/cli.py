"""Command-line entry point: ``cpwlmat <subcommand> ...``.

Every subcommand reads JSON (a path, ``-`` for stdin, or inline text
starting with ``{``) and writes canonical JSON.  Exit status: 0 on success,
1 for a negative verdict under ``--strict``, 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .constraints import (CIRCUIT_ONLY, MOEBIUS_SUPPORT, kernel_dimension, membership,
                          normalize_model)
from .cpwl import compatibility_probe, compose_pl, CompatiblePL, lovasz_eval
from .errors import SchemaError, SizeCapError
from .lattice import MoebiusSpectrum, SetFunction, format_mask, moebius_transform, zeta_transform
from .matroid import elements, matroid_from_json, validate_circuit_axioms
from .netanalyze import MlpSpec, analyze_network, separation_witness
from .structure import LowOrderTable, decompose, extend_from_low_order


class _Negative(Exception):
    pass


def _load(text, what):
    try:
        if text == "-":
            raw = sys.stdin.read()
        elif text.lstrip().startswith(("{", "[")):
            raw = text
        else:
            with open(text, encoding="utf-8") as fh:
                raw = fh.read()
    except OSError as exc:
        raise SchemaError(what, f"cannot read {text!r}: {exc.strerror}") from None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(what, f"invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _function(text, what="function"):
    try:
        return SetFunction.from_json(_load(text, what))
    except SchemaError as exc:
        if exc.field.startswith(what):
            raise
        raise SchemaError(f"{what}.{exc.field}", str(exc).split(": ", 1)[-1]) from None


def _matroid(text):
    return matroid_from_json(_load(text, "matroid"), strict=False)


def _scalar(v):
    return str(v) if isinstance(v, Fraction) else float(v)


def _emit(args, payload):
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _strict(args, ok):
    if getattr(args, "strict", False) and not ok:
        raise _Negative()


# -- subcommands --------------------------------------------------------------

def cmd_transform(args):
    data = _load(args.function, "function")
    if args.inverse:
        out = zeta_transform(MoebiusSpectrum.from_json(data))
    else:
        out = moebius_transform(SetFunction.from_json(data))
    _emit(args, out.to_json())


def cmd_check(args):
    F = _function(args.function)
    M = _matroid(args.matroid)
    tol = None if args.tol is None or F.exact else args.tol
    v = membership(F, M, args.model, tol)
    _emit(args, v.to_json())
    _strict(args, v.member)


def cmd_dim(args):
    M = _matroid(args.matroid)
    rep = kernel_dimension(M)
    model = normalize_model(args.model)
    out = rep.to_json()
    out["model"] = model
    out["dimension"] = rep.kernel_dim if model == CIRCUIT_ONLY else rep.independent_count
    _emit(args, out)


def cmd_basis(args):
    F = _function(args.function)
    M = _matroid(args.matroid)
    coeffs, residual = decompose(F, M)
    out = coeffs.to_json()
    out["residual"] = [{"mask": m, "set": format_mask(m), "value": _scalar(v)}
                       for m, v in residual]
    _emit(args, out)
    _strict(args, not residual)


def cmd_reduce(args):
    t = LowOrderTable.from_json(_load(args.table, "table"), k=args.k)
    _emit(args, extend_from_low_order(t).to_json())


def cmd_lovasz_eval(args):
    F = _function(args.function)
    parts = [p for p in args.point.split(",")]
    try:
        x = [float(p) if not F.exact else Fraction(p.strip()) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise SchemaError("point", f"not a comma-separated list of rationals: {args.point!r}") from None
    if len(x) != F.n:
        raise SchemaError("point", f"has {len(x)} coordinates, function has n={F.n}")
    _emit(args, str(_scalar(lovasz_eval(F, x))))


def cmd_probe(args):
    if args.net is not None:
        g = MlpSpec.from_json(_load(args.net, "net"))
        n = g.n
    else:
        if args.function is None:
            raise SchemaError("function", "probe needs --function or --net")
        g = CompatiblePL(_function(args.function))
        n = g.n
        if args.max_with is not None:
            h = CompatiblePL(_function(args.max_with, "max_with"))
            if h.n != n:
                raise SchemaError("max_with.n", f"expected n={n}, got {h.n}")
            g = compose_pl("max", g, h)
    rep = compatibility_probe(g, n, trials=args.trials, seed=args.seed)
    _emit(args, rep.to_json())
    _strict(args, rep.conforming)


def cmd_net_analyze(args):
    net = MlpSpec.from_json(_load(args.net, "net"))
    if not 0 <= args.k <= net.n:
        raise SchemaError("k", f"expected an integer in [0, {net.n}], got {args.k}")
    rep = analyze_network(net, args.k, args.tol)
    _emit(args, rep.to_json())
    _strict(args, rep.conforming)


def cmd_matroid_info(args):
    M = _matroid(args.matroid)
    out = M.to_json()
    out["circuits"] = [[e + 1 for e in elements(c)] for c in M.circuits()]
    out["circuit_count"] = len(out["circuits"])
    out["rank"] = M.rank((1 << M.n) - 1)
    out["independent_count"] = M.count_independent()
    if M.n <= 12:
        out["axioms"] = validate_circuit_axioms(M).to_json()
    _emit(args, out)


def cmd_witness(args):
    try:
        F, cert = separation_witness(args.n, args.k)
    except SizeCapError:
        raise
    except ValueError as exc:
        raise SchemaError("k", str(exc)) from None
    out = F.to_json()
    out["certificate"] = {"mask": cert, "set": format_mask(cert),
                          "moebius_value": str(moebius_transform(F)[cert])}
    _emit(args, out)


# -- parser -------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="cpwlmat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-o", "--output", help="write here instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    models = [MOEBIUS_SUPPORT.replace("_", "-"), CIRCUIT_ONLY.replace("_", "-"),
              MOEBIUS_SUPPORT, CIRCUIT_ONLY]

    sp = add("transform", cmd_transform, "Moebius transform (or its inverse)")
    sp.add_argument("--function", required=True)
    sp.add_argument("--inverse", action="store_true", help="subset-sum a spectrum back")

    sp = add("check", cmd_check, "membership verdict for a set function")
    sp.add_argument("--function", required=True)
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--model", choices=models, default="moebius-support")
    sp.add_argument("--tol", type=float)
    sp.add_argument("--strict", action="store_true")

    sp = add("dim", cmd_dim, "exact kernel dimension and independent-set count")
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--model", choices=models, default="moebius-support")

    sp = add("basis", cmd_basis, "independent-set coordinates of a set function")
    sp.add_argument("--function", required=True)
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--strict", action="store_true")

    sp = add("reduce", cmd_reduce, "extend a low-order table to the full lattice")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--table", required=True)

    sp = add("lovasz-eval", cmd_lovasz_eval, "evaluate the braid-fan interpolant")
    sp.add_argument("--function", required=True)
    sp.add_argument("--point", required=True, help="comma-separated rationals")

    sp = add("probe", cmd_probe, "search for a braid cone where a function is not affine")
    sp.add_argument("--function")
    sp.add_argument("--max-with", dest="max_with")
    sp.add_argument("--net")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--strict", action="store_true")

    sp = add("net-analyze", cmd_net_analyze, "interaction spectrum of a ReLU network")
    sp.add_argument("--net", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--strict", action="store_true")

    sp = add("matroid-info", cmd_matroid_info, "circuit counts and axiom diagnostics")
    sp.add_argument("--matroid", required=True)

    sp = add("witness", cmd_witness, "set function outside the rank-k space")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    return p


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except _Negative:
        return 1
    except SchemaError as exc:
        print(f"cpwlmat {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (SizeCapError, ValueError, TypeError) as exc:
        print(f"cpwlmat {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
