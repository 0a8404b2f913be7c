"""Command-line entry point.

Exit codes: 0 when every check passes, 1 on a falsified check, 2 on a usage,
schema or domain error.  Object arguments take a JSON file path, ``-`` for
stdin, or an inline JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import nullcontext

import numpy as np

from . import serialize as ser
from .bridge import modularity_check, theta_with_bound
from .bruhat import evaluate, pairing, refine
from .congruence import CongruenceSpec, membership, sample_generators, stabilizer_level
from .errors import SchemaError, WeilError
from .heisenberg import commutant_dimension, heis_act
from .lattice import LatticePair, coset_reps, dual_lattice, generalized_index, index_cap, lattice_intersect, lattice_sum
from .verify import SUITES, VerifyConfig, run_suite
from .weil import sp_factor, weil_apply


class Falsified(Exception):
    """A check ran and failed; carries the report to print."""

    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


def _load(arg: str):
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip()[:1] in ("{", "["):
        text = arg
    else:
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}", exc.msg) from None


def _complex_matrix(data, path: str = "") -> np.ndarray:
    """``[[re, im], ...]`` in row-major order, ``n*n`` entries."""
    if not isinstance(data, list) or not data:
        raise SchemaError(path, "expected a list of [re, im] pairs")
    for i, e in enumerate(data):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(c, (int, float)) for c in e)):
            raise SchemaError(f"{path}/{i}", "expected [re, im]")
    n = round(len(data) ** 0.5)
    if n * n != len(data):
        raise SchemaError(path, "entry count is not a square")
    return np.array([complex(re, im) for re, im in data]).reshape(n, n)


# -- handlers ----------------------------------------------------------------------------


def cmd_lattice(a):
    if a.op == "dual":
        return ser.lattice_to_json(dual_lattice(ser.parse_lattice(_load(a.L))))
    A, B = ser.parse_lattice(_load(a.L)), ser.parse_lattice(_load(a.K))
    if a.op == "sum":
        return ser.lattice_to_json(lattice_sum(A, B))
    if a.op == "intersect":
        return ser.lattice_to_json(lattice_intersect(A, B))
    if a.op == "index":
        return {"index": ser.rational_to_json(generalized_index(A, B))}
    return {"reps": [ser.vector_to_json(r) for r in coset_reps(LatticePair(A, B))]}


def cmd_melem(a):
    f = ser.parse_melement(_load(a.f))
    if a.op == "eval":
        return ser.scalar_to_json(evaluate(f, ser.parse_vector(_load(a.x), "/x", f.dim)))
    if a.op == "refine":
        return ser.melement_to_json(refine(f, ser.parse_lattice(_load(a.K))))
    g = ser.parse_melement(_load(a.g))
    if a.op == "add":
        return ser.melement_to_json(f + g)
    return ser.scalar_to_json(pairing(f, g))


def cmd_heis(a):
    if a.op == "act":
        h = ser.parse_heis(_load(a.h))
        return ser.melement_to_json(heis_act(h, ser.parse_melement(_load(a.f))))
    pair = LatticePair(ser.parse_lattice(_load(a.L)), ser.parse_lattice(_load(a.K)))
    return {"dimension": commutant_dimension(pair), "index": pair.index}


def _word_json(word):
    out = []
    for atom in word.atoms:
        name = type(atom).__name__
        if name == "Dilate":
            out.append({"atom": "dilate", "A": ser.matrix_to_json(atom.A)})
        elif name == "Quad":
            out.append({"atom": "quad", "B": ser.matrix_to_json(atom.B)})
        else:
            out.append({"atom": "J"})
    return out


def cmd_weil(a):
    if a.op == "verify":
        return _run_verify(a, a.suite)
    g = ser.parse_spmatrix(_load(a.g))
    word = sp_factor(g, a.variant)
    if a.op == "factor":
        return {"word": _word_json(word)}
    return ser.melement_to_json(weil_apply(g, ser.parse_melement(_load(a.f)), word))


def cmd_theta(a):
    f = ser.parse_melement(_load(a.f))
    if a.op == "eval":
        value, tail = theta_with_bound(f, _complex_matrix(_load(a.z), "/z"), a.tol)
        return {"value": [value.real, value.imag], "tail_bound": tail}
    g = ser.parse_spmatrix(_load(a.g))
    samples = _load(a.samples)
    if not isinstance(samples, list):
        raise SchemaError("", "samples must be a list of points")
    report = modularity_check(f, g, [_complex_matrix(s, f"/{i}") for i, s in enumerate(samples)], a.tol)
    payload = report.to_json()
    if report.verdict != "PASS":
        raise Falsified(payload)
    return payload


def _spec(a, n: int) -> CongruenceSpec:
    return CongruenceSpec(a.kind, n, a.l)


def cmd_congruence(a):
    if a.op == "stabilizer":
        rep = stabilizer_level(ser.parse_melement(_load(a.f)), a.trials, a.seed)
        payload = {
            "N": rep.N,
            "group_level": rep.group_level,
            "evidence": [
                {"generator": ser.matrix_to_json(e.generator), "fixed": e.fixed, "scalar": None if e.scalar is None else ser.scalar_to_json(e.scalar)}
                for e in rep.evidence
            ],
        }
        if not rep.passed:
            raise Falsified(payload)
        return payload
    if a.op == "sample":
        return [ser.matrix_to_json(g) for g in sample_generators(_spec(a, a.n), a.count, a.seed)]
    g = ser.parse_spmatrix(_load(a.g))
    return {"member": membership(g, _spec(a, g.n))}


def _run_verify(a, suite: str):
    if a.config:
        with open(a.config, encoding="utf-8") as fh:
            config = VerifyConfig.from_json(fh.read())
    else:
        config = VerifyConfig(suite, a.n, a.trials, a.seed, a.max_den, a.index_cap, a.tol, a.level)
    report = run_suite(config).to_json()
    if report["failures"]:
        raise Falsified(report)
    return report


def cmd_verify(a):
    return _run_verify(a, a.suite)


def cmd_convert(a):
    return ser.canonicalize(_load(a.input), a.kind)


# -- parser ----------------------------------------------------------------------------------


def _verify_args(p: argparse.ArgumentParser, suites) -> None:
    p.add_argument("suite", nargs="?", choices=sorted(suites))
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--max-den", type=int, default=6)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--level", type=int, default=2, help="level N for the stabilizer suite")
    p.add_argument("--config", help="JSON file with VerifyConfig fields; overrides the flags")


def _global_args(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--seed", type=int, default=0 if default is None else default)
    p.add_argument("--json", action="store_true", default=False if default is None else default, help="compact single-line JSON output")
    p.add_argument("--index-cap", type=int, default=10**4 if default is None else default)


class _Subparsers:
    """Adds the shared flags to every parser created through it."""

    def __init__(self, action, common):
        self.action, self.common = action, common

    def add_parser(self, name, **kw):
        return self.action.add_parser(name, parents=[self.common], **kw)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="adelic-weil", description="Exact rational model of the Weil representation.")
    _global_args(top, None)
    # the same flags are accepted after the subcommand as well
    common = argparse.ArgumentParser(add_help=False)
    _global_args(common, argparse.SUPPRESS)
    sub = _Subparsers(top.add_subparsers(dest="command", required=True), common)

    p = sub.add_parser("lattice", help="dual, sum, intersection, index and coset representatives")
    p.add_argument("op", choices=["dual", "sum", "intersect", "index", "cosets"])
    p.add_argument("--L", required=True, help="lattice (first operand)")
    p.add_argument("--K", help="second lattice; the sublattice for index and cosets")
    p.set_defaults(func=cmd_lattice, needs={"sum": "K", "intersect": "K", "index": "K", "cosets": "K"})

    p = sub.add_parser("melem", help="operations on M elements")
    p.add_argument("op", choices=["eval", "add", "pair", "refine"])
    p.add_argument("--f", required=True)
    p.add_argument("--g")
    p.add_argument("--x", help="point as a list of rationals")
    p.add_argument("--K", help="finer invariance lattice for refine")
    p.set_defaults(func=cmd_melem, needs={"eval": "x", "add": "g", "pair": "g", "refine": "K"})

    p = sub.add_parser("heis", help="Heisenberg action and commutant dimension")
    p.add_argument("op", choices=["act", "commutant"])
    p.add_argument("--h", help="'[v+, v-, alpha]' or an object")
    p.add_argument("--f")
    p.add_argument("--L")
    p.add_argument("--K")
    p.set_defaults(func=cmd_heis, needs={"act": ("h", "f"), "commutant": ("L", "K")})

    p = sub.add_parser("weil", help="apply, factor and verify the Weil action")
    wsub = _Subparsers(p.add_subparsers(dest="op", required=True), common)
    for op in ("apply", "factor"):
        q = wsub.add_parser(op)
        q.add_argument("--g", required=True)
        q.add_argument("--variant", type=int, default=0, help="choice of factorization word")
        if op == "apply":
            q.add_argument("--f", required=True)
    _verify_args(wsub.add_parser("verify"), SUITES)
    p.set_defaults(func=cmd_weil, needs={})

    p = sub.add_parser("theta", help="theta series and modularity ratios")
    p.add_argument("op", choices=["eval", "modularity"])
    p.add_argument("--f", required=True)
    p.add_argument("--z", help="row-major [[re, im], ...]")
    p.add_argument("--g")
    p.add_argument("--samples", help="list of points z")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_theta, needs={"eval": "z", "modularity": ("g", "samples")})

    p = sub.add_parser("congruence", help="membership, sampling and stabilizer evidence")
    p.add_argument("op", choices=["stabilizer", "sample", "member"])
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--kind", choices=["gamma", "gamma12", "u"], default="gamma12")
    p.add_argument("--l", type=int, default=1, help="level of the group")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_congruence, needs={"stabilizer": "f", "member": "g"})

    p = sub.add_parser("verify", help="run a verification suite")
    _verify_args(p, SUITES)
    p.set_defaults(func=cmd_verify, needs={})

    p = sub.add_parser("convert", help="canonicalize a JSON document")
    p.add_argument("input")
    p.add_argument("--kind", choices=["auto", "melem", "lattice", "matrix", "heis"], default="auto")
    p.set_defaults(func=cmd_convert, needs={})
    return top


def _emit(payload, compact: bool) -> None:
    sys.stdout.write(ser.dumps(payload, pretty=not compact))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    needed = args.needs.get(getattr(args, "op", None), ())
    for name in (needed,) if isinstance(needed, str) else needed:
        if getattr(args, name) is None:
            parser.error(f"{args.command} {args.op} needs --{name}")
    if args.index_cap < 1:
        parser.error("--index-cap must be positive")
    try:
        with index_cap(args.index_cap) if args.command != "verify" else nullcontext():
            payload = args.func(args)
    except Falsified as exc:
        _emit(exc.payload, args.json)
        return 1
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except (WeilError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, args.json)
    return 0


if __name__ == "__main__":
    sys.exit(main())
