"""``mcl`` command line: file in, canonical JSON out.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource
bound exceeded. Errors are reported as JSON on standard error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import serialize as io
from .abelian import FgAbelianGroup, Subgroup
from .cyclic import reduce_to_mixed, reduction_steps
from .decompose import decompose_mixed, pair_into_commutators, split_rewrite, verify
from .errors import ConditionError, InputError, MclError, ResourceLimitError
from .length import INFINITE, build_xr, cl_g_abelian, cl_gn, cl_gn_bounds, cl_gn_exact
from .oracle import bfs_wordlength, oracle_cl_g, oracle_cl_gn
from .orbit_rank import orbit_rank, orbit_rank_greedy
from .wreath import FinSupFunc, WreathElt, WreathGroup

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _count(v):
    return "infinite" if v == INFINITE else v


def _group(args) -> WreathGroup:
    gamma = FgAbelianGroup.parse(args.group)
    if getattr(args, "kernel", None):
        kernel = io.subgroup_from_json(io.load_file(args.kernel), gamma)
        return WreathGroup.permutational(gamma, kernel)
    return WreathGroup(gamma)


def _base_element(g: WreathGroup, path) -> FinSupFunc:
    a = io.element_from_json(io.load_file(path), g)
    if any(a.top):
        raise InputError("element is not in the base group N (nonzero top)")
    return a.fun


def _emit(obj):
    print(io.dumps(obj))


def cmd_length(args):
    g = _group(args)
    x = _base_element(g, args.element)
    target = g.in_base(x)
    if args.mode == "bounds":
        b = cl_gn_bounds(g, x)
        out = {"lower": _count(b.lower), "upper": _count(b.upper), "kind": b.kind}
        if b.certificate is not None:
            out["certificate"] = io.certificate_to_json(b.certificate, target)
        _emit(out)
        return EXIT_OK
    mixed = cl_gn_exact(g, x) if args.mode == "exact" else cl_gn(g, x)
    out = {"cl_gn": _count(mixed.value), "kind": mixed.kind}
    if mixed.value != INFINITE:
        comm = cl_g_abelian(g, x, mixed)
        out["cl_g"] = comm.value
        out["certificate"] = io.certificate_to_json(mixed.certificate, target)
        out["certificate_g"] = io.certificate_to_json(comm.certificate, target)
    else:
        out["cl_g"] = "infinite"
    _emit(out)
    return EXIT_OK


def cmd_decompose(args):
    g = _group(args)
    x = _base_element(g, args.element)
    theta = io.subgroup_from_json(io.load_file(args.subgroup), g.index)
    cert = decompose_mixed(g, x, theta, cosets=args.cosets)
    if args.pair:
        cert = pair_into_commutators(cert)
    _emit(io.certificate_to_json(cert, g.in_base(x)))
    return EXIT_OK


def cmd_verify(args):
    g = _group(args)
    cert, target = io.certificate_from_json(io.load_file(args.certificate), g)
    if args.target:
        target = io.element_from_json(io.load_file(args.target), g)
    if target is None:
        raise InputError("no target: pass --target or include \"target\" in the certificate")
    ok = verify(cert, target)
    _emit({"ok": ok, "length": cert.length})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reduce(args):
    g = _group(args)
    a = io.element_from_json(io.load_file(args.g), g)
    b = io.element_from_json(io.load_file(args.h), g)
    steps = list(reduction_steps(g, a, b))
    x, y = reduce_to_mixed(g, a, b)
    if g.commutator(x, y) != g.commutator(a, b):
        raise AssertionError("internal error: reduction changed the commutator")
    _emit({"x": io.element_to_json(x), "y": io.element_to_json(y),
           "steps": len(steps) - 1,
           "commutator": io.element_to_json(g.commutator(a, b))})
    return EXIT_OK


def cmd_orbit_rank(args):
    a = io.matrix_from_json(io.load_file(args.matrix))
    fn = orbit_rank_greedy if args.mode == "greedy" else orbit_rank
    r = fn(a, args.pool_bound)
    _emit({"or": r.value, "witness": [list(v) for v in r.witness],
           "pool_bound": r.pool_bound, "mode": r.mode})
    return EXIT_OK


def cmd_oracle(args):
    q = FgAbelianGroup.parse(args.group)
    g = WreathGroup(q)
    x = _base_element(g, args.element)
    if args.base.upper() == "Z":
        m = None
    else:
        try:
            m = int(args.base)
        except ValueError:
            raise InputError(f"--base must be Z or an integer modulus, got {args.base!r}")
        if m < 2:
            raise InputError("--base modulus must be >= 2")
    _emit({"cl_gn": _count(oracle_cl_gn(q, x, m)), "cl_g": _count(oracle_cl_g(q, x, m)),
           "base": "Z" if m is None else m})
    return EXIT_OK


def cmd_bfs(args):
    q = FgAbelianGroup.parse(args.group)
    table = bfs_wordlength(args.base_mod, q)
    if args.out:
        table.to_csv(args.out)
    _emit({"rows": len(table.values), "max_cl_gn": int(table.cl_gn.max()),
           "max_cl_g": int(table.cl_g.max()),
           "index_order": [list(e) for e in table.elements]})
    return EXIT_OK


def cmd_xr(args):
    g = _group(args)
    gens = io.vectors_from_json(io.load_file(args.gens), g.index)
    x = build_xr(g, gens)
    _emit(io.element_to_json(g.in_base(x)))
    return EXIT_OK


def _random_function(rng, q: FgAbelianGroup, theta_gens, size):
    """Zero-sum function supported in the span of ``theta_gens``."""
    entries = {}
    for _ in range(size):
        p = q.zero
        for t in theta_gens:
            p = q._add(p, q.scale(t, rng.randint(-2, 2)))
        entries[p] = entries.get(p, 0) + rng.randint(-3, 3)
    entries[q.zero] = entries.get(q.zero, 0) - sum(entries.values())
    return FinSupFunc(q, entries)


def cmd_selfcheck(args):
    """Randomized certificate round trips; deterministic for a given seed."""
    rng = random.Random(args.seed)
    q = FgAbelianGroup(3)
    g = WreathGroup(q)
    failures = 0
    for _ in range(args.trials):
        gens = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(rng.randint(1, 3))]
        theta = Subgroup(q, tuple(gens))
        x = _random_function(rng, q, gens, rng.randint(1, 4))
        cert = decompose_mixed(g, x, theta)
        paired = pair_into_commutators(cert)
        target = g.in_base(x)
        fs, gs, as_, bs = [], [], [], []
        plane = [(1, 0, 0), (0, 1, 0)]
        for _ in range(rng.randint(1, 3)):
            ta, tb = (tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(2))
            for lst, t in ((fs, ta), (as_, ta), (gs, tb), (bs, tb)):
                lst.append(WreathElt(_random_function(rng, q, plane, 2), t))
        lhs = g.multiply(g.product(g.commutator(f, h) for f, h in zip(fs, gs)),
                         g.invert(g.product(g.commutator(a, b) for a, b in zip(as_, bs))))
        split = split_rewrite(g, fs, gs, as_, bs)
        ok = (verify(cert, target) and verify(paired, target) and verify(split, lhs)
              and cert.raw_length == theta.rank and split.length <= 2 * len(fs))
        failures += not ok
    _emit({"trials": args.trials, "failures": failures, "seed": args.seed})
    return EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mcl", description="Mixed commutator lengths in Z wr Gamma.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group_opts(sp, kernel=True):
        sp.add_argument("--group", required=True, help='index group, e.g. "Z^2 x Z/4"')
        if kernel:
            sp.add_argument("--kernel", help="subgroup file; use the permutational product over gamma/kernel")

    sp = sub.add_parser("length", help="cl_{G,N} and cl_G of an element of N")
    group_opts(sp)
    sp.add_argument("--element", required=True)
    sp.add_argument("--mode", choices=["auto", "exact", "bounds"], default="auto")
    sp.set_defaults(func=cmd_length)

    sp = sub.add_parser("decompose", help="mixed-commutator certificate over a subgroup")
    group_opts(sp)
    sp.add_argument("--element", required=True)
    sp.add_argument("--subgroup", required=True)
    sp.add_argument("--cosets", action="store_true", help="only require zero sums on each coset")
    sp.add_argument("--pair", action="store_true", help="fuse into genuine commutators")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="check a certificate by multiplication")
    group_opts(sp)
    sp.add_argument("--certificate", required=True)
    sp.add_argument("--target")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("reduce", help="rewrite [g,h] as a mixed commutator (cyclic gamma)")
    group_opts(sp)
    sp.add_argument("--g", required=True)
    sp.add_argument("--h", required=True)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("orbit-rank", help="orbit rank of an integer matrix")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--mode", choices=["exhaustive", "greedy"], default="exhaustive")
    sp.add_argument("--pool-bound", type=int, default=1)
    sp.set_defaults(func=cmd_orbit_rank)

    sp = sub.add_parser("oracle", help="brute-force lengths over a finite index group")
    sp.add_argument("--base", default="Z", help="Z or a modulus m for base Z/m")
    group_opts(sp, kernel=False)
    sp.add_argument("--element", required=True)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bfs", help="word-length table of Z/m wr Q")
    sp.add_argument("--base-mod", type=int, required=True)
    group_opts(sp, kernel=False)
    sp.add_argument("--out", help="CSV output path")
    sp.set_defaults(func=cmd_bfs)

    sp = sub.add_parser("xr", help="the element sum delta_{l_i} - r delta_e")
    group_opts(sp)
    sp.add_argument("--gens", required=True)
    sp.set_defaults(func=cmd_xr)

    sp = sub.add_parser("selfcheck", help="randomized certificate round trips")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=100)
    sp.set_defaults(func=cmd_selfcheck)
    return p


def _fail(code, kind, message):
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ResourceLimitError as e:
        return _fail(EXIT_RESOURCE, "resource_limit", str(e))
    except ConditionError as e:
        return _fail(EXIT_INPUT, "conditions_not_met", str(e))
    except (InputError, MclError) as e:
        return _fail(EXIT_INPUT, "input_error", str(e))


if __name__ == "__main__":
    sys.exit(main())
