"""Command-line front end.

Every command prints a JSON report on stdout and a one-line summary on
stderr. Exit codes: 0 when every verdict passes, 1 when a verdict fails or
a library operation raises a named error, 2 on unreadable input.
"""
import argparse
import sys
import time

from . import generators as gen
from .errors import ParseError, RankTooSmall, SchurTwistError
from .exactfield import Q
from .pst import (
    is_crystalline,
    is_semistable,
    pipeline_sst_schur,
    pipeline_sst_tensor,
    validate,
)
from .schur import schur_matrix
from .sen import (
    ClassData,
    EmbeddedClassData,
    WeightSystem,
    class_schur,
    class_tensor,
    is_de_rham,
    is_hodge_tate,
    is_integral,
    schur_twist_solve,
    tensor_twist_solve,
    twist_class,
)
from .serialize import (
    decode_class_data,
    decode_matrix,
    decode_module,
    decode_partition,
    decode_weight_system,
    dumps,
    load_json,
)
from .tableaux import Partition, r_of


def verdict(name, passed, witness=None):
    return {"name": name, "passed": bool(passed), "witness": witness}


def error_verdict(name, exc):
    return {"name": name, "passed": False, "error": exc.name, "message": str(exc),
            "witness": exc.witness}


# -- dispatch commands --------------------------------------------------------

def _load(path, decoder):
    return decoder(load_json(path), path)


def cmd_schur_matrix(args):
    a = _load(args.matrix, decode_matrix)
    u = decode_partition(args.shape, "--shape")
    return {"schur_matrix": schur_matrix(a, u)}, []


def _with_flavor(a, flavor):
    if isinstance(a, EmbeddedClassData):
        return EmbeddedClassData(tuple((h, _with_flavor(c, flavor)) for h, c in a.components))
    return ClassData(a.blocks, flavor)


def _flavor(a):
    return a.components[0][1].flavor if isinstance(a, EmbeddedClassData) else a.flavor


def cmd_class(args):
    a = _load(args.files[0], decode_class_data)
    if args.op == "tensor":
        if len(args.files) != 2:
            raise ParseError("class tensor needs two files")
        b = _load(args.files[1], decode_class_data)
        return {"class": class_tensor(a, b)}, []
    if args.op == "schur":
        if args.shape is None:
            raise ParseError("class schur needs --shape")
        return {"class": class_schur(a, decode_partition(args.shape, "--shape"))}, []
    flavor = _flavor(a)
    out = {"rank": a.rank,
           "hodge_tate": is_hodge_tate(a) if flavor == "HT" else None,
           "de_rham": is_de_rham(_with_flavor(a, "dR"))}
    out["weights"] = (
        {h: sorted_weights(c) for h, c in a.components}
        if isinstance(a, EmbeddedClassData) else sorted_weights(a))
    return out, []


def sorted_weights(a):
    return [w for w, _ in a.blocks]


def cmd_twist_solve(args):
    if args.mode == "tensor":
        if len(args.files) != 2:
            raise ParseError("twist-solve --mode tensor needs two files")
        w1 = _load(args.files[0], decode_weight_system)
        w2 = _load(args.files[1], decode_weight_system)
        return {"mu": tensor_twist_solve(w1, w2)}, []
    if args.shape is None:
        raise ParseError("twist-solve --mode schur needs --shape")
    w = _load(args.files[0], decode_weight_system)
    return {"mu": schur_twist_solve(w, decode_partition(args.shape, "--shape"))}, []


def cmd_pst(args):
    d = _load(args.files[0], decode_module)
    if args.op == "validate":
        report = validate(d)
        return {"validate": report}, [verdict("module relations hold", report["valid"],
                                              report["failures"] or None)]
    if args.op == "check":
        report = validate(d)
        if not report["valid"]:
            return {"validate": report}, [verdict("module relations hold", False,
                                                  report["failures"])]
        return {"semistable": is_semistable(d, check=False),
                "crystalline": is_crystalline(d, check=False)}, []
    if args.mode == "tensor":
        if len(args.files) != 2:
            raise ParseError("pst twist-solve --mode tensor needs two files")
        other = _load(args.files[1], decode_module)
        result = pipeline_sst_tensor(d, other)
    else:
        if args.shape is None:
            raise ParseError("pst twist-solve --mode schur needs --shape")
        result = pipeline_sst_schur(d, decode_partition(args.shape, "--shape"))
    return {"result": result}, list(result.verdicts)


# -- verification suites ------------------------------------------------------

def suite_ht_tensor(args):
    rng = gen.rng_for(args.seed)
    verdicts = []
    for k in range(args.count):
        labels = [f"h{i}" for i in range(rng.randint(1, 2))]
        w1 = gen.random_ht_weights(rng, labels, args.rank or rng.randint(1, 3))
        w2 = gen.random_ht_weights(rng, labels, rng.randint(1, 3))
        planted = {h: gen.random_rational(rng) for h in labels}
        w1 = gen.twist_weights(w1, planted, 1)
        w2 = gen.twist_weights(w2, planted, -1)
        try:
            mu = tensor_twist_solve(w1, w2)
        except SchurTwistError as exc:
            verdicts.append(error_verdict(f"tensor twist recovers integrality #{k}", exc))
            continue
        t1, t2 = w1.twisted(dict(mu.weights), -1), w2.twisted(dict(mu.weights), 1)
        ok = all(is_integral(x) for _, ws in t1.weights + t2.weights for x in ws)
        same = all(is_integral(mu[h] - planted[h]) for h in labels)
        verdicts.append(verdict(f"tensor twist recovers integrality #{k}", ok and same,
                                None if ok and same else {"mu": mu, "planted": planted}))
    return {"instances": args.count}, verdicts


def suite_ht_schur(args):
    rng = gen.rng_for(args.seed)
    verdicts = []
    fixed = decode_partition(args.shape, "--shape") if args.shape else None
    for k in range(args.count):
        u = fixed or rng.choice(gen.SCHUR_SHAPES)
        d = args.rank or rng.randint(r_of(u), 4)
        labels = [f"h{i}" for i in range(rng.randint(1, 2))]
        base = gen.random_ht_weights(rng, labels, d)
        divisors = [q for q in range(1, 7) if u.size % q == 0]
        planted = {h: Q(rng.randint(-6, 6), rng.choice(divisors)) for h in labels}
        w = gen.twist_weights(base, planted, 1)
        name = f"Schur twist recovers integrality #{k}"
        if d < r_of(u):
            try:
                schur_twist_solve(w, u)
            except RankTooSmall as exc:
                verdicts.append(verdict(f"rank below r(u) is rejected #{k}", True,
                                        {"expected": exc.name, "rank": d, "r_of": r_of(u)}))
                continue
            verdicts.append(verdict(f"rank below r(u) is rejected #{k}", False))
            continue
        try:
            mu = schur_twist_solve(w, u)
        except SchurTwistError as exc:
            verdicts.append(error_verdict(name, exc))
            continue
        twisted = w.twisted(dict(mu.weights), -1)
        ok = all(is_integral(x) for _, ws in twisted.weights for x in ws)
        same = all(is_integral(mu[h] - planted[h]) for h in labels)
        verdicts.append(verdict(name, ok and same,
                                None if ok and same else {"mu": mu, "planted": planted}))
    return {"instances": args.count}, verdicts


def _pipeline_verdicts(k, result, eta, shape, kind):
    out = [dict(v, name=f"{v['name']} #{k}") for v in result.verdicts]
    mu = result.mu
    planted = all(mu(g) == mu.algebra.coerce(eta(g)) for g in shape.inertia)
    out.append(verdict(f"mu matches planted eta ({kind}) #{k}", planted))
    return out


def suite_sst_tensor(args):
    rng = gen.rng_for(args.seed)
    verdicts = []
    for k in range(args.count):
        inst = gen.tensor_instance(rng, crystalline=k % 2 == 1, rank=args.rank, p=args.prime)
        d1, d2 = inst["modules"]
        try:
            result = pipeline_sst_tensor(d1, d2)
        except SchurTwistError as exc:
            verdicts.append(error_verdict(f"tensor pipeline #{k}", exc))
            continue
        verdicts.extend(_pipeline_verdicts(k, result, inst["eta"], d1.shape, inst["shape"]))
    return {"instances": args.count}, verdicts


def suite_sst_schur(args):
    rng = gen.rng_for(args.seed)
    verdicts = []
    fixed = decode_partition(args.shape, "--shape") if args.shape else None
    for k in range(args.count):
        if fixed is not None and args.rank is not None and args.rank < r_of(fixed):
            inst = gen.schur_instance(rng, u=Partition((1,)), rank=args.rank, p=args.prime)
            try:
                pipeline_sst_schur(inst["module"], fixed)
            except RankTooSmall as exc:
                verdicts.append(verdict(f"rank below r(u) is rejected #{k}", True,
                                        {"expected": exc.name}))
                continue
            verdicts.append(verdict(f"rank below r(u) is rejected #{k}", False))
            continue
        inst = gen.schur_instance(rng, crystalline=k % 2 == 1, rank=args.rank, u=fixed,
                                  p=args.prime)
        try:
            result = pipeline_sst_schur(inst["module"], inst["u"])
        except SchurTwistError as exc:
            verdicts.append(error_verdict(f"Schur pipeline #{k}", exc))
            continue
        verdicts.extend(_pipeline_verdicts(k, result, inst["eta"], inst["module"].shape,
                                           inst["shape"]))
    return {"instances": args.count}, verdicts


def suite_counterexample(args):
    a = ClassData(((0, 1),))
    u = Partition((1, 1))
    schur = class_schur(a, u)
    twists = {w: twist_class(a, w) for w in range(-3, 4)}
    verdicts = [
        verdict("second exterior power of the rank-2 Jordan block is Hodge-Tate",
                is_hodge_tate(schur), {"class": schur}),
        verdict("the rank-2 Jordan block itself is not Hodge-Tate", not is_hodge_tate(a)),
        verdict("no integer twist is Hodge-Tate (depth is twist-invariant)",
                not any(is_hodge_tate(t) for t in twists.values())
                and all(t.block_sizes() == a.block_sizes() for t in twists.values())),
    ]
    try:
        schur_twist_solve(WeightSystem({"h": [0, 0]}), u)
        verdicts.append(verdict("rank 2 is below r(u) = 3", False))
    except RankTooSmall as exc:
        verdicts.append(verdict("rank 2 is below r(u) = 3", True, {"expected": exc.name}))
    return {"input": a, "shape": u, "schur": schur}, verdicts


SUITES = {
    "ht-tensor": suite_ht_tensor,
    "ht-schur": suite_ht_schur,
    "sst-tensor": suite_sst_tensor,
    "sst-schur": suite_sst_schur,
    "counterexample": suite_counterexample,
}


def cmd_verify(args):
    return SUITES[args.suite](args)


# -- driver -------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="schurtwist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schur-matrix", help="matrix of Schur^u(A) in the tableau basis")
    p.add_argument("--shape", required=True)
    p.add_argument("--matrix", required=True)
    p.set_defaults(run=cmd_schur_matrix)

    p = sub.add_parser("class", help="classification calculus on ClassData")
    p.add_argument("op", choices=["tensor", "schur", "check"])
    p.add_argument("files", nargs="+")
    p.add_argument("--shape")
    p.set_defaults(run=cmd_class)

    p = sub.add_parser("twist-solve", help="weight-level twist solvers")
    p.add_argument("--mode", choices=["tensor", "schur"], required=True)
    p.add_argument("--shape")
    p.add_argument("files", nargs="+")
    p.set_defaults(run=cmd_twist_solve)

    p = sub.add_parser("pst", help="(phi, N, Gal)-module checks and twist pipelines")
    p.add_argument("op", choices=["validate", "check", "twist-solve"])
    p.add_argument("files", nargs="+")
    p.add_argument("--mode", choices=["tensor", "schur"], default="tensor")
    p.add_argument("--shape")
    p.set_defaults(run=cmd_pst)

    p = sub.add_parser("verify", help="seeded verification suites")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--shape")
    p.add_argument("--rank", type=int)
    p.add_argument("--prime", type=Q, default=Q(2))
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"command": argv}
    start = time.perf_counter()
    try:
        outputs, verdicts = args.run(args)
    except ParseError as exc:
        report.update(outputs={}, verdicts=[error_verdict(args.command, exc)])
        print(dumps(report))
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except SchurTwistError as exc:
        outputs, verdicts = {}, [error_verdict(args.command, exc)]
    report.update(outputs=outputs, verdicts=verdicts)
    try:
        text = dumps(report)
    except TypeError as exc:
        raise SystemExit(f"internal error: {exc}")
    print(text)
    failed = [v for v in verdicts if not v["passed"]]
    elapsed = time.perf_counter() - start
    if failed:
        first = failed[0]
        print(f"FAIL {first['name']}: {first.get('error') or 'verdict failed'} "
              f"({len(verdicts) - len(failed)}/{len(verdicts)} passed, {elapsed:.2f} s)",
              file=sys.stderr)
        return 1
    print(f"ok: {len(verdicts)} verdicts passed ({elapsed:.2f} s)", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
