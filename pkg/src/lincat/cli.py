"""Command-line front end.

Subcommands: closure, check-table1, apply-map, tensor-rep, dims, plan.
Exit codes: 0 success, 1 check failure, 2 usage error, 3 capacity or pole.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from .catalog import CatalogError, EASY_CLASSES, dimension
from .closure import ClosureError, closure, easiness_report
from .coeffs import Coeff, PoleError, Specialization
from .lincomb import LinComb
from .maps import MapError, block_map, coisometry, conjugate_t, disjoin, join_map, project_p
from .ops import ContractionPlan, OpsError, compose, execute_plan, involution, tensor
from .parser import ParseError, parse_generator, parse_rational
from .partitions import CapacityError, Partition, PartitionError
from .tensorrep import (
    TensorRepError,
    mat_eq,
    mat_kron,
    mat_mul,
    matrix_of,
    sigma_grad,
    sigma_qdef,
    twisted_matrix_of,
)

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


class CheckFailure(Exception):
    pass


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# built-in generator list
# ---------------------------------------------------------------------------

# Each row: (name, expression text, fixed delta or None).  Rows obtained
# through the sqrt-corrected coisometry only exist at loop values with a
# rational square root, so those ship pre-specialized at d = 8, 15, 24.
BUILTIN_GENERATORS = [
    (
        "proj-3block",
        "d^2*aaa - d*aab - d*abb - d*aba + 2*abc",
        None,
    ),
    ("coiso-plus-3block-d8", "12*aaa - 2*aab - 2*abb - 2*aba + abc", 8),
    ("coiso-minus-3block-d8", "-48*aaa + 4*aab + 4*abb + 4*aba + abc", 8),
    ("coiso-plus-3block-d15", "36*aaa - 3*aab - 3*abb - 3*aba + abc", 15),
    ("coiso-minus-3block-d15", "-100*aaa + 5*aab + 5*abb + 5*aba + abc", 15),
    ("coiso-plus-3block-d24", "80*aaa - 4*aab - 4*abb - 4*aba + abc", 24),
    ("coiso-minus-3block-d24", "-180*aaa + 6*aab + 6*abb + 6*aba + abc", 24),
    (
        "refl-4block",
        "d^3*aaaa - 2*d^2*aaab - 2*d^2*aaba - 2*d^2*abaa - 2*d^2*abbb"
        " + 4*d*aabc + 4*d*abac + 4*d*abca + 4*d*abbc + 4*d*abcb + 4*d*abcc"
        " - 16*abcd",
        None,
    ),
    (
        "coiso-plus-4block-d8",
        "4608*aaaa - 768*aaab - 768*aaba - 768*abaa - 768*abbb"
        " + 128*aabc + 128*abac + 128*abca + 128*abbc + 128*abcb + 128*abcc",
        8,
    ),
    (
        "coiso-minus-4block-d8",
        "4608*aaaa - 384*aaab - 384*aaba - 384*abaa - 384*abbb"
        " + 32*aabc + 32*abac + 32*abca + 32*abbc + 32*abcb + 32*abcc"
        " + 48*abcd",
        8,
    ),
    (
        "coiso-plus-4block-d15",
        "54000*aaaa - 4500*aaab - 4500*aaba - 4500*abaa - 4500*abbb"
        " + 375*aabc + 375*abac + 375*abca + 375*abbc + 375*abcb + 375*abcc"
        " + 125*abcd",
        15,
    ),
    (
        "coiso-minus-4block-d15",
        "54000*aaaa - 2700*aaab - 2700*aaba - 2700*abaa - 2700*abbb"
        " + 135*aabc + 135*abac + 135*abca + 135*abbc + 135*abcb + 135*abcc"
        " + 189*abcd",
        15,
    ),
    (
        "coiso-plus-4block-d24",
        "345600*aaaa - 17280*aaab - 17280*aaba - 17280*abaa - 17280*abbb"
        " + 864*aabc + 864*abac + 864*abca + 864*abbc + 864*abcb + 864*abcc"
        " + 432*abcd",
        24,
    ),
    (
        "coiso-minus-4block-d24",
        "345600*aaaa - 11520*aaab - 11520*aaba - 11520*abaa - 11520*abbb"
        " + 384*aabc + 384*abac + 384*abca + 384*abbc + 384*abcb + 384*abcc"
        " + 512*abcd",
        24,
    ),
    (
        "disjoin-crossing",
        "d^2*abab - 2*d*abac - 2*d*abcb + 4*abcd",
        None,
    ),
    ("join-crossing", "abab - 2*aaaa", None),
    (
        "proj-4block-alt",
        "aaaa - (1/d)*aaab - (1/d)*abbb - (1/d)*abaa - (1/d)*aaba"
        " + (1/d^2)*abac + (1/d^2)*abcb",
        None,
    ),
]


def builtin_generator(name):
    for n, text, dv in BUILTIN_GENERATORS:
        if n == name:
            return n, text, dv
    raise UsageError(f"unknown builtin generator {name!r}")


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _read_text(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None


def _load_generator(path):
    return parse_generator(_read_text(path))


def _spec_from_delta(delta_text):
    if delta_text is None:
        return None
    return Specialization.delta(parse_rational(delta_text))


def format_expression(x):
    """Print a combination with explicit coefficients, in term order."""
    if x.is_zero():
        return "0"
    pieces = []
    for p, c in x.terms.items():
        cs = str(c)
        if any(op in cs[1:] for op in "+-") or "/" in cs or "*" in cs:
            cs = f"({cs})"
        pieces.append(f"{cs}*{p}")
    out = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-") and not piece.startswith("(-"):
            out += f" - {piece[1:]}"
        else:
            out += f" + {piece}"
    return out


def _cache_dir():
    return os.environ.get("PARTCAT_CACHE_DIR")


def _cache_key(kind, payload):
    blob = json.dumps(payload, sort_keys=True).encode()
    return f"{kind}-{hashlib.sha256(blob).hexdigest()[:32]}.json"


def _cache_get(kind, payload):
    root = _cache_dir()
    if not root:
        return None
    path = os.path.join(root, _cache_key(kind, payload))
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except (OSError, ValueError):
        return None


def _cache_put(kind, payload, value):
    root = _cache_dir()
    if not root:
        return
    try:
        os.makedirs(root, exist_ok=True)
        path = os.path.join(root, _cache_key(kind, payload))
        with open(path, "w", encoding="utf-8") as f:
            json.dump(value, f)
    except OSError:
        pass


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_closure(args, out):
    spec = _load_generator(args.file)
    gen = spec.to_lincomb()
    delta = args.delta
    if delta is None and spec.delta_binding is not None:
        delta = str(spec.delta_binding)
    specialization = _spec_from_delta(delta)
    approx = closure(
        [gen], l0=args.l0, specialization=specialization, max_passes=args.passes
    )
    report = easiness_report(approx, [gen], specialization)
    text = report.render()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text, file=out)
    return EXIT_OK


def _run_table1_row(name, text, delta_value, l0, passes):
    payload = {"name": name, "text": text, "delta": delta_value, "l0": l0}
    cached = _cache_get("table1", payload)
    if cached is not None:
        return cached["report"], cached["easy"]
    gen = parse_generator(text).to_lincomb()
    specialization = (
        Specialization.delta(parse_rational(str(delta_value)))
        if delta_value is not None
        else None
    )
    approx = closure([gen], l0=l0, specialization=specialization, max_passes=passes)
    report = easiness_report(approx, [gen], specialization)
    rendered = report.render()
    _cache_put(
        "table1", payload, {"report": rendered, "easy": report.all_easy}
    )
    return rendered, report.all_easy


def cmd_check_table1(args, out):
    rows = BUILTIN_GENERATORS
    if args.rows:
        wanted = set(args.rows.split(","))
        rows = [r for r in rows if r[0] in wanted]
        missing = wanted - {r[0] for r in rows}
        if missing:
            raise UsageError(f"unknown rows: {sorted(missing)}")
    failures = 0
    for name, text, fixed_delta in rows:
        delta_value = fixed_delta if fixed_delta is not None else args.delta
        rendered, easy = _run_table1_row(
            name, text, delta_value, args.l0, args.passes
        )
        print(f"== {name} (delta = {delta_value or 'symbolic'}) ==", file=out)
        print(rendered, file=out)
        if easy:
            failures += 1
            print(f"FAIL: {name} span contains all summands", file=out)
    if failures:
        return EXIT_CHECK
    print("all rows: NON-EASY CANDIDATE", file=out)
    return EXIT_OK


MAP_NAMES = ("P", "T", "D", "J", "B", "V+", "V-")


def _apply_named_map(name, x, delta_text):
    if name in ("P", "T", "D"):
        delta = None
        if delta_text is not None:
            delta = Coeff.from_q(parse_rational(delta_text))
        if name == "P":
            return project_p(x, delta)
        if name == "T":
            return conjugate_t(x, delta)
        return disjoin(x, delta)
    if name == "J":
        return join_map(x)
    if name == "B":
        return block_map(x)
    if delta_text is None:
        raise UsageError(f"map {name} needs --delta")
    value = parse_rational(delta_text)
    return coisometry(x, value, +1 if name == "V+" else -1)


def cmd_apply_map(args, out):
    spec = _load_generator(args.file)
    x = spec.to_lincomb()
    delta_text = args.delta
    if delta_text is None and spec.delta_binding is not None:
        delta_text = str(spec.delta_binding)
    image = _apply_named_map(args.map, x, delta_text)
    print(format_expression(image), file=out)
    return EXIT_OK


def _parse_sigma(text, N):
    if text is None:
        return None
    if text == "qdef":
        return sigma_qdef(N)
    if text.startswith("grad:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad sigma spec {text!r}") from None
        if not 0 <= n <= N:
            raise UsageError("grad index out of range")
        return sigma_grad(N, n)
    raise UsageError(f"bad sigma spec {text!r}")


def _matrix_lines(m):
    return [" ".join(str(x) for x in row) for row in m]


def cmd_tensor_rep(args, out):
    spec = _load_generator(args.file)
    x = spec.to_lincomb()
    N = args.N
    sigma = _parse_sigma(args.sigma, N)
    m = twisted_matrix_of(x, N, sigma) if sigma else matrix_of(x, N)
    print(f"matrix {len(m)}x{len(m[0]) if m else 0}", file=out)
    for line in _matrix_lines(m):
        print(line, file=out)
    # functoriality spot checks on the summands
    summands = x.support()
    ok = True
    for p in summands:
        for q in summands:
            lhs = (
                twisted_matrix_of(tensor(p, q), N, sigma)
                if sigma
                else matrix_of(tensor(p, q), N)
            )
            mp = twisted_matrix_of(p, N, sigma) if sigma else matrix_of(p, N)
            mq = twisted_matrix_of(q, N, sigma) if sigma else matrix_of(q, N)
            if not mat_eq(lhs, mat_kron(mp, mq)):
                ok = False
            comp = compose(LinComb.of(p), involution(LinComb.of(q)))
            lhs2 = (
                twisted_matrix_of(comp, N, sigma)
                if sigma
                else matrix_of(comp, N)
            )
            mqi = (
                twisted_matrix_of(involution_only(q), N, sigma)
                if sigma
                else matrix_of(involution_only(q), N)
            )
            if not mat_eq(lhs2, mat_mul(mp, mqi)):
                ok = False
    print(f"functor-check: {'PASS' if ok else 'FAIL'}", file=out)
    return EXIT_OK if ok else EXIT_CHECK


def involution_only(p):
    from .ops import involution_part

    return involution_part(p)


def cmd_dims(args, out):
    if args.klass not in EASY_CLASSES:
        raise UsageError(f"unknown class {args.klass!r}")
    dims = [dimension(args.klass, l) for l in range(args.upto + 1)]
    print(" ".join(str(x) for x in dims), file=out)
    return EXIT_OK


def parse_plan(text):
    """Plan file grammar: 'vertices K; edge v.l-v.l; ...; free v.l,v.l,...'"""

    def leg(s):
        try:
            v, i = s.strip().split(".")
            return (int(v), int(i))
        except ValueError:
            raise UsageError(f"bad leg {s!r}") from None

    vertices = None
    edges = []
    free = ()
    for stmt in text.replace("\n", " ").split(";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        if stmt.startswith("vertices"):
            vertices = int(stmt.split()[1])
        elif stmt.startswith("edge"):
            a, b = stmt[len("edge") :].split("-")
            edges.append((leg(a), leg(b)))
        elif stmt.startswith("free"):
            body = stmt[len("free") :].strip()
            free = tuple(leg(s) for s in body.split(",")) if body else ()
        else:
            raise UsageError(f"bad plan statement {stmt!r}")
    if vertices is None:
        raise UsageError("plan must declare vertices")
    arity = 0
    for a, b in edges:
        arity = max(arity, a[1], b[1])
    for a in free:
        arity = max(arity, a[1])
    try:
        return ContractionPlan(vertices, arity, tuple(edges), free)
    except OpsError as e:
        raise UsageError(str(e)) from None


def cmd_plan(args, out):
    spec = _load_generator(args.file)
    gen = spec.to_lincomb()
    plan = parse_plan(_read_text(args.plan))
    delta = None
    delta_text = args.delta
    if delta_text is None and spec.delta_binding is not None:
        delta_text = str(spec.delta_binding)
    if delta_text is not None:
        delta = Coeff.from_q(parse_rational(delta_text))
    result = execute_plan(plan, gen, delta)
    print(format_expression(result), file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    parser = _Parser(prog="lincat", description=__doc__)
    parser.add_argument("--jobs", type=int, default=1, help="worker pool size")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="run the closure engine on a generator file")
    p.add_argument("file")
    p.add_argument("--l0", type=int, default=6)
    p.add_argument("--delta", default=None, help="exact rational p/q")
    p.add_argument("--passes", type=int, default=20)
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("check-table1", help="verify the builtin generator list")
    p.add_argument("--delta", default=None, help="exact rational p/q")
    p.add_argument("--l0", type=int, default=6)
    p.add_argument("--passes", type=int, default=20)
    p.add_argument("--rows", default=None, help="comma-separated row names")
    p.set_defaults(func=cmd_check_table1)

    p = sub.add_parser("apply-map", help="apply a named map to a generator file")
    p.add_argument("map", choices=MAP_NAMES)
    p.add_argument("file")
    p.add_argument("--delta", default=None, help="exact rational p/q")
    p.set_defaults(func=cmd_apply_map)

    p = sub.add_parser("tensor-rep", help="matrix realization at integer N")
    p.add_argument("file")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--sigma", default=None, help="qdef or grad:n")
    p.set_defaults(func=cmd_tensor_rep)

    p = sub.add_parser("dims", help="dimensions of a catalog class")
    p.add_argument("--class", dest="klass", required=True)
    p.add_argument("--upto", type=int, required=True)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("plan", help="execute a contraction plan file")
    p.add_argument("file")
    p.add_argument("--plan", required=True)
    p.add_argument("--delta", default=None, help="exact rational p/q")
    p.set_defaults(func=cmd_plan)
    return parser


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if e.code is not None else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, PoleError, TensorRepError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (CheckFailure,) as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_CHECK
    except (MapError, ClosureError, CatalogError, OpsError, PartitionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
