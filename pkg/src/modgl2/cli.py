"""Batch command-line frontend.

Every subcommand prints a small table by default and the JSON document under
``--json``; ``--out FILE`` additionally writes the JSON document to a file.
Exit status: 0 on success, 1 on a domain error or a failed check (the error
object goes to stderr as JSON), 2 on a usage error.

Operands for ``tensor``/``check-leq`` (``--x``, ``--y``) are either a
VirtualRep JSON document, ``@path`` to one, or an expression such as
``Sym^3``, ``det^1.Sym^2[1]``, ``2*S(1,0) - det^2`` or ``S(4).S(2)``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from itertools import product

from . import brauer
from .certificates import (
    ShiftCertificate,
    brute_force_min_t,
    dominate_parallel_weight,
    replay_certificate,
)
from .core import VirtualRep, leq, norm_power_form, power, sym_class, sym_monomial, tensor
from .errors import ModGL2Error
from .field import BaseField
from .serre import RamificationProfile, delta, lift_weight_schedule
from .shifts import congruence_period, sweep_lemmas


class UsageError(Exception):
    pass


# -- operand parsing -------------------------------------------------------------

_FACTOR = re.compile(
    r"det\^(?P<det>-?\d+)"
    r"|Sym\^(?P<sym>-?\d+)(?:\[(?P<emb>\d+)\])?"
    r"|S\((?P<vec>[-\d,\s]+)\)"
    r"|(?P<one>1)"
)


def _parse_term(field: BaseField, text: str) -> VirtualRep:
    coef = 1
    m = re.match(r"\s*(\d+)\s*\*\s*(.*)$", text)
    if m:
        coef, text = int(m.group(1)), m.group(2)
    out = VirtualRep.unit(field)
    for factor in text.split("."):
        factor = factor.strip()
        fm = _FACTOR.fullmatch(factor)
        if not fm:
            raise UsageError(f"cannot parse factor {factor!r}")
        if fm.group("det") is not None:
            out = out.twist(int(fm.group("det")))
        elif fm.group("sym") is not None:
            out = tensor(out, sym_class(field, int(fm.group("emb") or 0), int(fm.group("sym"))))
        elif fm.group("vec") is not None:
            ks = [int(v) for v in fm.group("vec").split(",")]
            if len(ks) != field.f:
                raise UsageError(f"S(...) needs {field.f} entries, got {factor!r}")
            out = tensor(out, sym_monomial(field, ks))
    return coef * out


def parse_operand(field: BaseField, text: str) -> VirtualRep:
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read().strip()
    if text.startswith("{"):
        data = json.loads(text)
        data.setdefault("p", field.p)
        data.setdefault("f", field.f)
        x = VirtualRep.from_json(data)
        if x.field != field:
            raise UsageError(f"operand is over {x.field}, expected {field}")
        return x
    if text == "0":
        return VirtualRep.zero(field)
    out = VirtualRep.zero(field)
    for sign, term in re.findall(r"([+-]?)\s*([^+-]+(?:-\d+[^+-]*)?)", _protect(text)):
        val = _parse_term(field, _unprotect(term))
        out = out - val if sign == "-" else out + val
    return out


def _protect(text: str) -> str:
    # keep minus signs inside exponents and S(...) vectors out of the term split
    text = re.sub(r"\^-", "^~", text)
    return re.sub(r"\(([^)]*)\)", lambda m: "(" + m.group(1).replace("-", "~") + ")", text)


def _unprotect(text: str) -> str:
    return text.replace("~", "-")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


# -- output ----------------------------------------------------------------------


def _rep_table(x: VirtualRep) -> str:
    if not x:
        return "0"
    lines = [f"{'mult':>8}  {'a':>4}  n"]
    for w, c in x.items():
        lines.append(f"{c:>8}  {w.a:>4}  {list(w.n)}")
    return "\n".join(lines)


def _emit(args, doc, table: str | None = None) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    if args.json or table is None:
        print(json.dumps(doc, indent=2))
    else:
        print(table)


# -- subcommands -----------------------------------------------------------------


def _field(args) -> BaseField:
    try:
        fld = BaseField(args.p, args.f)
    except ValueError as exc:
        raise UsageError(f"--p/--f: {exc}")
    return fld


def _sigma(args, fld):
    if args.n is None:
        raise UsageError("--n is required")
    n = args.n
    if len(n) == 1 and fld.f > 1:
        n = n * fld.f
    return fld.weight(args.a, n)


def cmd_decompose(args) -> int:
    fld = _field(args)
    if args.sym is not None:
        x = sym_class(fld, args.i, args.sym)
    elif args.x is not None:
        x = parse_operand(fld, args.x)
    elif args.n is not None:
        if len(args.n) != fld.f:
            raise UsageError(f"--n needs {fld.f} entries")
        x = sym_monomial(fld, args.n, a=args.a)
    else:
        raise UsageError("one of --sym, --n or --x is required")
    if args.e > 1:
        x = power(x, args.e)
    doc = x.to_json()
    doc["dimension"] = x.dimension()
    _emit(args, doc, _rep_table(x) + f"\ndimension {x.dimension()}")
    return 0


def cmd_tensor(args) -> int:
    fld = _field(args)
    if args.x is None or args.y is None:
        raise UsageError("tensor needs --x and --y")
    z = tensor(parse_operand(fld, args.x), parse_operand(fld, args.y))
    if args.e > 1:
        z = power(z, args.e)
    doc = z.to_json()
    doc["dimension"] = z.dimension()
    _emit(args, doc, _rep_table(z) + f"\ndimension {z.dimension()}")
    return 0


def cmd_check_leq(args) -> int:
    fld = _field(args)
    if args.x is None or args.y is None:
        raise UsageError("check-leq needs --x and --y")
    x, y = parse_operand(fld, args.x), parse_operand(fld, args.y)
    ok = leq(x, y)
    doc = {"leq": ok, "difference": (y - x).to_json()}
    _emit(args, doc, f"x <= y: {ok}\ny - x:\n{_rep_table(y - x)}")
    return 0


def cmd_verify_lemmas(args) -> int:
    if args.max_n < 0:
        raise UsageError("--max-n must be >= 0")
    if args.p is not None:
        ps = [args.p]
    else:
        ps = [2, 3, 5]
    fs = [args.f] if args.f_given else [1, 2, 3]
    fields = []
    for p, f in product(ps, fs):
        try:
            fld = BaseField(p, f)
        except ValueError as exc:
            raise UsageError(f"--p/--f: {exc}")
        if fld.q <= args.max_q_sweep:
            fields.append(fld)
    if not args.sweep:
        fields = [fld for fld in fields if fld.q <= 9]
        args.max_n = min(args.max_n, 12)
    fault = args.seed if args.inject_fault else None
    report = sweep_lemmas(fields, args.max_n, inject_fault=fault)
    doc = report.to_json()
    doc["fields"] = [fld.to_json() for fld in fields]
    doc["max_n"] = args.max_n
    rows = [f"{name:<12} {count:>6} checked" for name, count in report.checked.items()]
    rows += [f"FAIL p={p} f={f} {name}{tuple(a)}" for p, f, name, a in report.failures]
    rows.append("all lemma checks pass" if report.ok else f"{len(report.failures)} failure(s)")
    _emit(args, doc, "\n".join(rows))
    return 0 if report.ok else 1


def cmd_dominate(args) -> int:
    fld = _field(args)
    sigma = _sigma(args, fld)
    cert = dominate_parallel_weight(fld, sigma, args.e, t=args.t)
    doc = cert.to_json(intermediates=args.intermediates)
    table = (
        f"sigma = {sigma}, e = {cert.e}, s = {cert.s}, t = {cert.t}\n"
        + "\n".join(f"{k:>4}  {json.dumps(st.to_json())}" for k, st in enumerate(cert.steps))
    )
    _emit(args, doc, table)
    return 0


def cmd_replay(args) -> int:
    src = sys.stdin if args.certificate == "-" else open(args.certificate)
    with src:
        try:
            data = json.load(src)
        except json.JSONDecodeError as exc:
            raise UsageError(f"certificate: invalid JSON ({exc})")
    cert = ShiftCertificate.from_json(data)
    res = replay_certificate(cert)
    doc = res.to_json()
    _emit(args, doc, "certificate OK" if res else f"certificate FAILED at step {res.failed_step}: {res.reason}")
    return 0 if res else 1


def cmd_brute_force_t(args) -> int:
    fld = _field(args)
    sigma = _sigma(args, fld)
    s = norm_power_form(fld, sigma, args.e)
    ts = brute_force_min_t(fld, sigma, args.e, args.t_max)
    doc = {
        "sigma": sigma.to_json(),
        "e": args.e,
        "s": s,
        "period": congruence_period(fld.p, args.e),
        "t_max": args.t_max,
        "admissible": ts,
        "min": ts[0] if ts else None,
    }
    _emit(args, doc, f"s = {s}, admissible t <= {args.t_max}: {ts}")
    return 0


def cmd_brauer_table(args) -> int:
    fld = _field(args)
    if fld.q > args.max_q:
        raise UsageError(f"--p/--f: q={fld.q} exceeds --max-q {args.max_q}")
    orc = brauer.oracle(fld, args.max_q)
    doc = orc.table()
    if args.csv:
        buf = io.StringIO()
        wr = csv.writer(buf)
        wr.writerow(["a", "n"] + [f"{c.kind}:{c.logs[0]}:{c.logs[1]}" for c in orc.classes])
        for row in doc["rows"]:
            w = row["weight"]
            vals = [" ".join(f"{c}x^{e}" for e, c in v.items()) for v in row["values"]]
            wr.writerow([w["a"], " ".join(map(str, w["n"]))] + vals)
        text = buf.getvalue().rstrip("\n")
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        print(text)
        return 0
    idx = orc.identity_index()
    table = [f"{len(orc.classes)} classes, M = {orc.M}; degree column shown"]
    for row in doc["rows"]:
        deg = sum(row["values"][idx].values())
        table.append(f"  a={row['weight']['a']:<3} n={row['weight']['n']}  dim {deg}")
    _emit(args, doc, "\n".join(table))
    return 0


def _load_weights(data, profile: RamificationProfile):
    if data is None:
        return None
    if len(data) != len(profile.places):
        raise UsageError("weights: need one entry (weight or list of weights) per place")
    out = []
    for v, entry in enumerate(data):
        if entry is None:
            out.append(None)
            continue
        entries = [entry] if isinstance(entry, dict) else entry
        fld = profile.field(v)
        out.append([fld.weight(w["a"], w["n"]) for w in entries])
    return out


def cmd_lift_weight(args) -> int:
    weights = None
    if args.input:
        with open(args.input) as fh:
            data = json.load(fh)
        places = [(int(pl["e"]), int(pl.get("f", 1))) for pl in data["places"]]
        layout = ",".join(f"{e}:{f}" for e, f in places)
        p, k = int(data["p"]), int(data.get("k", 2))
        weights = data.get("weights")
    else:
        if args.p is None or args.places is None:
            raise UsageError("lift-weight needs --p and --places (or --in FILE)")
        p, layout, k = args.p, args.places, args.k
        if args.weights:
            text = args.weights
            if text.startswith("@"):
                with open(text[1:]) as fh:
                    text = fh.read()
            try:
                weights = json.loads(text)
            except json.JSONDecodeError as exc:
                raise UsageError(f"--weights: invalid JSON ({exc})")
    try:
        BaseField(p)
        profile = RamificationProfile.parse(p, layout, k)
    except ValueError as exc:
        raise UsageError(f"--p/--places: {exc}")
    if k < 2:
        raise UsageError("--k must be >= 2")
    sched = lift_weight_schedule(profile, _load_weights(weights, profile))
    doc = sched.to_json(certificates=not args.no_certificates)
    table = (
        f"delta = {delta(profile)}, n0 = {sched.n0}, certified from n = {sched.n_certified}\n"
        f"weights k + n*delta: {[row['weight'] for row in doc['schedule']]}"
    )
    _emit(args, doc, table)
    return 0


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="characteristic")
    common.add_argument("--f", type=int, default=None, help="residue degree (default 1)")
    common.add_argument("--json", action="store_true", help="print JSON instead of a table")
    common.add_argument("--out", metavar="FILE", help="also write the JSON output to FILE")
    common.add_argument("--seed", type=int, default=0)

    weight = argparse.ArgumentParser(add_help=False)
    weight.add_argument("--a", type=int, default=0, help="determinant twist")
    weight.add_argument("--n", type=_int_list, help="exponent vector, e.g. 2,0")
    weight.add_argument("--e", type=int, default=1, help="tensor power / ramification index")

    ap = argparse.ArgumentParser(prog="modgl2", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common, weight], help="expand a class in the irreducible basis")
    p.add_argument("--sym", type=int, help="exponent k of Sym^k")
    p.add_argument("--i", type=int, default=0, help="embedding index for --sym")
    p.add_argument("--x", help="operand expression or JSON")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("tensor", parents=[common, weight], help="tensor product of two classes")
    p.add_argument("--x")
    p.add_argument("--y")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("check-leq", parents=[common], help="decide x <= y in G_0")
    p.add_argument("--x")
    p.add_argument("--y")
    p.set_defaults(func=cmd_check_leq)

    p = sub.add_parser("verify-lemmas", parents=[common], help="sweep the weight-shifting lemmas")
    p.add_argument("--sweep", action="store_true", help="full sweep (default: quick sweep)")
    p.add_argument("--max-n", type=int, default=30)
    p.add_argument("--max-q", dest="max_q_sweep", type=int, default=27)
    p.add_argument("--inject-fault", action="store_true", help="corrupt one instance chosen by --seed")
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("dominate", parents=[common, weight], help="emit a domination certificate")
    p.add_argument("--t", type=int, help="request this parallel weight")
    p.add_argument("--intermediates", action="store_true", help="store intermediate classes")
    p.set_defaults(func=cmd_dominate)

    p = sub.add_parser("replay", parents=[common], help="check a certificate file")
    p.add_argument("certificate", help="certificate JSON file, or - for stdin")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("brute-force-t", parents=[common, weight], help="admissible t by direct expansion")
    p.add_argument("--t-max", type=int, default=200)
    p.set_defaults(func=cmd_brute_force_t)

    p = sub.add_parser("brauer-table", parents=[common], help="export the Brauer character table")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--max-q", type=int, default=brauer.DEFAULT_SIZE_BOUND)
    p.set_defaults(func=cmd_brauer_table)

    p = sub.add_parser("lift-weight", parents=[common], help="delta, n0 and the weights k + n*delta")
    p.add_argument("--places", help="e:f[,e:f...]")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--weights", help="JSON list (one entry per place) or @file")
    p.add_argument("--in", dest="input", metavar="FILE", help="JSON request file")
    p.add_argument("--no-certificates", action="store_true")
    p.set_defaults(func=cmd_lift_weight)
    return ap


_NEEDS_P = {"decompose", "tensor", "check-leq", "dominate", "brute-force-t", "brauer-table"}


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    args.f_given = args.f is not None
    if args.f is None:
        args.f = 1
    try:
        if args.command in _NEEDS_P and args.p is None:
            raise UsageError("--p is required")
        if getattr(args, "e", 1) < 1:
            raise UsageError("--e must be >= 1")
        return args.func(args)
    except UsageError as exc:
        ap.error(str(exc))
    except (ModGL2Error, OSError, KeyError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(err), file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
