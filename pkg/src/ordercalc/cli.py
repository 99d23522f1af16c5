"""Deterministic command-line surface over the ordering library.

All workflows are batch: JSON on stdout (stable key order), SVG only for
human inspection.  Exit codes: 0 ok, 1 property failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

from . import affine, catalog, dense, dynreal, freewords, thompson, z2
from .core import (BallSpec, CrossingWitness, DEFAULT_BOUND, Group,
                   OrderingOracle, SIGN_NAMES, agreement_radius, conjugate,
                   conradian_check, crossing_search, reverse, sign_table,
                   soul_bound_check, verify_crossing)
from .exact import parse_ladic, parse_quad


def default_bound() -> int:
    return int(os.environ.get("ORDERCALC_BOUND", DEFAULT_BOUND))


class UsageError(ValueError):
    pass


# -- Tag parsing ---------------------------------------------------------------

def parse_group(tag: str) -> Group:
    if tag == "z2":
        return z2.Z2
    if tag.startswith("tararin:"):
        return catalog.tararin_group(int(tag.split(":")[1]))
    if tag.startswith("cn:"):
        return catalog.cn_group(int(tag.split(":")[1]))
    if tag == "heisenberg":
        return catalog.HEISENBERG
    if tag.startswith("bs:"):
        return affine.bs_group(int(tag.split(":")[1]))
    if tag == "f2":
        return freewords.F2
    if tag == "thompson":
        return thompson.THOMPSON_F
    raise UsageError(f"unknown group tag {tag!r}")


def _parse_side(token: str) -> int:
    if token == "plus":
        return z2.PLUS_SIDE
    if token == "minus":
        return z2.MINUS_SIDE
    raise UsageError(f"expected plus or minus, got {token!r}")


def _parse_z2_ordering(tag: str) -> z2.Z2Ordering:
    # psi:X[:plus|:minus] with X a rational, a quad "a+b*sqrt(2)", sqrt2, or inf
    parts = tag.split(":")
    if parts[0] != "psi" or len(parts) not in (2, 3):
        raise UsageError(f"bad z2 ordering {tag!r}")
    if parts[1] == "inf":
        ordering = z2.psi_infinity()
    else:
        ordering = z2.psi_x(parse_quad(parts[1]))
    if len(parts) == 3:
        ordering = z2.completion(ordering, _parse_side(parts[2]))
    elif ordering.is_partial:
        raise UsageError(f"rational parameter {parts[1]} needs :plus or :minus")
    return ordering


def parse_ordering(group_tag: str, tag: str) -> OrderingOracle:
    if tag.startswith("reverse(") and tag.endswith(")"):
        return reverse(parse_ordering(group_tag, tag[len("reverse("):-1]))
    if group_tag == "z2":
        if tag.startswith("z2:"):
            tag = tag[3:]
        return z2.oracle(_parse_z2_ordering(tag))
    if group_tag.startswith("tararin:"):
        n = int(group_tag.split(":")[1])
        sv = tuple(1 if ch == "+" else -1 for ch in tag.strip())
        if len(sv) != n or any(ch not in "+-" for ch in tag.strip()):
            raise UsageError(f"tararin:{n} needs a +/- string of length {n}")
        return catalog.t_ordering(sv)
    if group_tag.startswith("cn:"):
        n = int(group_tag.split(":")[1])
        sv = tuple(1 if ch == "+" else -1 for ch in tag.strip())
        if len(sv) != n + 2:
            raise UsageError(f"cn:{n} needs a +/- string of length {n + 2}")
        return catalog.cn_ordering(n, sv)
    if group_tag == "heisenberg":
        # heis:PSI[:plus|:minus]:+  (inner psi parameter, then the top sign)
        parts = tag.split(":")
        if parts[0] == "heis":
            parts = parts[1:]
        top = 1 if parts[-1] == "+" else -1 if parts[-1] == "-" else None
        if top is None:
            raise UsageError("heisenberg ordering ends with :+ or :-")
        inner = _parse_z2_ordering("psi:" + ":".join(parts[:-1]))
        return catalog.h_ordering(inner, top)
    if group_tag.startswith("bs:"):
        ell = int(group_tag.split(":")[1])
        parts = tag.split(":")
        if parts[0] == "smirnov":
            eps = parse_quad(parts[1])
            side = _parse_side(parts[2]) if len(parts) > 2 else None
            return affine.smirnov_oracle(affine.SmirnovParam(eps, side, ell))
        if parts[0] == "bsconrad":
            return affine.bs_conradian(int(parts[1]), ell)
        raise UsageError(f"unknown bs ordering {tag!r}")
    if group_tag == "f2":
        return parse_f2_ordering(tag)
    if group_tag == "thompson":
        return parse_thompson_ordering(tag)
    raise UsageError(f"unknown group tag {group_tag!r}")


def parse_f2_ordering(tag: str) -> OrderingOracle:
    if tag.startswith("reverse(") and tag.endswith(")"):
        return reverse(parse_f2_ordering(tag[len("reverse("):-1]))
    if tag.startswith("conj[") and "](" in tag and tag.endswith(")"):
        word_str, rest = tag[len("conj["):].split("](", 1)
        inner = parse_f2_ordering(rest[:-1])
        return conjugate(inner, freewords.parse_word(word_str))
    if tag == "magnus":
        return freewords.magnus_oracle()
    if tag.startswith("seed:"):
        k = int(tag.split(":")[1])
        return freewords.seed_family(k + 1)[k]
    if tag.startswith("z2mag:") or tag.startswith("z2magflip:"):
        kind, label = tag.split(":", 1)
        for o in freewords.seed_family(8):
            if o.descriptor == tag:
                return o
        raise UsageError(f"unknown f2 ordering {tag!r}")
    raise UsageError(f"unknown f2 ordering {tag!r}")


def parse_thompson_ordering(tag: str) -> OrderingOracle:
    parts = tag.split(":")
    if parts[0] == "thompson":
        parts = parts[1:]
    if parts[0] == "lambda":
        # lambda:PSI...:FPRIMEKIND
        fk = parts[-1]
        inner = _parse_z2_ordering("psi:" + ":".join(parts[1:-1]))
        return thompson.lambda_oracle(inner, fk)
    kind = ":".join(parts)
    return thompson.isolated_oracle(kind)


def parse_element(group_tag: str, s: str):
    s = s.strip()
    # Accept the group-prefixed serialization forms, e.g. "t2:(1,-1)",
    # "cn:1:(g,e/3^k,a)", "heis:(k,j,i)".
    for prefix in (f"t{group_tag.split(':')[-1]}:", group_tag + ":",
                   "heis:", "z2:"):
        if s.startswith(prefix) and "(" in s[len(prefix):]:
            s = s[len(prefix):]
            break
    if group_tag == "z2":
        m, n = s.strip("()").split(",")
        return (int(m), int(n))
    if group_tag.startswith("tararin:"):
        return tuple(int(t) for t in s.strip("()").split(","))
    if group_tag.startswith("cn:"):
        body = s.strip("()").split(",")
        return (int(body[0]), parse_ladic(body[1], 3),
                tuple(int(t) for t in body[2:]))
    if group_tag == "heisenberg":
        k, j, i = s.strip("()").split(",")
        return (int(k), int(j), int(i))
    if group_tag.startswith("bs:"):
        ell = int(group_tag.split(":")[1])
        return affine.parse_bs_element(s, ell)
    if group_tag == "f2":
        return freewords.parse_word(s)
    if group_tag == "thompson":
        if s.startswith("[") or s.startswith("{"):
            data = json.loads(s)
            if isinstance(data, list):
                data = {"breakpoints": data}
            return thompson.FElement.from_json(data)
        word = freewords.parse_word(s)
        out = thompson.IDENTITY
        gens = {1: thompson.X0, 2: thompson.X1}
        for letter in word:
            g = gens[abs(letter)]
            if letter < 0:
                g = thompson.f_invert(g)
            out = thompson.f_compose(out, g)
        return out
    raise UsageError(f"unknown group tag {group_tag!r}")


# -- Output --------------------------------------------------------------------

def emit(payload: dict, status: str = "ok") -> int:
    doc = {"status": status}
    doc.update(payload)
    print(json.dumps(doc, sort_keys=True, default=str))
    return 0 if status == "ok" else 1


def witness_json(o: OrderingOracle, c: CrossingWitness) -> dict:
    fmt = o.group.fmt
    return {"f": fmt(c.f), "g": fmt(c.g), "u": fmt(c.u), "v": fmt(c.v),
            "w": fmt(c.w), "N": c.N, "M": c.M,
            "checked_bound": c.checked_bound, "exactness": c.exactness}


# -- Subcommands ---------------------------------------------------------------

def cmd_sign(args) -> int:
    o = parse_ordering(args.group, args.ordering)
    g = parse_element(args.group, args.element)
    return emit({"element": o.group.fmt(g), "sign": SIGN_NAMES[o.sign_fn(g)]})


def cmd_cmp(args) -> int:
    o = parse_ordering(args.group, args.ordering)
    g = parse_element(args.group, args.left)
    h = parse_element(args.group, args.right)
    c = o.cmp(g, h)
    rel = {1: "<", 0: "=", -1: ">"}[c]
    return emit({"left": o.group.fmt(g), "right": o.group.fmt(h),
                 "cmp": SIGN_NAMES[c], "relation": rel})


def cmd_enumerate(args) -> int:
    if args.group.startswith("tararin:"):
        n = int(args.group.split(":")[1])
        oracles = catalog.enumerate_t_orderings(n)
        gens = [g for _, g in catalog.tararin_group(n).generators]
    elif args.group.startswith("cn:"):
        n = int(args.group.split(":")[1])
        oracles = catalog.enumerate_cn_corderings(n)
        gens = [g for _, g in catalog.cn_group(n).generators]
    else:
        raise UsageError("enumerate supports tararin:N and cn:N")
    group = oracles[0].group
    table = []
    for o in oracles:
        table.append({"descriptor": o.descriptor,
                      "generator_signs": [SIGN_NAMES[o.sign_fn(g)] for g in gens]})
    return emit({"group": args.group, "count": len(oracles),
                 "generators": [group.fmt(g) for g in gens],
                 "orderings": table})


def cmd_agree(args) -> int:
    o1 = parse_ordering(args.group, args.ordering)
    if args.other_table:
        # Compare against a recorded sign table (enumeration order).
        ball = BallSpec(o1.group, args.radius)
        mine = sign_table(o1, ball).splitlines()
        with open(args.other_table) as fh:
            theirs = [line.rstrip("\n") for line in fh if line.strip()]
        for i, (a, b) in enumerate(zip(mine, theirs)):
            if a != b:
                return emit({"ordering": o1.descriptor, "table": args.other_table,
                             "first_disagreement": {"index": i, "ours": a,
                                                    "theirs": b}})
        if len(mine) != len(theirs):
            return emit({"ordering": o1.descriptor, "table": args.other_table,
                         "error": "length mismatch"}, status="fail")
        return emit({"ordering": o1.descriptor, "table": args.other_table,
                     "first_disagreement": None})
    if not args.other:
        raise UsageError("agree needs --other or --other-table")
    o2 = parse_ordering(args.group, args.other)
    ball = BallSpec(o1.group, args.radius)
    r = agreement_radius(o1, o2, ball, args.radius)
    return emit({"orderings": [o1.descriptor, o2.descriptor],
                 "max_radius": args.radius,
                 "disagree_radius": r if r is not None else "AgreeUpToBound"})


def cmd_conradian(args) -> int:
    o = parse_ordering(args.group, args.ordering)
    ball = BallSpec(o.group, args.radius)
    w = conradian_check(o, ball, args.bound)
    if w is None:
        return emit({"ordering": o.descriptor, "radius": args.radius,
                     "conradian": "Pass"})
    return emit({"ordering": o.descriptor, "radius": args.radius,
                 "conradian": "Fail",
                 "witness": {"f": o.group.fmt(w.f), "g": o.group.fmt(w.g),
                             "strong": w.strong, "exactness": w.exactness}},
                status="fail")


def cmd_crossing_find(args) -> int:
    o = parse_ordering(args.group, args.ordering)
    ball = BallSpec(o.group, args.radius)
    c = crossing_search(o, ball, args.bound)
    if c is None:
        return emit({"ordering": o.descriptor, "radius": args.radius,
                     "bound": args.bound, "crossing": None})
    return emit({"ordering": o.descriptor, "radius": args.radius,
                 "bound": args.bound, "crossing": witness_json(o, c)})


def cmd_crossing_verify(args) -> int:
    o = parse_ordering(args.group, args.ordering)
    data = json.loads(args.witness)
    c = CrossingWitness(
        f=parse_element(args.group, data["f"]),
        g=parse_element(args.group, data["g"]),
        u=parse_element(args.group, data["u"]),
        v=parse_element(args.group, data["v"]),
        w=parse_element(args.group, data["w"]),
        N=int(data["N"]), M=int(data["M"]),
        checked_bound=args.bound, exactness="BoundedOnly")
    rep = verify_crossing(c, o, args.bound)
    payload = {"cond_i": rep.cond_i, "cond_ii": rep.cond_ii,
               "cond_iii": rep.cond_iii, "exactness": rep.exactness,
               "bound": rep.checked_bound}
    return emit(payload, status="ok" if rep.ok else "fail")


def cmd_soul(args) -> int:
    o = parse_ordering(args.group, args.ordering)
    h = parse_element(args.group, args.element)
    ball = BallSpec(o.group, args.radius)
    c = soul_bound_check(o, h, ball, args.bound)
    if c is None:
        return emit({"element": o.group.fmt(h), "soul": "Unknown"})
    return emit({"element": o.group.fmt(h), "soul": "OutsideSoul",
                 "witness": witness_json(o, c)})


def cmd_dynreal(args) -> int:
    o = parse_ordering(args.group, args.ordering)
    ball = BallSpec(o.group, args.radius)
    tmap = dynreal.build_tmap(o, ball.elements)
    if args.action == "check":
        bad = dynreal.realization_sign_check(o, tmap, ball)
        if bad is not None:
            return emit({"witness": o.group.fmt(bad)}, status="fail")
        return emit({"ordering": o.descriptor, "radius": args.radius,
                     "realization": "Pass"})
    closure = BallSpec(o.group, max(args.radius - 1, 0))
    act = dynreal.action_from_realization(tmap, o.group, closure.elements)
    maps = {name: m.to_json() for name, m in act.maps}
    if args.action == "build":
        return emit({"ordering": o.descriptor, "radius": args.radius,
                     "maps": maps})
    if args.action == "plot":
        if not args.out:
            raise UsageError("plot needs --out FILE.svg")
        emit_svg([m for _, m in act.maps], args.out)
        return emit({"svg": args.out})
    raise UsageError(f"unknown dynreal action {args.action!r}")


def _load_seeds(path: str) -> List[Tuple[int, OrderingOracle]]:
    with open(path) as fh:
        data = json.load(fh)
    return [(int(item["radius"]), parse_f2_ordering(item["ordering"]))
            for item in data]


def cmd_fdense(args) -> int:
    seeds = _load_seeds(args.seeds)
    ga = dense.build_glued(seeds)
    if args.action == "build":
        payload = {
            "boxes": [{"k": b.k, "radius": b.radius, "ordering": b.descriptor}
                      for b in ga.boxes],
            "connectors": [freewords.word_fmt(c) for c in ga.connectors],
            "maps": {name: m.to_json() for name, m in ga.action.maps},
        }
        if args.out:
            with open(args.out, "w") as fh:
                json.dump(payload, fh, sort_keys=True)
        return emit(payload)
    if args.action == "verify":
        reports = dense.verify_density(ga, seeds)
        payload = {"seeds": [{
            "index": r.index, "ordering": r.descriptor,
            "center_word": freewords.word_fmt(r.center_word),
            "center_ok": r.center_ok, "agreed": r.agreed,
            "witness": freewords.word_fmt(r.witness) if r.witness else None,
        } for r in reports]}
        ok = all(r.ok for r in reports)
        return emit(payload, status="ok" if ok else "fail")
    if args.action == "plot":
        if not args.out:
            raise UsageError("plot needs --out FILE.svg")
        emit_boxes_svg(ga, args.out)
        return emit({"svg": args.out})
    raise UsageError(f"unknown fdense action {args.action!r}")


def cmd_thompson(args) -> int:
    if args.action == "classify":
        report = thompson.classification_checks(thompson.default_sample())
        payload = {
            "bi_invariance": report.bi_invariance_ok,
            "distinctness": report.distinctness_ok,
            "restriction_identities": report.restriction_ok,
            "sigma_identities": report.sigma_ok,
            "lambda_checks": report.lambda_ok,
            "failures": list(report.failures),
        }
        return emit(payload, status="ok" if report.ok else "fail")
    if args.action == "sign":
        o = parse_thompson_ordering(args.ordering)
        f = parse_element("thompson", args.element)
        return emit({"ordering": o.descriptor,
                     "element": thompson.THOMPSON_F.fmt(f),
                     "sign": SIGN_NAMES[o.sign_fn(f)]})
    raise UsageError(f"unknown thompson action {args.action!r}")


def cmd_fit_epsilon(args) -> int:
    ell = args.ell
    signs = []
    name_to_sign = {v: k for k, v in SIGN_NAMES.items()}
    with open(args.table) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            elem_s, sign_s = line.split("\t")
            signs.append((affine.parse_bs_element(elem_s, ell),
                          name_to_sign[sign_s]))
    result = affine.fit_epsilon(signs, ell)
    if isinstance(result, affine.EpsInterval):
        return emit({"fit": "interval",
                     "lo": str(result.lo) if result.lo is not None else None,
                     "hi": str(result.hi) if result.hi is not None else None})
    if isinstance(result, affine.ConradianTag):
        return emit({"fit": "conradian", "which": result.which})
    return emit({"fit": "inconsistent", "reason": result.reason}, status="fail")


def cmd_threshold(args) -> int:
    ell = args.ell
    elements = [affine.parse_bs_element(tok, ell)
                for tok in args.elements.split(";") if tok.strip()]
    bound = affine.eps_threshold(elements, ell)
    return emit({"threshold": str(bound) if bound is not None else "-inf"})


def cmd_sign_table(args) -> int:
    o = parse_ordering(args.group, args.ordering)
    ball = BallSpec(o.group, args.radius)
    sys.stdout.write(sign_table(o, ball))
    return 0


# -- SVG -----------------------------------------------------------------------

def emit_svg(maps: List[dynreal.PLMap], path: str,
             window: Optional[Tuple[float, float]] = None) -> None:
    """Standalone SVG of PL maps; double precision for display only."""
    if not maps:
        raise UsageError("nothing to plot")
    xs = [float(x) for m in maps for x, _ in m.breakpoints]
    lo = min(xs) - 0.5 if window is None else window[0]
    hi = max(xs) + 0.5 if window is None else window[1]
    size, pad = 480.0, 20.0
    scale = (size - 2 * pad) / (hi - lo)

    def sx(x):
        return pad + (float(x) - lo) * scale

    def sy(y):
        return size - pad - (float(y) - lo) * scale

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" '
             f'height="{size:.0f}" viewBox="0 0 {size:.0f} {size:.0f}">',
             f'<line x1="{sx(lo)}" y1="{sy(lo)}" x2="{sx(hi)}" y2="{sy(hi)}" '
             'stroke="#999" stroke-dasharray="4 3"/>']
    for i, m in enumerate(maps):
        pts = [(lo, float(m.apply(Fraction(lo).limit_denominator(10 ** 6))))]
        pts += [(float(x), float(y)) for x, y in m.breakpoints]
        pts.append((hi, float(m.apply(Fraction(hi).limit_denominator(10 ** 6)))))
        path_d = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(f'<polyline points="{path_d}" fill="none" '
                     f'stroke="{colors[i % len(colors)]}" stroke-width="1.5"/>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))


def emit_boxes_svg(ga: dense.GluedAction, path: str) -> None:
    """Box-and-gap figure for a glued action."""
    maps = [m for _, m in ga.action.maps]
    size, pad = 640.0, 20.0
    lo, hi = float(ga.lo) - 0.5, float(ga.hi) + 0.5
    scale = (size - 2 * pad) / (hi - lo)

    def sx(x):
        return pad + (float(x) - lo) * scale

    def sy(y):
        return size - pad - (float(y) - lo) * scale

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" '
             f'height="{size:.0f}" viewBox="0 0 {size:.0f} {size:.0f}">',
             f'<line x1="{sx(lo)}" y1="{sy(lo)}" x2="{sx(hi)}" y2="{sy(hi)}" '
             'stroke="#999" stroke-dasharray="4 3"/>']
    third = 1.0 / 3.0
    for box in ga.boxes:
        x0, x1 = sx(box.k - third), sx(box.k + third)
        y0, y1 = sy(box.k - third), sy(box.k + third)
        parts.append(f'<rect x="{x0:.2f}" y="{y1:.2f}" width="{x1 - x0:.2f}" '
                     f'height="{y0 - y1:.2f}" fill="none" stroke="#555"/>')
    colors = ["#1f77b4", "#d62728"]
    for i, m in enumerate(maps):
        pts = [(float(x), float(y)) for x, y in m.breakpoints]
        path_d = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(f'<polyline points="{path_d}" fill="none" '
                     f'stroke="{colors[i % len(colors)]}" stroke-width="1.5"/>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))


# -- Argument plumbing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordercalc",
                                description="exact ordering computations")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, ordering=True, radius=None, bound=False):
        sp.add_argument("--group", required=True)
        if ordering:
            sp.add_argument("--ordering", required=True)
        if radius is not None:
            sp.add_argument("--radius", type=int, default=radius)
        if bound:
            sp.add_argument("--bound", type=int, default=default_bound())

    sp = sub.add_parser("sign")
    common(sp)
    sp.add_argument("--element", required=True)
    sp.set_defaults(fn=cmd_sign)

    sp = sub.add_parser("cmp")
    common(sp)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.set_defaults(fn=cmd_cmp)

    sp = sub.add_parser("enumerate")
    sp.add_argument("--group", required=True)
    sp.set_defaults(fn=cmd_enumerate)

    sp = sub.add_parser("agree")
    common(sp, radius=3)
    sp.add_argument("--other")
    sp.add_argument("--other-table", help="recorded sign-table file")
    sp.set_defaults(fn=cmd_agree)

    sp = sub.add_parser("conradian")
    common(sp, radius=3, bound=True)
    sp.set_defaults(fn=cmd_conradian)

    sp = sub.add_parser("crossing")
    csub = sp.add_subparsers(dest="action", required=True)
    spf = csub.add_parser("find")
    common(spf, radius=3, bound=True)
    spf.set_defaults(fn=cmd_crossing_find)
    spv = csub.add_parser("verify")
    common(spv, bound=True)
    spv.add_argument("--witness", required=True, help="JSON quintuple")
    spv.set_defaults(fn=cmd_crossing_verify)

    sp = sub.add_parser("soul")
    common(sp, radius=3, bound=True)
    sp.add_argument("--element", required=True)
    sp.set_defaults(fn=cmd_soul)

    sp = sub.add_parser("dynreal")
    sp.add_argument("action", choices=["build", "check", "plot"])
    common(sp, radius=3)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_dynreal)

    sp = sub.add_parser("fdense")
    sp.add_argument("action", choices=["build", "verify", "plot"])
    sp.add_argument("--seeds", required=True, help="JSON seed file")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_fdense)

    sp = sub.add_parser("thompson")
    sp.add_argument("action", choices=["sign", "classify"])
    sp.add_argument("--ordering")
    sp.add_argument("--element")
    sp.set_defaults(fn=cmd_thompson)

    sp = sub.add_parser("fit-epsilon")
    sp.add_argument("--ell", type=int, default=3)
    sp.add_argument("--table", required=True, help="element<TAB>sign lines")
    sp.set_defaults(fn=cmd_fit_epsilon)

    sp = sub.add_parser("threshold")
    sp.add_argument("--ell", type=int, default=3)
    sp.add_argument("--elements", required=True,
                    help="semicolon-separated (n, m/l^k) elements")
    sp.set_defaults(fn=cmd_threshold)

    sp = sub.add_parser("sign-table")
    common(sp, radius=3)
    sp.set_defaults(fn=cmd_sign_table)

    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as e:
        print(json.dumps({"status": "usage-error", "error": str(e)}))
        return 2
    except (ValueError, KeyError, OSError) as e:
        print(json.dumps({"status": "usage-error", "error": str(e)}))
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
