"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 unsupported input, 4 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .alexander import (UnsupportedInput, alexander_polynomial, component_analysis, description_from_json,
                        description_to_json)
from .cyclotomic import DEFAULT_MAX_ORDER
from .polyhedra import newton_polytope
from .presentation import (GroupPresentation, PresentationSyntaxError, abelianize, parse_presentation,
                           random_commutator_relator)
from .seifert import (OrbifoldData, SeifertData, brieskorn, orbifold_cv, orbifold_presentation,
                      seifert_presentation, seifert_sigma)
from .sigma import (ARCS, COMPLEMENT, EMPTY, FULL, SIGMA1, SphereBound, angle_key, brown_rank1_bound,
                    brown_rank2, pencil_bound, sigma_bound_from_trop, verify_inclusion)
from .tropical import TropSet, trop_char_variety

EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_INVARIANT = 0, 2, 3, 4


class InvariantViolation(RuntimeError):
    pass


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- reports


@dataclass
class AnalysisReport:
    presentation: str
    abelianization: dict
    alexander_polynomial: str | None
    newton_polytope: dict | None
    variety: dict
    tropical_set: dict
    bound: dict
    brown: dict | None = None
    verification: dict | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation,
            "abelianization": self.abelianization,
            "alexander_polynomial": self.alexander_polynomial,
            "newton_polytope": self.newton_polytope,
            "variety": self.variety,
            "tropical_set": self.tropical_set,
            "bound": self.bound,
            "brown": self.brown,
            "verification": self.verification,
            "notes": self.notes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "AnalysisReport":
        return cls(**{k: data.get(k) for k in cls.__dataclass_fields__ if k != "notes"},
                   notes=list(data.get("notes") or []))


def brown_result(p: GroupPresentation) -> SphereBound | None:
    """Exact Sigma^1 from Brown's algorithm when p has two generators and one relator."""
    if p.num_generators != 2 or len(p.relators) != 1:
        return None
    ab = abelianize(p)
    if ab.rank == 2 and not ab.torsion:
        return brown_rank2(p)
    if ab.rank == 1:
        return brown_rank1_bound(p)
    return None


def analyze(p: GroupPresentation, max_cyclotomic: int = DEFAULT_MAX_ORDER, height: int = 50) -> AnalysisReport:
    ab = abelianize(p)
    if ab.rank == 0:
        raise UnsupportedInput("first Betti number is zero; the character sphere is empty")
    delta = alexander_polynomial(p)
    newt = None if delta.is_zero() else newton_polytope(delta).to_json()
    d = component_analysis(p, max_cyclotomic)
    T = trop_char_variety(d)
    bound = sigma_bound_from_trop(T, SIGMA1)
    notes = [c.note for c in d.components if getattr(c, "note", "")]
    brown = verification = None
    truth = brown_result(p)
    if truth is not None:
        brown = truth.to_json()
        rep = verify_inclusion(truth, bound, height)
        verification = rep.to_json()
    return AnalysisReport(
        presentation=p.text(),
        abelianization={"rank": ab.rank, "torsion": list(ab.torsion)},
        alexander_polynomial=delta.text(),
        newton_polytope=newt,
        variety=description_to_json(d),
        tropical_set=T.to_json(),
        bound=bound.to_json(),
        brown=brown,
        verification=verification,
        notes=sorted(set(notes)),
    )


# ---------------------------------------------------------------- SVG


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def _point(d, cx, cy, r):
    x, y = d
    h = math.hypot(x, y)
    return cx + r * x / h, cy - r * y / h


def _arc_path(s, e, cx, cy, r) -> str:
    a0 = math.atan2(s[1], s[0])
    a1 = math.atan2(e[1], e[0])
    sweep = (a1 - a0) % (2 * math.pi)
    if s == e:
        sweep = 2 * math.pi
    # split into pieces of at most a half turn so the SVG arc flags stay simple
    pieces = max(1, math.ceil(sweep / math.pi))
    step = sweep / pieces
    x0, y0 = cx + r * math.cos(a0), cy - r * math.sin(a0)
    out = [f"M {_fmt(x0)} {_fmt(y0)}"]
    for k in range(1, pieces + 1):
        a = a0 + step * k
        out.append(f"A {_fmt(r)} {_fmt(r)} 0 0 0 {_fmt(cx + r * math.cos(a))} {_fmt(cy - r * math.sin(a))}")
    return " ".join(out)


def render_svg(report: AnalysisReport) -> str:
    """Unit circle with Sigma^1 in red, -Trop in blue and excluded directions as hollow dots."""
    if report.abelianization["rank"] != 2:
        raise UnsupportedInput("plots are only drawn for first Betti number 2")
    size, cx, cy, r = 300, 150.0, 150.0, 100.0
    trop = TropSet.from_json(report.tropical_set).negated()
    shown = SphereBound.from_json(report.brown) if report.brown else SphereBound.from_json(report.bound)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        '<style>.sigma{fill:none;stroke:#c00;stroke-width:3}.trop{stroke:#00c;stroke-width:2;fill:none}'
        '.axis{stroke:#999;stroke-width:0.5}.hole{fill:#fff;stroke:#c00;stroke-width:1.5}'
        '.full{fill:#00c;fill-opacity:0.15}</style>',
        f'<line class="axis" x1="{_fmt(cx - 1.3 * r)}" y1="{_fmt(cy)}" x2="{_fmt(cx + 1.3 * r)}" y2="{_fmt(cy)}"/>',
        f'<line class="axis" x1="{_fmt(cx)}" y1="{_fmt(cy - 1.3 * r)}" x2="{_fmt(cx)}" y2="{_fmt(cy + 1.3 * r)}"/>',
    ]
    if trop.full_space:
        lines.append(f'<circle class="full" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(1.3 * r)}"/>')
    else:
        for d in sorted(trop.ray_directions(), key=angle_key):
            x, y = _point(d, cx, cy, 1.3 * r)
            lines.append(f'<line class="trop" x1="{_fmt(cx)}" y1="{_fmt(cy)}" x2="{_fmt(x)}" y2="{_fmt(y)}"/>')
    holes: list = []
    if shown.mode == FULL:
        lines.append(f'<circle class="sigma" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}"/>')
    elif shown.mode == ARCS:
        for s, e in sorted(shown.arcs, key=lambda a: angle_key(a[0])):
            lines.append(f'<path class="sigma" d="{_arc_path(s, e, cx, cy, r)}"/>')
            holes += [s, e]
    elif shown.mode == COMPLEMENT:
        ex = shown.excluded_directions() or set()
        lines.append(f'<circle class="sigma" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}"/>')
        holes += list(ex)
    for d in sorted(set(holes), key=angle_key):
        x, y = _point(d, cx, cy, r)
        lines.append(f'<circle class="hole" cx="{_fmt(x)}" cy="{_fmt(y)}" r="4"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- input helpers


def _read_text(arg: str) -> str:
    p = Path(arg)
    if not arg.lstrip().startswith(("<", "{", "[")) and p.exists():
        return p.read_text()
    return arg


def _read_json(arg: str):
    try:
        return json.loads(_read_text(arg))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _presentation(arg: str) -> GroupPresentation:
    return parse_presentation(_read_text(arg).strip())


def _ints(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError as exc:
        raise InputError(f"expected a list of integers, got {text!r}") from exc


def _emit(obj, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
        return
    for key in sorted(obj) if isinstance(obj, dict) else []:
        val = obj[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        out.write(f"{key}: {val}\n")


# ---------------------------------------------------------------- commands


def cmd_analyze(args) -> int:
    rep = analyze(_presentation(args.presentation), args.max_cyclotomic, args.height_bound)
    _emit(rep.to_json(), args.json)
    if args.svg:
        Path(args.svg).write_text(render_svg(rep))
    if rep.verification and rep.verification["verdict"] != "HOLDS":
        raise InvariantViolation(f"inclusion fails at direction {rep.verification['witness']}")
    return EXIT_OK


def cmd_bound(args) -> int:
    data = _read_json(args.description)
    if isinstance(data, dict) and "pencils" in data:
        n = int(data["rank"])
        b = pencil_bound(n, data["pencils"])
    else:
        try:
            d = description_from_json(data)
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed variety description: {exc}") from exc
        b = sigma_bound_from_trop(trop_char_variety(d), SIGMA1)
    _emit(b.to_json(), args.json)
    return EXIT_OK


def cmd_brown(args) -> int:
    p = _presentation(args.presentation)
    b = brown_result(p)
    if b is None:
        raise UnsupportedInput("Brown's algorithm needs 2 generators, 1 relator and b1 in {1, 2} without torsion")
    _emit(b.to_json(), args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.random:
        rng = random.Random(args.seed)
        failures = []
        for _ in range(args.random):
            w = random_commutator_relator(rng, args.max_length)
            p = GroupPresentation(2, (w,))
            bound = sigma_bound_from_trop(trop_char_variety(component_analysis(p, args.max_cyclotomic)), SIGMA1)
            rep = verify_inclusion(brown_rank2(p), bound, args.height_bound)
            if not rep.holds:
                failures.append({"relator": p.text(), "witness": list(rep.witness)})
        _emit({"instances": args.random, "seed": args.seed, "violations": failures,
               "verdict": "HOLDS" if not failures else "VIOLATION"}, args.json)
        if failures:
            raise InvariantViolation(f"{len(failures)} violations")
        return EXIT_OK
    if not args.presentation:
        raise InputError("verify needs a presentation or --random N")
    p = _presentation(args.presentation)
    truth = brown_result(p)
    if truth is None:
        raise UnsupportedInput("no exact Sigma^1 available for this presentation")
    bound = sigma_bound_from_trop(trop_char_variety(component_analysis(p, args.max_cyclotomic)), SIGMA1)
    rep = verify_inclusion(truth, bound, args.height_bound)
    _emit({"truth": truth.to_json(), "bound": bound.to_json(), **rep.to_json()}, args.json)
    if not rep.holds:
        raise InvariantViolation(f"inclusion fails at direction {list(rep.witness)}")
    return EXIT_OK


def _brieskorn_json(a) -> dict:
    b = brieskorn(a)
    return {
        "exponents": list(b.exponents),
        "lcm": b.lcm,
        "partial_lcms": list(b.partial_lcms),
        "product": b.product,
        "multiplicities": list(b.multiplicities),
        "alphas": list(b.alphas),
        "betas": list(b.betas),
        "genus": b.genus,
        "euler": str(b.euler),
        "exceptional_pairs": [list(x) for x in b.seifert.pairs],
        "sigma1": seifert_sigma(b.seifert),
        "presentation": seifert_presentation(b.seifert).text(),
    }


def cmd_brieskorn(args) -> int:
    a = _ints(" ".join(args.exponents))
    _emit(_brieskorn_json(a), args.json)
    return EXIT_OK


def _orbifold_input(args) -> OrbifoldData:
    if args.spec:
        data = _read_json(args.spec)
        return OrbifoldData(int(data.get("genus", 0)), int(data.get("punctures", 0)), tuple(data.get("weights", ())))
    return OrbifoldData(args.genus, args.punctures, _ints(args.weights))


def cmd_orbifold(args) -> int:
    o = _orbifold_input(args)
    v = orbifold_cv(o)
    _emit({
        "genus": o.genus, "punctures": o.punctures, "weights": list(o.weights),
        "classification": v.classification, "theta": v.theta, "sigma1": v.sigma1,
        "euler_characteristic": str(v.euler_characteristic),
        "presentation": orbifold_presentation(o).text(),
    }, args.json)
    return EXIT_OK


def cmd_seifert(args) -> int:
    if args.spec:
        data = _read_json(args.spec)
        euler = data.get("euler")
        s = SeifertData(int(data.get("genus", 0)), tuple(tuple(x) for x in data.get("pairs", ())),
                        None if euler is None else Fraction(str(euler)))
    else:
        vals = _ints(args.pairs)
        if len(vals) % 2:
            raise InputError("pairs need an even number of integers")
        s = SeifertData(args.genus, tuple(zip(vals[::2], vals[1::2])),
                        None if args.euler is None else Fraction(args.euler))
    p = seifert_presentation(s)
    out = {"genus": s.genus, "pairs": [list(x) for x in s.pairs], "euler": str(s.euler),
           "sigma1": seifert_sigma(s), "presentation": p.text()}
    if args.analyze:
        d = component_analysis(p, args.max_cyclotomic)
        out["variety"] = description_to_json(d)
        out["bound"] = sigma_bound_from_trop(trop_char_variety(d), SIGMA1).to_json()
    _emit(out, args.json)
    return EXIT_OK


def cmd_plot(args) -> int:
    text = _read_text(args.input).strip()
    if text.startswith("{"):
        rep = AnalysisReport.from_json(json.loads(text))
    else:
        rep = analyze(parse_presentation(text), args.max_cyclotomic, args.height_bound)
    if not args.svg:
        raise InputError("plot needs --svg PATH")
    Path(args.svg).write_text(render_svg(rep))
    return EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--svg", metavar="PATH", help="write an SVG plot")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--height-bound", type=int, default=50, help="sampling height for verification")
    common.add_argument("--max-cyclotomic", type=int, default=DEFAULT_MAX_ORDER)

    ap = argparse.ArgumentParser(prog="tropbns", description="Tropical bounds on BNS invariants.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", parents=[common], help="full pipeline for a presentation")
    s.add_argument("presentation", help="presentation text or a file containing it")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("bound", parents=[common], help="bound from a variety description or pencils (JSON)")
    s.add_argument("description")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("brown", parents=[common], help="Sigma^1 of a two-generator one-relator group")
    s.add_argument("presentation")
    s.set_defaults(func=cmd_brown)

    s = sub.add_parser("verify", parents=[common], help="check Brown's Sigma^1 against the tropical bound")
    s.add_argument("presentation", nargs="?")
    s.add_argument("--random", type=int, default=0, metavar="N", help="check N seeded random relators")
    s.add_argument("--max-length", type=int, default=24)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("brieskorn", parents=[common], help="Seifert invariants of a Brieskorn manifold")
    s.add_argument("exponents", nargs="+")
    s.set_defaults(func=cmd_brieskorn)

    s = sub.add_parser("orbifold", parents=[common], help="characteristic variety of an orbifold group")
    s.add_argument("spec", nargs="?", help="JSON object with genus, punctures, weights")
    s.add_argument("--genus", type=int, default=1)
    s.add_argument("--punctures", type=int, default=0)
    s.add_argument("--weights", default="")
    s.set_defaults(func=cmd_orbifold)

    s = sub.add_parser("seifert", parents=[common], help="Sigma^1 verdict for a Seifert manifold")
    s.add_argument("spec", nargs="?", help="JSON object with genus, pairs, euler")
    s.add_argument("--genus", type=int, default=0)
    s.add_argument("--pairs", default="", help="alpha1,beta1,alpha2,beta2,...")
    s.add_argument("--euler", default=None)
    s.add_argument("--analyze", action="store_true", help="also run the component analysis")
    s.set_defaults(func=cmd_seifert)

    s = sub.add_parser("plot", parents=[common], help="SVG circle plot from a report or presentation")
    s.add_argument("input")
    s.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return args.func(args)
    except (PresentationSyntaxError, InputError) as exc:
        return _fail(EXIT_PARSE, "PARSE_ERROR", exc)
    except UnsupportedInput as exc:
        return _fail(EXIT_UNSUPPORTED, "UNSUPPORTED", exc)
    except (InvariantViolation, AssertionError) as exc:
        return _fail(EXIT_INVARIANT, "INVARIANT_VIOLATION", exc)
    except ValueError as exc:
        return _fail(EXIT_PARSE, "INVALID_INPUT", exc)


def _fail(code: int, tag: str, exc: Exception) -> int:
    sys.stderr.write(json.dumps({"error": {"code": tag, "message": str(exc)}}) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
