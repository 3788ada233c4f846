"""Command-line front end.

Subcommands:

* ``map``       -- apply one of the projective maps to a 4-tuple
* ``implicit``  -- pedal / inverse pedal pullback of a polynomial
* ``sample``    -- mesh a gallery or config surface to Wavefront OBJ
* ``verify``    -- run the verification suites, key=value report

Exit codes: 0 pass, 1 usage/parse errors or failed verification,
2 exceptional geometry, 3 empty output.  PEDALIS_SEED sets the default
seed of the verification suites.
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys
import time
from fractions import Fraction

import numpy as np

from . import gallery, hompoly, projmaps, quadricpedal, ruledpedal, surfkit
from .errors import EmptyMesh, GeometryError
from .hompoly import Space, degree_bookkeeping, parse_poly, strip_exceptional
from .projmaps import HPlane, HPoint
from .surfkit import Chart, Domain, DualSurface, PointSurface, PolarSurface

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EXCEPTIONAL = 2
EXIT_EMPTY = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the CLI contract wants 1
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let tuple values like -1,0,0,1 pass as option arguments
        self._negative_number_matcher = re.compile(r"^-[\d.,]+$")

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit2(message)


class SystemExit2(Exception):
    def __init__(self, message):
        super().__init__(message)


# -- expression grammar for config charts -------------------------------------

_EXPR_TOKEN = re.compile(
    r"\s*(?:(\d+\.\d*|\.\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^,])|$)")

_FUNCTIONS = {"sin": math.sin, "cos": math.cos, "sqrt": math.sqrt}
_CONSTANTS = {"pi": math.pi}


class ExprError(ValueError):
    pass


def _tokenize_expr(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprError(f"bad character near {text[pos:]!r}")
        tok = m.group(0).strip()
        if tok:
            tokens.append(tok)
        pos = m.end()
    return tokens


class _Expr:
    """Pratt parser for +, -, *, /, ^ with sin, cos, sqrt over (u, v)."""

    def __init__(self, text):
        self.toks = _tokenize_expr(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.peek() is not None:
            raise ExprError(f"unexpected token {self.peek()!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            node = (lambda a, b: (lambda u, v: a(u, v) + b(u, v)))(node, rhs) \
                if op == "+" else (lambda a, b: (lambda u, v: a(u, v) - b(u, v)))(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            node = (lambda a, b: (lambda u, v: a(u, v) * b(u, v)))(node, rhs) \
                if op == "*" else (lambda a, b: (lambda u, v: a(u, v) / b(u, v)))(node, rhs)
        return node

    def unary(self):
        if self.peek() == "-":
            self.take()
            inner = self.unary()
            return lambda u, v: -inner(u, v)
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.unary()  # right associative
            return lambda u, v: base(u, v) ** exp(u, v)
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            raise ExprError("unexpected end of expression")
        if tok == "(":
            node = self.expr()
            if self.take() != ")":
                raise ExprError("missing closing parenthesis")
            return node
        if re.fullmatch(r"\d+\.\d*|\.\d+|\d+", tok):
            val = float(tok)
            return lambda u, v: val
        if tok in _FUNCTIONS:
            if self.take() != "(":
                raise ExprError(f"{tok} needs parentheses")
            arg = self.expr()
            if self.take() != ")":
                raise ExprError("missing closing parenthesis")
            fn = _FUNCTIONS[tok]
            return lambda u, v: fn(arg(u, v))
        if tok in _CONSTANTS:
            val = _CONSTANTS[tok]
            return lambda u, v: val
        if tok == "u":
            return lambda u, v: u
        if tok == "v":
            return lambda u, v: v
        raise ExprError(f"unknown identifier {tok!r}")


def parse_expr(text):
    return _Expr(text).parse()


def eval_const(text) -> float:
    return parse_expr(text)(0.0, 0.0)


# -- config files --------------------------------------------------------------


def parse_config(path: str) -> dict:
    """Read the [surface]/[domain]/[grid] sections of a config file."""
    sections: dict[str, dict[str, str]] = {}
    current = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                current = line[1:-1].strip().lower()
                sections.setdefault(current, {})
                continue
            if "=" not in line or current is None:
                raise ExprError(f"{path}:{lineno}: expected key = value inside a section")
            key, value = line.split("=", 1)
            sections[current][key.strip().lower()] = value.strip()
    if "surface" not in sections:
        raise ExprError(f"{path}: missing [surface] section")
    return sections


def _config_domain(sections) -> Domain:
    dom = sections.get("domain", {})
    return Domain(
        eval_const(dom.get("umin", "0")), eval_const(dom.get("umax", "1")),
        eval_const(dom.get("vmin", "0")), eval_const(dom.get("vmax", "1")),
    )


def _vector_chart(sections, keys, domain) -> Chart:
    surf = sections["surface"]
    fns = []
    for key in keys:
        if key not in surf:
            raise ExprError(f"missing chart expression {key!r}")
        fns.append(parse_expr(surf[key]))
    fx, fy, fz = fns
    return Chart(lambda u, v: np.array([fx(u, v), fy(u, v), fz(u, v)]), domain=domain)


def _scalar_config_chart(sections, key, domain) -> Chart:
    surf = sections["surface"]
    if key not in surf:
        raise ExprError(f"missing chart expression {key!r}")
    fn = parse_expr(surf[key])
    return Chart(lambda u, v: fn(u, v), domain=domain)


def load_surface(sections):
    """Surface object of a parsed config; (kind, surface)."""
    kind = sections["surface"].get("kind")
    domain = _config_domain(sections)
    if kind == "point":
        return kind, PointSurface(_vector_chart(sections, ("fx", "fy", "fz"), domain))
    if kind == "polar":
        return kind, PolarSurface(
            _vector_chart(sections, ("sx", "sy", "sz"), domain),
            _scalar_config_chart(sections, "r", domain))
    if kind == "dual":
        return kind, DualSurface(
            _vector_chart(sections, ("nx", "ny", "nz"), domain),
            _scalar_config_chart(sections, "e", domain))
    if kind == "ruled":
        cx = [parse_expr(sections["surface"][k]) for k in ("cx", "cy", "cz")]
        ex = [parse_expr(sections["surface"][k]) for k in ("ex", "ey", "ez")]
        ruled = ruledpedal.RuledChart(
            lambda u: np.array([f(u, 0.0) for f in cx]),
            lambda u: np.array([f(u, 0.0) for f in ex]),
            domain=domain,
        )
        chart = Chart(lambda u, v: ruled.point(u, v), domain=domain)
        return kind, PointSurface(chart)
    if kind == "quadric":
        space = Space.POINT if sections["surface"].get("space", "dual") == "point" else Space.DUAL
        rows = [r.strip() for r in sections["surface"]["matrix"].split(";")]
        A = [[Fraction(x) for x in row.split()] for row in rows]
        return kind, quadricpedal.QuadricForm(space, A)
    raise ExprError(f"unknown surface kind {kind!r}")


# -- map subcommand --------------------------------------------------------------


def _parse_tuple(text, n):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != n:
        raise ExprError(f"expected {n} comma-separated numbers, got {len(parts)}")
    return np.array([float(Fraction(p.strip())) for p in parts])


def _format_tuple(values):
    return ",".join(f"{(x if x != 0 else 0.0):.12g}" for x in values)


def cmd_map(args) -> int:
    if args.op in ("alpha", "pi") or (args.op == "alpha-z"):
        if args.plane is None:
            raise ExprError(f"--op {args.op} needs --plane")
    if args.op in ("alpha-star", "sigma", "pi-star") and args.point is None:
        raise ExprError(f"--op {args.op} needs --point")
    try:
        if args.op == "alpha":
            out = projmaps.alpha_hom(HPlane(_parse_tuple(args.plane, 4)))
        elif args.op == "alpha-star":
            out = projmaps.alpha_star_hom(HPoint(_parse_tuple(args.point, 4)))
        elif args.op == "sigma":
            out = projmaps.inversion_sigma(HPoint(_parse_tuple(args.point, 4)))
        elif args.op == "pi":
            out = projmaps.polarity_pi(HPlane(_parse_tuple(args.plane, 4)))
        elif args.op == "pi-star":
            out = projmaps.polarity_pi_star(HPoint(_parse_tuple(args.point, 4)))
        elif args.op == "alpha-z":
            hp = HPlane(_parse_tuple(args.plane, 4)).to_affine()
            z = _parse_tuple(args.z, 3) if args.z else np.zeros(3)
            foot = projmaps.alpha_z(hp, z)
            print(_format_tuple(foot))
            return EXIT_OK
        else:  # pragma: no cover - argparse restricts choices
            raise ExprError(f"unknown op {args.op}")
    except GeometryError as exc:
        print(f"exceptional: {exc}", file=sys.stderr)
        return EXIT_EXCEPTIONAL
    if args.dehomogenize:
        if isinstance(out, HPoint):
            try:
                aff = out.dehomogenize()
            except GeometryError as exc:
                print(f"exceptional: {exc}", file=sys.stderr)
                return EXIT_EXCEPTIONAL
            print(_format_tuple(np.concatenate(([1.0], aff))))
            return EXIT_OK
        raise ExprError("--dehomogenize applies to point results")
    print(_format_tuple(out.canonical()))
    return EXIT_OK


# -- implicit subcommand -----------------------------------------------------------


def cmd_implicit(args) -> int:
    if args.surface:
        kind, surf = load_surface(parse_config(args.surface))
        if kind != "quadric":
            raise ExprError("only quadric configs provide an input polynomial")
        poly = surf.as_poly()
    else:
        if args.poly:
            text = args.poly
        elif args.infile:
            with open(args.infile, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        try:
            poly = parse_poly(text)
        except ValueError as exc:
            raise ExprError(str(exc))
    if args.direction == "pedal":
        if poly.space is not Space.DUAL:
            raise ExprError("pedal pullbacks start from a dual polynomial (u0..u3)")
        image = hompoly.pedal_pullback(poly)
    else:
        if poly.space is not Space.POINT:
            raise ExprError("inverse-pedal pullbacks start from a point polynomial (x0..x3)")
        image = hompoly.inverse_pedal_pullback(poly)
    if args.strip:
        stripped = strip_exceptional(image)
        print(hompoly.format_poly(stripped.reduced))
        print(f"r={stripped.r} k={stripped.k} n={poly.degree} deg={stripped.reduced.degree}")
    else:
        print(hompoly.format_poly(image))
    return EXIT_OK


# -- sample subcommand ---------------------------------------------------------------


def _gallery_surface(entry, construct, d):
    if construct == "self":
        if entry.primary == "point" and entry.point_chart is not None:
            return entry.point_chart
        if entry.primary == "polar" and entry.make_polar is not None:
            return entry.make_polar(0.0)
        if entry.primary == "dual" and entry.make_dual is not None:
            return surfkit.envelope_surface(entry.make_dual(0.0))
    elif construct == "pedal":
        dual = entry.make_dual(0.0) if entry.make_dual is not None else (
            surfkit.tangent_planes(entry.point_chart) if entry.point_chart is not None else None)
        if dual is not None:
            return surfkit.dual_to_point(dual)
    elif construct == "inverse-pedal":
        base = entry.point_chart or (entry.make_polar(0.0) if entry.make_polar else None)
        if base is not None:
            return surfkit.envelope_surface(surfkit.point_to_dual(base))
    elif construct == "offset":
        dual = entry.make_dual(d) if entry.make_dual is not None else None
        if dual is not None:
            return surfkit.envelope_surface(dual)
    elif construct == "conchoid":
        if entry.make_polar is not None:
            return entry.make_polar(d)
    raise ExprError(f"gallery entry {entry.name!r} does not support construct {construct!r}")


def _config_surface(kind, surface, construct, d):
    if kind == "quadric":
        raise ExprError("quadric configs feed the implicit command, not sample")
    if construct == "self":
        if isinstance(surface, DualSurface):
            return surfkit.envelope_surface(surface)
        return surface
    points = surfkit.envelope_surface(surface) if isinstance(surface, DualSurface) else surface
    if construct == "conchoid":
        if isinstance(points, PolarSurface):
            return surfkit.conchoid_map(points, d)
        chart = points.f if isinstance(points, PointSurface) else None

        def shifted(u, v):
            p = np.asarray(chart(u, v), float)
            nrm = np.linalg.norm(p)
            return p * (1.0 + d / nrm)

        return PointSurface(Chart(shifted, domain=points.domain))
    if construct == "inverse-pedal":
        return surfkit.envelope_surface(surfkit.point_to_dual(points))
    planes = surface if isinstance(surface, DualSurface) else surfkit.tangent_planes(
        points.to_point_surface() if isinstance(points, PolarSurface) else points)
    if construct == "pedal":
        return surfkit.dual_to_point(planes)
    if construct == "offset":
        def offset_point(u, v):
            n = np.asarray(planes.n(u, v), float)
            nn = np.linalg.norm(n)
            base = surfkit.envelope_solve(planes, u, v)
            return base + d * n / nn

        return PointSurface(Chart(offset_point, domain=planes.domain))
    raise ExprError(f"unknown construct {construct!r}")


def cmd_sample(args) -> int:
    m = re.fullmatch(r"(\d+)x(\d+)", args.grid)
    if not m:
        raise ExprError("--grid must look like 60x60")
    nu, nv = int(m.group(1)), int(m.group(2))
    if nu < 2 or nv < 2:
        raise ExprError("grid needs at least 2 samples per direction")
    construct = args.construct
    d = 0.0
    if ":" in construct:
        construct, dtxt = construct.split(":", 1)
        d = float(Fraction(dtxt))
    if construct not in ("self", "pedal", "inverse-pedal", "offset", "conchoid"):
        raise ExprError(f"unknown construct {args.construct!r}")
    if args.surface in gallery.list_entries():
        surface = _gallery_surface(gallery.get_entry(args.surface), construct, d)
    elif os.path.exists(args.surface):
        kind, surf = load_surface(parse_config(args.surface))
        surface = _config_surface(kind, surf, construct, d)
    else:
        raise ExprError(f"unknown surface {args.surface!r} (gallery name or config path)")
    try:
        mesh = surfkit.sample_mesh(surface, nu, nv)
    except EmptyMesh as exc:
        print(f"empty mesh: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    surfkit.write_obj(mesh, args.out)
    print(f"vertices={len(mesh.vertices)} faces={len(mesh.faces)} out={args.out}")
    return EXIT_OK


# -- verify subcommand -----------------------------------------------------------------


def _random_hplanes(rng, count):
    out = []
    while len(out) < count:
        v = rng.uniform(-1.0, 1.0, size=4)
        if np.max(np.abs(v)) < 1e-3:
            continue
        w = projmaps.canonical(v)
        # stay clear of the exceptional sets of all maps under test
        if abs(w[0]) < 1e-6 or np.linalg.norm(w[1:]) < 1e-6:
            continue
        out.append(HPlane(w))
    return out


def _random_hpoints(rng, count):
    return [HPoint(p.coords) for p in _random_hplanes(rng, count)]


def _check_involutions(rng, samples):
    planes = _random_hplanes(rng, samples)
    points = _random_hpoints(rng, samples)
    worst = {"alpha_roundtrip": 0.0, "alpha_star_roundtrip": 0.0,
             "sigma_involution": 0.0, "pi_identity": 0.0,
             "alpha_factorization": 0.0, "alpha_star_factorization": 0.0}

    def dev(a, b):
        return float(np.max(np.abs(projmaps.canonical(a.coords) - projmaps.canonical(b.coords))))

    for U in planes:
        X = projmaps.alpha_hom(U)
        worst["alpha_roundtrip"] = max(worst["alpha_roundtrip"],
                                       dev(projmaps.alpha_star_hom(X), U))
        worst["alpha_factorization"] = max(
            worst["alpha_factorization"],
            dev(projmaps.inversion_sigma(projmaps.polarity_pi(U)), X))
        worst["pi_identity"] = max(worst["pi_identity"],
                                   dev(projmaps.polarity_pi_star(projmaps.polarity_pi(U)), U))
    for X in points:
        U = projmaps.alpha_star_hom(X)
        worst["alpha_star_roundtrip"] = max(worst["alpha_star_roundtrip"],
                                            dev(projmaps.alpha_hom(U), X))
        worst["alpha_star_factorization"] = max(
            worst["alpha_star_factorization"],
            dev(projmaps.polarity_pi_star(projmaps.inversion_sigma(X)), U))
        worst["sigma_involution"] = max(
            worst["sigma_involution"],
            dev(projmaps.inversion_sigma(projmaps.inversion_sigma(X)), X))
    return [(name, {"max_dev": val}, val < 1e-9) for name, val in worst.items()]


DIAGRAM_FAMILIES = ("plane-conchoid", "sphere-offset", "paraboloid-offset")
DIAGRAM_DISTANCES = (-1.0, -0.3, 0.0, 0.5, 2.0)


def _check_diagrams(rng, samples):
    results = []
    for name in DIAGRAM_FAMILIES:
        entry = gallery.get_entry(name)
        n, e = entry.ne_charts()
        worst = 0.0
        for d in DIAGRAM_DISTANCES:
            worst = max(worst, surfkit.commutation_check(n, e, d, grid=(50, 50)))
        results.append((f"diagram_{name}", {"max_dev": worst}, worst < 1e-9))
    return results


def _check_gallery(rng, samples):
    results = []
    for name in gallery.list_entries():
        entry = gallery.get_entry(name)
        worst = 0.0
        for case in entry.residual_cases:
            rep = gallery.residual_report(case.surface, case.poly)
            worst = max(worst, rep.max)
        results.append((f"residual_{name}", {"max_residual": worst}, worst < 1e-8))
        if entry.pullback_pair is not None:
            source, image = entry.pullback_pair
            fwd = (hompoly.pedal_pullback if source.space is Space.DUAL
                   else hompoly.inverse_pedal_pullback)
            stripped = strip_exceptional(fwd(source))
            ok = stripped.reduced.equals_up_to_scale(image)
            results.append((f"pullback_{name}", {"exact": float(ok)}, ok))
    return results


def _check_degrees(rng, samples):
    results = []
    for name in gallery.list_entries():
        entry = gallery.get_entry(name)
        if entry.expected is None:
            continue
        got = degree_bookkeeping(entry.expected_poly)
        ok = got == entry.expected
        results.append((f"degrees_{name}",
                        {"n": got[0], "r": got[1], "k": got[2], "deg": got[3]}, ok))
    return results


def _check_extras(rng, samples):
    results = []
    # envelope reconstruction of the focal paraboloid
    entry = gallery.get_entry("paraboloid-offset")
    rep = gallery.residual_report(
        surfkit.envelope_surface(entry.make_dual(0.0)), entry.point_poly, 40, 40)
    results.append(("envelope_paraboloid", {"max_residual": rep.max}, rep.max < 1e-8))
    # inverse pedal of the quadratic cylinder against the closed form
    qc = gallery.get_entry("quadratic-cylinder")
    ruled = qc.extras["ruled"]
    closed = qc.extras["closed_form"]
    worst = 0.0
    for u in np.linspace(0.0, 2.0 * math.pi, 40):
        for v in np.linspace(-2.0, 2.0, 40):
            got = ruledpedal.inverse_pedal_ruled(ruled, u, v)
            worst = max(worst, float(np.max(np.abs(got - closed(u, v)))))
    results.append(("envelope_quadratic_cylinder", {"max_dev": worst}, worst < 1e-7))
    # exact degeneracies
    focal = quadricpedal.focal_degeneracy_check(1, 1, Fraction(-1, 4))
    ok_focal = focal is not None
    if ok_focal:
        q, lin = focal
        expect = parse_poly("4*x3 + x0")
        ok_focal = lin.equals_up_to_scale(expect)
    ok_focal = ok_focal and quadricpedal.focal_degeneracy_check(1, 1, 1) is None
    results.append(("focal_factorization", {"exact": float(ok_focal)}, ok_focal))
    ok_dupin = quadricpedal.is_parabola_dupin(1, Fraction(-1, 2)) and \
        not quadricpedal.is_parabola_dupin(1, 1)
    results.append(("dupin_condition", {"exact": float(ok_dupin)}, ok_dupin))
    kinds = (
        quadricpedal.sphere_inverse_pedal_affine(0, 1).kind.value,
        quadricpedal.sphere_inverse_pedal_affine(2, 1).kind.value,
        quadricpedal.sphere_inverse_pedal_affine(1, 1).kind.value,
    )
    ok_kinds = kinds == ("ellipsoid", "hyperboloid-two-sheets", "degenerate-point")
    results.append(("sphere_classification", {"exact": float(ok_kinds)}, ok_kinds))
    # pentaspherical lift round trip
    cyclide = quadricpedal.pedal_of_quadric(quadricpedal.sphere_dual_quadric(2, 1))
    form = quadricpedal.pentaspherical_lift(cyclide)
    worst = 0.0
    for _ in range(1000):
        x = rng.uniform(-2.0, 2.0, size=3)
        y = quadricpedal.pentaspherical_point(x)
        lhs = float(form.eval(y))
        rhs = float(cyclide.eval(np.concatenate(([1.0], x))))
        scale = max(1.0, abs(rhs))
        worst = max(worst, abs(lhs - rhs) / scale)
    results.append(("pentaspherical_lift", {"max_dev": worst}, worst < 1e-9))
    # rational-norm identities for ruled offsets
    plu = ruledpedal.RuledChart(
        lambda u: np.array([0.0, 0.0, math.sin(2 * u)]),
        lambda u: np.array([math.cos(u), math.sin(u), 0.0]),
        dc=lambda u: np.array([0.0, 0.0, 2 * math.cos(2 * u)]),
        de=lambda u: np.array([-math.sin(u), math.cos(u), 0.0]),
        domain=Domain(0.1, 1.2, 0.15, 0.85),
    )
    F = ruledpedal.rational_offset_ruled(plu, 0.5)
    worst = 0.0
    for u in np.linspace(0.12, 1.18, 25):
        for t in np.linspace(0.2, 0.8, 25):
            y0, y1, _ = F.conic_coords(u, t)
            n = F.normal(u, t)
            worst = max(worst, abs(float(np.linalg.norm(n)) * y1 - y0))
    results.append(("ratnorm_ruled", {"max_dev": worst}, worst < 1e-9))
    worst = 0.0
    for u in np.linspace(0.0, 2.0 * math.pi, 30):
        for t in np.linspace(0.2, 1.4, 30):
            r = 2.0 * math.cos(2 * u) * math.cos(t) / math.sin(t)
            w = 2.0 * math.cos(2 * u) / math.sin(t)
            worst = max(worst, abs(w * w - (4.0 * math.cos(2 * u) ** 2 + r * r)))
    results.append(("ratnorm_pluecker", {"max_dev": worst}, worst < 1e-10))
    # bisector of O and the plane z=1
    plane_chart = PointSurface(Chart(
        lambda u, v: np.array([u, v, 1.0]),
        lambda u, v: np.array([1.0, 0.0, 0.0]),
        lambda u, v: np.array([0.0, 1.0, 0.0]),
        Domain(-2.0, 2.0, -2.0, 2.0),
    ))
    bis = quadricpedal.bisector_from_inverse_pedal(plane_chart)
    worst = 0.0
    for u in np.linspace(-2.0, 2.0, 40):
        for v in np.linspace(-2.0, 2.0, 40):
            p = bis.point(u, v)
            worst = max(worst, abs(float(np.linalg.norm(p)) - abs(p[2] - 1.0)))
    results.append(("bisector_plane", {"max_dev": worst}, worst < 1e-7))
    return results


_SUITES = {
    "involutions": (_check_involutions,),
    "diagrams": (_check_diagrams,),
    "gallery": (_check_gallery,),
    "degrees": (_check_degrees,),
}


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else int(os.environ.get("PEDALIS_SEED", "0"))
    samples = args.samples
    rng = np.random.default_rng(seed)
    if args.suite == "all":
        checks = [fn for suite in _SUITES.values() for fn in suite] + [_check_extras]
    else:
        checks = list(_SUITES[args.suite])
    all_ok = True
    t0 = time.perf_counter()
    for fn in checks:
        for name, metrics, ok in fn(rng, samples):
            for key, val in metrics.items():
                print(f"{name}.{key}={val:.6g}" if isinstance(val, float)
                      else f"{name}.{key}={val}")
            print(f"{name}.pass={'true' if ok else 'false'}")
            status = "ok" if ok else "FAIL"
            print(f"  [{status}] {name}", file=sys.stderr)
            all_ok = all_ok and ok
    elapsed = time.perf_counter() - t0
    print(f"suite={args.suite} seed={seed} pass={'true' if all_ok else 'false'}")
    print(f"suite {args.suite}: {'pass' if all_ok else 'FAIL'} in {elapsed:.2f}s", file=sys.stderr)
    return EXIT_OK if all_ok else EXIT_USAGE


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pedalis",
                     description="offset/conchoid correspondence geometry kernel")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_map = sub.add_parser("map", help="apply a projective map to a tuple")
    p_map.add_argument("--op", required=True,
                       choices=["alpha", "alpha-star", "sigma", "pi", "pi-star", "alpha-z"])
    p_map.add_argument("--plane", help="homogeneous plane tuple u0,u1,u2,u3")
    p_map.add_argument("--point", help="homogeneous point tuple x0,x1,x2,x3")
    p_map.add_argument("--z", help="reference point for alpha-z as x,y,z")
    p_map.add_argument("--dehomogenize", action="store_true",
                       help="print point results in the affine chart x0=1")
    p_map.set_defaults(func=cmd_map)

    p_imp = sub.add_parser("implicit", help="pedal / inverse-pedal pullback")
    p_imp.add_argument("--direction", required=True, choices=["pedal", "inverse-pedal"])
    p_imp.add_argument("--poly", help="polynomial text (x0..x3 or u0..u3)")
    p_imp.add_argument("--in", dest="infile", help="read the polynomial from a file")
    p_imp.add_argument("--surface", help="quadric config file as polynomial source")
    p_imp.add_argument("--strip", action="store_true",
                       help="strip exceptional factors and report r,k,n,deg")
    p_imp.set_defaults(func=cmd_implicit)

    p_smp = sub.add_parser("sample", help="mesh a surface to Wavefront OBJ")
    p_smp.add_argument("--surface", required=True, help="gallery name or config file")
    p_smp.add_argument("--construct", default="self",
                       help="self | pedal | inverse-pedal | offset:d | conchoid:d")
    p_smp.add_argument("--grid", default="40x40", help="NUxNV sample counts")
    p_smp.add_argument("--out", required=True, help="output OBJ path")
    p_smp.set_defaults(func=cmd_sample)

    p_ver = sub.add_parser("verify", help="run verification suites")
    p_ver.add_argument("--suite", default="all",
                       choices=["involutions", "diagrams", "gallery", "degrees", "all"])
    p_ver.add_argument("--seed", type=int, default=None)
    p_ver.add_argument("--samples", type=int, default=10000)
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ExprError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GeometryError as exc:
        print(f"exceptional: {exc}", file=sys.stderr)
        return EXIT_EXCEPTIONAL


if __name__ == "__main__":
    sys.exit(main())
