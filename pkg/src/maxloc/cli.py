"""``maxloc`` command line: certified maxima, FEM solves, affine sweeps, plots."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import List, Optional

from . import certify, fem
from .base import DomainSpec, MaxReport
from .errors import MaxlocError, ShiftTooLargeError, UnsupportedProblemError
from .plot import closed_form_svg, field_svg

DOMAIN_NAMES = {
    "half-disk": "half_disk",
    "right-isosceles": "right_isosceles",
    "unit-disk": "unit_disk",
}
CLOSED_FORM_DOMAINS = ("half_disk", "right_isosceles")
DEFAULT_PLOT_LEVEL = 5


@dataclass
class RunConfig:
    command: str
    domain: DomainSpec
    problem: str = "torsion"
    a: float = 1.0
    b: Optional[float] = None
    b_frac: Optional[float] = None
    b_values: List[float] = field(default_factory=list)
    refinement_level: Optional[int] = None
    bracket_width: float = certify.DEFAULT_WIDTH
    output_path: Optional[str] = None
    format: str = "json"

    def __post_init__(self):
        if self.command == "sweep" and not self.b_values:
            raise ValueError("sweep needs at least one b value")
        if self.command != "sweep" and self.b_values:
            raise ValueError("b_values only apply to sweep")
        if self.command in ("fem", "sweep") and self.refinement_level is None:
            raise ValueError(f"{self.command} needs a refinement level")


def report_json(rep: MaxReport, cfg: RunConfig, **extra) -> dict:
    out = {
        "problem": cfg.problem,
        "domain": cfg.domain.kind,
        "x_lo": rep.location.lo,
        "x_hi": rep.location.hi,
        "x_mid": rep.location_point.x,
        "y": rep.location_point.y,
        "value": rep.value,
        "certified": rep.certified,
        "evaluations": rep.evaluations,
        "method": rep.method,
    }
    if rep.mapped_location is not None:
        out["mapped_x_lo"] = rep.mapped_location.lo
        out["mapped_x_hi"] = rep.mapped_location.hi
    out.update(extra)
    return out


def _dump_json(obj) -> str:
    # float repr is the shortest string that parses back to the same double
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False) + "\n"


def _emit(text: str, path: Optional[str], stdout) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def cmd_maxima(cfg: RunConfig, stdout=sys.stdout) -> dict:
    if cfg.domain.kind not in CLOSED_FORM_DOMAINS or cfg.problem not in ("torsion", "groundstate"):
        raise UnsupportedProblemError(
            f"maxima supports torsion/groundstate on half-disk or right-isosceles, "
            f"not {cfg.problem} on {cfg.domain.kind}")
    rep = certify.certified_max(cfg.domain.kind, cfg.problem, cfg.bracket_width)
    data = report_json(rep, cfg)
    print(f"{cfg.domain.kind} {cfg.problem}: x = {rep.location_point.x:.5f}"
          f"{' (certified)' if rep.certified else ''}", file=stdout)
    if cfg.output_path:
        _emit(_dump_json(data), cfg.output_path, stdout)
    return data


def _solve(cfg: RunConfig):
    mesh = fem.mesh_polygon(cfg.domain, cfg.refinement_level)
    sys_ = fem.assemble(mesh)
    extra = {"mesh_level": cfg.refinement_level, "n_triangles": mesh.n_triangles}
    if cfg.problem == "torsion":
        f = fem.solve_torsion(sys_)
    elif cfg.problem == "groundstate":
        f, lam = fem.solve_groundstate(sys_)
        extra["lambda1"] = lam
    elif cfg.problem == "affine":
        lam = fem.first_eigenvalue(sys_)
        b = cfg.b if cfg.b is not None else (cfg.b_frac or 0.0) * lam
        f = fem.solve_affine(sys_, fem.AffineProblem(cfg.a, b))
        extra.update(lambda1=lam, a=cfg.a, b=b, b_over_lambda1=b / lam)
    else:
        raise UnsupportedProblemError(f"unknown problem {cfg.problem!r}")
    return f, extra


def cmd_fem(cfg: RunConfig, stdout=sys.stdout) -> dict:
    f, extra = _solve(cfg)
    rep = fem.locate_max(f)
    data = report_json(rep, cfg, **extra)
    data["vertex"] = rep.extra["vertex"]
    _emit(_dump_json(data), cfg.output_path, stdout)
    return data


SWEEP_COLUMNS = ("b", "b_over_lambda1", "x", "y", "value", "vertex", "error")


def cmd_sweep(cfg: RunConfig, stdout=sys.stdout) -> list:
    mesh = fem.mesh_polygon(cfg.domain, cfg.refinement_level)
    sys_ = fem.assemble(mesh)
    lam = fem.first_eigenvalue(sys_)
    rows = []
    for frac in cfg.b_values:
        b = frac * lam
        row = dict.fromkeys(SWEEP_COLUMNS, "")
        row.update(b=b, b_over_lambda1=frac)
        try:
            rep = fem.locate_max(fem.solve_affine(sys_, fem.AffineProblem(cfg.a, b)))
            row.update(x=rep.location_point.x, y=rep.location_point.y, value=rep.value,
                       vertex=rep.extra["vertex"])
        except ShiftTooLargeError as exc:
            row["error"] = str(exc)
        rows.append(row)
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for r in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in (r[c] for c in SWEEP_COLUMNS)])
        text = buf.getvalue()
    else:
        text = _dump_json({"domain": cfg.domain.kind, "a": cfg.a, "lambda1": lam,
                           "mesh_level": cfg.refinement_level,
                           "rows": [{k: (None if v == "" else v) for k, v in r.items()} for r in rows]})
    _emit(text, cfg.output_path, stdout)
    return rows


def cmd_plot(cfg: RunConfig, stdout=sys.stdout) -> str:
    title = f"{cfg.domain.kind} {cfg.problem}"
    if cfg.refinement_level is None and cfg.domain.kind in CLOSED_FORM_DOMAINS \
            and cfg.problem in ("torsion", "groundstate"):
        rep = certify.certified_max(cfg.domain.kind, cfg.problem, cfg.bracket_width)
        svg = closed_form_svg(cfg.domain, cfg.problem, rep.location_point)
    else:
        if cfg.refinement_level is None:
            cfg.refinement_level = DEFAULT_PLOT_LEVEL
        f, _ = _solve(cfg)
        rep = fem.locate_max(f)
        svg = field_svg(cfg.domain, f, rep.location_point, title=title)
    _emit(svg, cfg.output_path, stdout)
    return svg


def _float_list(text: str) -> List[float]:
    return [float(s) for s in text.split(",") if s.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxloc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def domain_args(sp, polygon=True):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--domain", choices=sorted(DOMAIN_NAMES))
        if polygon:
            g.add_argument("--polygon", metavar="FILE",
                           help="vertex file: one 'x y' per line, counterclockwise, '#' comments")

    m = sub.add_parser("maxima", help="certified maximum from the closed forms")
    m.add_argument("--domain", required=True, choices=["half-disk", "right-isosceles"])
    m.add_argument("--problem", required=True, choices=["torsion", "groundstate"])
    m.add_argument("--width", type=float, default=certify.DEFAULT_WIDTH)
    m.add_argument("--out")

    f = sub.add_parser("fem", help="finite-element solve and heuristic maximum")
    domain_args(f)
    f.add_argument("--problem", required=True, choices=["torsion", "groundstate", "affine"])
    f.add_argument("--a", type=float, default=1.0)
    bg = f.add_mutually_exclusive_group()
    bg.add_argument("--b", type=float)
    bg.add_argument("--b-frac", type=float, help="b as a fraction of the discrete lambda1")
    f.add_argument("--level", type=int, required=True)
    f.add_argument("--out")

    s = sub.add_parser("sweep", help="maximum of -Δu = a + b u over b = frac * lambda1")
    domain_args(s)
    s.add_argument("--a", type=float, default=1.0)
    s.add_argument("--b-fracs", type=_float_list, required=True)
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--format", choices=["csv", "json"])

    pl = sub.add_parser("plot", help="SVG level curves with the maximum point")
    domain_args(pl)
    pl.add_argument("--problem", required=True, choices=["torsion", "groundstate", "affine"])
    pl.add_argument("--a", type=float, default=1.0)
    pl.add_argument("--b-frac", type=float)
    pl.add_argument("--level", type=int)
    pl.add_argument("--out")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if getattr(ns, "polygon", None):
        domain = fem.read_polygon_file(ns.polygon)
    else:
        domain = DomainSpec(DOMAIN_NAMES[ns.domain])
    fmt = "json"
    if ns.command == "plot":
        fmt = "svg"
    elif ns.command == "sweep":
        fmt = ns.format or ("csv" if (ns.out or "").lower().endswith(".csv") else "json")
    return RunConfig(
        command=ns.command,
        domain=domain,
        problem=getattr(ns, "problem", "affine"),
        a=getattr(ns, "a", 1.0),
        b=getattr(ns, "b", None),
        b_frac=getattr(ns, "b_frac", None),
        b_values=getattr(ns, "b_fracs", None) or [],
        refinement_level=getattr(ns, "level", None),
        bracket_width=getattr(ns, "width", certify.DEFAULT_WIDTH),
        output_path=ns.out,
        format=fmt,
    )


COMMANDS = {"maxima": cmd_maxima, "fem": cmd_fem, "sweep": cmd_sweep, "plot": cmd_plot}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        COMMANDS[cfg.command](cfg, stdout=stdout)
    except (MaxlocError, ValueError, OSError) as exc:
        print(f"maxloc: error: {exc}", file=stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
