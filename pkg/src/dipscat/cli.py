"""Command-line interface: validated scenario configs to delimited output.

    dipscat run <config> [--out DIR] [--svg] [--tol REL_TOL]
    dipscat validate <config>

Exit codes: 0 success (individually skipped grid rows still succeed),
1 configuration or usage error, 2 numerical failure (nonconvergent
quadrature or singular linear system).

Configs are INI files. [scenario] mode selects one of single_atom_sweep,
pair_interaction_sweep, pair_superradiance_sweep, intensity_trace or
transmission; unknown sections or keys are rejected rather than ignored.
All dipoles are oriented along x (in-plane, parallel), positions sit on
the z axis, and [sweep] start/stop/step spans the mode's abscissa: atom
position z for single_atom_sweep, second-atom position z2 for the pair
sweeps, time for intensity_trace, plane strength d_eff for transmission.
If <config> is a bare name that does not exist as a file it is looked up
among the bundled scenarios.

Output CSV starts with the parsed config echoed as comment lines, then a
header row and one row per grid point, floats at 12 significant digits;
bytes are stable across repeated runs. Grid points with singular geometry
(atom on the plane, coincident atoms) are skipped with a warning on
stderr. --svg (or an svg key in [output]) additionally renders the
columns to a figure next to the CSV.
"""

import argparse
import configparser
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import Dipole, PlaneMedium
from .coupling import gamma_and_delta, j_free, j_plane
from .multiatom import G_DEFAULT
from .plane_green import angle_averaged_s_transmission
from .quad import QuadSpec, QuadratureError
from .superradiance import intensity_trace, pair_solution

_ORIENT = np.array([1.0, 0.0, 0.0])

MODES = ("single_atom_sweep", "pair_interaction_sweep",
         "pair_superradiance_sweep", "intensity_trace", "transmission")

# section -> (required keys, optional keys), specialized per mode below
_KEYS = {
    "scenario": ({"mode"}, set()),
    "medium": ({"kind"}, {"z_plane", "d_eff"}),
    "atoms": (set(), set()),
    "sweep": ({"start", "stop", "step"}, set()),
    "state": (set(), {"p", "phi"}),
    "detector": ({"z"}, set()),
    "output": ({"csv"}, {"svg"}),
    "quad": (set(), {"rel_tol", "abs_tol", "max_subdivisions"}),
}

# mode -> {section: required?}; scenario/output always required, quad optional
_MODE_SECTIONS = {
    "single_atom_sweep": {"medium": True, "sweep": True, "atoms": False},
    "pair_interaction_sweep": {"medium": True, "sweep": True, "atoms": True},
    "pair_superradiance_sweep": {"medium": True, "sweep": True, "atoms": True},
    "intensity_trace": {"medium": True, "sweep": True, "atoms": True,
                        "state": False, "detector": True},
    "transmission": {"sweep": True},
}

_ATOM_KEYS = {
    "single_atom_sweep": (set(), {"omega", "mu_rel"}),
    "pair_interaction_sweep": ({"z1"}, {"omega", "mu_rel"}),
    "pair_superradiance_sweep": ({"z1"}, {"omega", "mu_rel", "g"}),
    "intensity_trace": ({"z1"}, {"z2", "omega", "mu_rel", "g"}),
}

_COLUMNS = {
    "single_atom_sweep": "z_lambda,gamma_over_gamma0,delta_over_gamma0",
    "pair_interaction_sweep": "z2_lambda,j_over_jfree_abs,re_j_gamma0,im_j_gamma0",
    "pair_superradiance_sweep":
        "z2_lambda,gamma_plus_gamma0,gamma_minus_gamma0,c2_over_c1plus_abs",
    "intensity_trace": "t_gamma0,intensity_rel_peak",
    "transmission": "d_eff_lambda,s_transmission",
}


class ConfigError(ValueError):
    """Invalid or inconsistent scenario configuration."""


@dataclass
class ScenarioConfig:
    mode: str
    plane: PlaneMedium | None = None
    omega: float = 1.0
    mu_rel: float = 1.0
    g: float = G_DEFAULT
    z1: float = 0.0
    z2: float | None = None
    sweep: tuple = (0.0, 0.0, 1.0)
    p: float | None = None
    phi: float = 0.0
    detector_z: float = 0.0
    csv_name: str = "out.csv"
    svg_name: str | None = None
    quad: dict = field(default_factory=dict)
    echo: list = field(default_factory=list)


@dataclass
class RunResult:
    csv_path: Path
    svg_path: Path | None
    n_rows: int
    skipped: list


def scenarios_dir():
    """Directory holding the bundled scenario configs."""
    return Path(__file__).resolve().parent / "scenarios"


def _parse_float(section, key, raw):
    try:
        v = float(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key} = {raw!r} is not a number") from None
    if not np.isfinite(v):
        raise ConfigError(f"[{section}] {key} must be finite")
    return v


def load_config(path):
    """Parse and fully validate a scenario config; raises ConfigError."""
    p = Path(path)
    if not p.is_file():
        candidate = scenarios_dir() / str(path)
        if "/" not in str(path) and candidate.is_file():
            p = candidate
        else:
            raise ConfigError(f"config file not found: {path}")
    cp = configparser.ConfigParser(interpolation=None,
                                   inline_comment_prefixes=("#", ";"))
    try:
        with open(p, encoding="utf-8") as fh:
            cp.read_file(fh)
    except (configparser.Error, OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"cannot parse {p}: {e}") from None

    if not cp.has_section("scenario"):
        raise ConfigError("missing [scenario] section")
    if not cp.has_option("scenario", "mode"):
        raise ConfigError("missing mode in [scenario]")
    mode = cp.get("scenario", "mode").strip()
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; choose one of {', '.join(MODES)}")

    allowed_sections = {"scenario", "output", "quad"} | set(_MODE_SECTIONS[mode])
    for sect in cp.sections():
        if sect not in allowed_sections:
            raise ConfigError(f"section [{sect}] is not used by mode {mode}")
    for sect, required in _MODE_SECTIONS[mode].items():
        if required and not cp.has_section(sect):
            raise ConfigError(f"mode {mode} requires section [{sect}]")
    if not cp.has_section("output"):
        raise ConfigError("missing [output] section")

    for sect in cp.sections():
        req, opt = _KEYS[sect]
        if sect == "atoms":
            req, opt = _ATOM_KEYS[mode]
        keys = set(cp.options(sect))
        for k in keys - (req | opt):
            raise ConfigError(f"unknown key {k!r} in [{sect}]")
        for k in req - keys:
            raise ConfigError(f"missing key {k!r} in [{sect}]")

    cfg = ScenarioConfig(mode=mode)
    cfg.echo = [(s, k, v) for s in cp.sections() for k, v in cp.items(s)]

    if cp.has_section("medium"):
        kind = cp.get("medium", "kind").strip()
        if kind == "vacuum":
            if cp.has_option("medium", "z_plane") or cp.has_option("medium", "d_eff"):
                raise ConfigError("vacuum medium takes no z_plane/d_eff")
        elif kind == "plane":
            for k in ("z_plane", "d_eff"):
                if not cp.has_option("medium", k):
                    raise ConfigError(f"plane medium requires {k}")
            try:
                cfg.plane = PlaneMedium(
                    z_plane=_parse_float("medium", "z_plane",
                                         cp.get("medium", "z_plane")),
                    d_eff=_parse_float("medium", "d_eff", cp.get("medium", "d_eff")))
            except ValueError as e:
                raise ConfigError(str(e)) from None
        else:
            raise ConfigError(f"unknown medium kind {kind!r} (vacuum or plane)")

    if cp.has_section("atoms"):
        for key, attr in (("z1", "z1"), ("z2", "z2"), ("omega", "omega"),
                          ("mu_rel", "mu_rel"), ("g", "g")):
            if cp.has_option("atoms", key):
                setattr(cfg, attr, _parse_float("atoms", key, cp.get("atoms", key)))
        if cfg.omega <= 0.0:
            raise ConfigError("[atoms] omega must be positive")
        if cfg.mu_rel <= 0.0:
            raise ConfigError("[atoms] mu_rel must be positive")
        if cfg.g <= 0.0:
            raise ConfigError("[atoms] g must be positive")

    start = _parse_float("sweep", "start", cp.get("sweep", "start"))
    stop = _parse_float("sweep", "stop", cp.get("sweep", "stop"))
    step = _parse_float("sweep", "step", cp.get("sweep", "step"))
    if step <= 0.0:
        raise ConfigError("[sweep] step must be positive")
    if stop < start - 1e-12:
        raise ConfigError("[sweep] stop must not precede start")
    n = int(round((stop - start) / step)) + 1
    if n > 2_000_000:
        raise ConfigError("[sweep] grid too large")
    cfg.sweep = (start, stop, step)

    if cp.has_section("state"):
        if cp.has_option("state", "p"):
            cfg.p = _parse_float("state", "p", cp.get("state", "p"))
            if not 0.0 <= cfg.p <= 1.0:
                raise ConfigError("[state] p must lie in [0, 1]")
        if cp.has_option("state", "phi"):
            cfg.phi = _parse_float("state", "phi", cp.get("state", "phi"))

    if cp.has_section("detector"):
        cfg.detector_z = _parse_float("detector", "z", cp.get("detector", "z"))

    cfg.csv_name = cp.get("output", "csv").strip()
    if not cfg.csv_name:
        raise ConfigError("[output] csv must name a file")
    if cp.has_option("output", "svg"):
        cfg.svg_name = cp.get("output", "svg").strip()

    if cp.has_section("quad"):
        for k in ("rel_tol", "abs_tol"):
            if cp.has_option("quad", k):
                v = _parse_float("quad", k, cp.get("quad", k))
                if v <= 0.0:
                    raise ConfigError(f"[quad] {k} must be positive")
                cfg.quad[k] = v
        if cp.has_option("quad", "max_subdivisions"):
            raw = cp.get("quad", "max_subdivisions")
            try:
                ms = int(raw)
            except ValueError:
                raise ConfigError("[quad] max_subdivisions must be an integer") \
                    from None
            if ms < 1:
                raise ConfigError("[quad] max_subdivisions must be >= 1")
            cfg.quad["max_subdivisions"] = ms

    if mode == "transmission" and cfg.sweep[0] <= 0.0:
        raise ConfigError("transmission sweep requires d_eff > 0")
    if mode == "intensity_trace":
        zs = [cfg.z1] + ([cfg.z2] if cfg.z2 is not None else [])
        if min(abs(cfg.detector_z - z) for z in zs) < 1e-9:
            raise ConfigError("detector coincides with an atom")
        if cfg.z2 is not None and abs(cfg.z2 - cfg.z1) < 1e-12:
            raise ConfigError("atoms must sit at distinct positions")
    return cfg


def _grid(sweep):
    start, stop, step = sweep
    n = int(round((stop - start) / step)) + 1
    return [start + i * step for i in range(n)]


def _atom(cfg, z):
    return Dipole(position=np.array([0.0, 0.0, z]), orientation=_ORIENT,
                  omega=cfg.omega, mu_rel=cfg.mu_rel)


def _sweep_rows(cfg, spec, xname, fn):
    rows, skipped = [], []
    for x in _grid(cfg.sweep):
        try:
            rows.append((x,) + tuple(fn(x)))
        except ValueError as e:
            skipped.append((x, str(e)))
            print(f"warning: skipping {xname} = {x:.6g}: {e}", file=sys.stderr)
    return rows, skipped


def _run_mode(cfg, spec):
    if cfg.mode == "single_atom_sweep":
        def fn(z):
            return gamma_and_delta(_atom(cfg, z), cfg.omega, cfg.plane, spec)
        return _sweep_rows(cfg, spec, "z", fn)

    if cfg.mode == "pair_interaction_sweep":
        d1 = _atom(cfg, cfg.z1)

        def fn(z2):
            d2 = _atom(cfg, z2)
            jf = j_free(d1, d2, cfg.omega)
            if cfg.plane is None:
                j = jf
            else:
                j = j_plane(d1, d2, cfg.omega, cfg.plane, spec)
            return (abs(j / jf), j.real, j.imag)
        return _sweep_rows(cfg, spec, "z2", fn)

    if cfg.mode == "pair_superradiance_sweep":
        d1 = _atom(cfg, cfg.z1)
        seed = [None]   # branch continuity along the sweep

        def fn(z2):
            sol = pair_solution(d1, _atom(cfg, z2), cfg.plane, cfg.g, spec,
                                branch_seed=seed[0])
            seed[0] = sol.wt_plus
            return (sol.gamma_plus, sol.gamma_minus,
                    abs(sol.c2 / sol.c1_plus))
        return _sweep_rows(cfg, spec, "z2", fn)

    if cfg.mode == "intensity_trace":
        atoms = [_atom(cfg, cfg.z1)]
        if cfg.z2 is not None:
            atoms.append(_atom(cfg, cfg.z2))
        times = np.array(_grid(cfg.sweep))
        try:
            trace = intensity_trace(atoms, cfg.detector_z, times, p=cfg.p,
                                    phi=cfg.phi, plane=cfg.plane, g=cfg.g,
                                    spec=spec)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        return [(t, v) for t, v in zip(times, trace)], []

    if cfg.mode == "transmission":
        def fn(d_eff):
            plane = PlaneMedium(z_plane=0.0, d_eff=d_eff)
            return (angle_averaged_s_transmission(plane, 1.0, spec),)
        return _sweep_rows(cfg, spec, "d_eff", fn)

    raise ConfigError(f"unknown mode {cfg.mode!r}")


def _fmt(v):
    return f"{float(v):.12g}"


def run_scenario(cfg, out_dir=".", svg=False, rel_tol=None):
    """Execute a validated config; writes CSV (and optional figure).

    rel_tol overrides the quadrature relative tolerance. Numerical
    failures propagate (QuadratureError, numpy.linalg.LinAlgError).
    """
    quad = dict(cfg.quad)
    if rel_tol is not None:
        if rel_tol <= 0.0:
            raise ConfigError("--tol must be positive")
        quad["rel_tol"] = rel_tol
    spec = QuadSpec(**quad)

    rows, skipped = _run_mode(cfg, spec)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / cfg.csv_name
    lines = []
    last_sect = None
    for sect, key, val in cfg.echo:
        if sect != last_sect:
            lines.append(f"# [{sect}]")
            last_sect = sect
        lines.append(f"# {key} = {val}")
    lines.append(_COLUMNS[cfg.mode])
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")

    svg_path = None
    if svg or cfg.svg_name:
        from .plots import render_csv   # deferred: pulls in matplotlib
        svg_path = out / (cfg.svg_name or (Path(cfg.csv_name).stem + ".svg"))
        render_csv(csv_path, svg_path)
    return RunResult(csv_path=csv_path, svg_path=svg_path,
                     n_rows=len(rows), skipped=skipped)


class _Parser(argparse.ArgumentParser):
    # usage errors are configuration errors: exit 1, not argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"error: {message}\n")


def main(argv=None):
    parser = _Parser(prog="dipscat",
                     description="decay rates, shifts and collective emission "
                                 "of dipoles near a partially reflecting plane")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="execute a scenario config")
    p_run.add_argument("config", help="path to an INI scenario (or a bundled name)")
    p_run.add_argument("--out", default=".", help="output directory")
    p_run.add_argument("--svg", action="store_true",
                       help="render a figure next to the CSV")
    p_run.add_argument("--tol", type=float, default=None,
                       help="override quadrature relative tolerance")
    p_val = sub.add_parser("validate", help="check a scenario config")
    p_val.add_argument("config")
    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    if args.command == "validate":
        n = len(_grid(cfg.sweep))
        medium = "vacuum" if cfg.plane is None else (
            f"plane at z = {cfg.plane.z_plane:g}, d_eff = {cfg.plane.d_eff:g}")
        print(f"OK: {cfg.mode}, {n} grid points, {medium}, csv = {cfg.csv_name}")
        return 0

    try:
        result = run_scenario(cfg, out_dir=args.out, svg=args.svg,
                              rel_tol=args.tol)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (QuadratureError, np.linalg.LinAlgError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return 2
    print(f"wrote {result.csv_path} ({result.n_rows} rows"
          + (f", {len(result.skipped)} skipped" if result.skipped else "")
          + (f"); figure {result.svg_path}" if result.svg_path else ")"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
