"""Command-line entry point.

Every subcommand echoes its fully resolved configuration as the first JSON
line on stderr. Rerunning with that JSON as ``--config`` reproduces the output
bit for bit. Exit codes: 0 success, 1 numerical or tolerance failure, 2 usage
or configuration error.
"""
from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (ConfigurationError, ConsistencyError, ConvergenceError, DomainError,
                     SolverError)
from .flows import FlowFamily, FlowSpec, evaluate
from .functional_bounds import bound_set, phi_asymptotics, phi_csv, v_epsilon_rayleigh
from .geometry import Annulus
from .spectral import Grid1D, sl_scan
from .stability import certify, m_constant
from .svg import heat_map_svg
from .verify import (PerturbedField, boundary_check, counterexample_checks, default_step,
                     family_field, fd_residual_report, navier_slip_identity,
                     ns_residual_closed, sample_interior_points)

COMMANDS = ("eval", "verify", "stability", "map", "poincare", "slscan", "appendix")

EVAL_HEADER = ("rho", "theta", "z", "u_rho", "u_theta", "u_z", "p", "w_rho", "w_theta", "w_z")
BOUNDS_HEADER = ("r1", "r2", "lower_square", "lower_radial", "lower_best", "upper",
                 "curl_factor", "alpha_threshold", "beta_threshold")
VEPS_HEADER = ("r1", "r2", "eps", "numeric_quotient", "closed_form", "exact_quotient")

DEFAULT_OPTIONS = {
    "eval": {"n_rho": 101, "theta": 0.0, "z": 0.0, "points": []},
    "verify": {"n_samples": 1000, "method": "closed", "fd_step": 0.0, "perturb": 0.0,
               "counterexample": False, "boundary_samples": 256,
               "counterexample_fd_tol": 1e-8},
    "stability": {"theorem": "", "bound_source": "paper_lower", "user_lambda": 0.0},
    "map": {"alpha_range": [-5.0, 5.0], "beta_range": [-5.0, 5.0], "n_alpha": 41,
            "n_beta": 41, "svg": "", "theorem": "", "bound_source": "paper_lower",
            "user_lambda": 0.0},
    "poincare": {"eps": [0.1, 1.0], "n_rho": 2048, "n_z": 2048},
    "slscan": {"k": [1, 2, 3, 4], "alpha_range": [-10.0, 10.0], "n_alpha": 201, "n": 400,
               "threshold": 0.0},
    "appendix": {"table": "phi", "sequence": "r1_to_0", "annuli": [], "eps": [0.1, 1.0]},
}
DEFAULT_FLOW = {"family": FlowFamily.COUETTE_INNER.value, "alpha": 1.0, "beta": 0.0,
                "gamma": 0.0}
_GLOBAL_KEYS = {"command", "annulus", "flow", "flows", "seed", "tol", "jobs", "out", "options"}
U64_MAX = 2**64 - 1


@dataclass
class RunConfig:
    command: str
    annulus: Annulus
    flow: FlowSpec
    flows: list = field(default_factory=list)
    options: dict = field(default_factory=dict)
    seed: int = 0
    tol: float = 1e-10
    jobs: int = 1
    out: str = ""

    def to_dict(self) -> dict:
        return {"command": self.command, "annulus": self.annulus.to_dict(),
                "flow": self.flow.to_dict(), "flows": [f.to_dict() for f in self.flows],
                "options": copy.deepcopy(self.options), "seed": self.seed, "tol": self.tol,
                "jobs": self.jobs, "out": self.out}


def _coerce(name: str, value, default):
    """Coerce ``value`` to the type of ``default``."""
    try:
        if isinstance(default, bool):
            if isinstance(value, bool):
                return value
            if isinstance(value, str) and value.lower() in ("true", "false", "1", "0"):
                return value.lower() in ("true", "1")
            raise ValueError
        if isinstance(default, int):
            if isinstance(value, int) and not isinstance(value, bool):
                return value
            if isinstance(value, bool) or float(value) != int(float(value)):
                raise ValueError
            return int(float(value))
        if isinstance(default, float):
            out = float(value)
            if not math.isfinite(out):
                raise ValueError
            return out
        if isinstance(default, str):
            if not isinstance(value, str):
                raise ValueError
            return value
        if isinstance(default, list):
            if not isinstance(value, (list, tuple)):
                value = [value]
            return list(value)
    except (TypeError, ValueError):
        pass
    raise ConfigurationError(f"option {name!r} has invalid value {value!r}")


def _annulus_from(data) -> Annulus:
    if isinstance(data, (list, tuple)) and len(data) == 2:
        return Annulus(float(data[0]), float(data[1]))
    if isinstance(data, dict) and set(data) <= {"r_inner", "r_outer"}:
        return Annulus(float(data.get("r_inner", 1.0)), float(data.get("r_outer", 2.0)))
    raise ConfigurationError(f"annulus must be {{r_inner, r_outer}} or [r1, r2], got {data!r}")


def resolve_config(command: str, file_data: dict | None, flags: dict) -> RunConfig:
    """Merge defaults, config-file values and command-line flags (in that order)."""
    if command not in COMMANDS:
        raise ConfigurationError(f"unknown command {command!r}")
    data = dict(file_data or {})
    if data.get("command", command) != command:
        raise ConfigurationError(f"config is for {data['command']!r}, not {command!r}")
    options = copy.deepcopy(DEFAULT_OPTIONS[command])
    file_opts = dict(data.get("options") or {})
    for key in list(data):
        if key not in _GLOBAL_KEYS:
            file_opts[key] = data.pop(key)
    flag_opts = flags.get("options") or {}
    for source in (file_opts, flag_opts):
        for key, value in source.items():
            if key not in options:
                raise ConfigurationError(
                    f"unknown option {key!r} for {command}; expected one of {sorted(options)}"
                )
            options[key] = _coerce(key, value, options[key])

    ann = dict(r_inner=1.0, r_outer=2.0)
    if "annulus" in data:
        a0 = _annulus_from(data["annulus"])
        ann = dict(r_inner=a0.r_inner, r_outer=a0.r_outer)
    for key, flag in (("r_inner", "r1"), ("r_outer", "r2")):
        if flags.get(flag) is not None:
            ann[key] = flags[flag]
    annulus = Annulus(ann["r_inner"], ann["r_outer"])

    flow = dict(DEFAULT_FLOW)
    flow.update(data.get("flow") or {})
    for key in ("family", "alpha", "beta", "gamma"):
        if flags.get(key) is not None:
            flow[key] = flags[key]
    flow_spec = FlowSpec.from_dict(flow)
    flows = data.get("flows") or []
    if not isinstance(flows, list):
        raise ConfigurationError("flows must be a JSON array of flow specs")
    flows = [FlowSpec.from_dict(f) for f in flows]

    seed = flags["seed"] if flags.get("seed") is not None else data.get("seed", 0)
    tol = flags["tol"] if flags.get("tol") is not None else data.get("tol", 1e-10)
    jobs = flags["jobs"] if flags.get("jobs") is not None else data.get("jobs", os.cpu_count() or 1)
    out = flags["out"] if flags.get("out") is not None else data.get("out", "")
    seed = _coerce("seed", seed, 0)
    if not 0 <= seed <= U64_MAX:
        raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {seed}")
    tol = _coerce("tol", tol, 0.0)
    if not tol > 0.0:
        raise ConfigurationError(f"tol must be positive, got {tol}")
    jobs = _coerce("jobs", jobs, 0)
    if jobs < 1:
        raise ConfigurationError(f"jobs must be at least 1, got {jobs}")
    return RunConfig(command, annulus, flow_spec, flows, options, seed, tol, jobs,
                     _coerce("out", out or "", ""))


# --- helpers ------------------------------------------------------------------

def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _emit(text: str, cfg: RunConfig, stdout) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _parallel_map(fn, items: list, jobs: int) -> list:
    """Ordered map; the result does not depend on ``jobs``."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    chunk = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _grid(bounds, n: int, name: str) -> np.ndarray:
    if len(bounds) != 2 or n < 1:
        raise ConfigurationError(f"{name} needs a [lo, hi] range and a positive count")
    lo, hi = float(bounds[0]), float(bounds[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ConfigurationError(f"{name} range [{lo}, {hi}] is invalid")
    return np.linspace(lo, hi, n)


# --- subcommands --------------------------------------------------------------

def cmd_eval(cfg: RunConfig) -> tuple[str, int]:
    """Field samples along a radial line (or at explicit points) as CSV."""
    o, a = cfg.options, cfg.annulus
    if o["points"]:
        try:
            pts = np.asarray(o["points"], dtype=float).reshape(-1, 3)
        except ValueError:
            raise ConfigurationError("points must be a list of [rho, theta, z] triples") from None
        rho, theta, z = pts[:, 0], pts[:, 1], pts[:, 2]
    else:
        if o["n_rho"] < 2:
            raise ConfigurationError("n_rho must be at least 2")
        rho = np.linspace(a.r_inner, a.r_outer, o["n_rho"])
        theta = np.full_like(rho, o["theta"])
        z = np.full_like(rho, o["z"])
    try:
        fv = evaluate(cfg.flow, a, rho, theta, z)
    except DomainError as exc:
        raise ConfigurationError(str(exc)) from exc
    cols = [np.broadcast_to(np.asarray(c, float), rho.shape) for c in fv]
    theta_out = np.mod(theta, 2.0 * math.pi)
    rows = zip(rho, theta_out, z, *cols)
    return _csv_text(EVAL_HEADER, rows), 0


def _fd_points(a: Annulus, n: int, seed: int, h: float) -> np.ndarray:
    """Interior samples squeezed into the band that leaves a 2h wall margin."""
    pts = sample_interior_points(a, n, seed)
    band = a.gap - 4.0 * h
    if band <= 0.0:
        raise ConfigurationError(f"fd_step {h} is too large for the gap {a.gap}")
    pts[:, 0] = a.r_inner + 2.0 * h + (pts[:, 0] - a.r_inner) / a.gap * band
    return pts


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    """Residual and boundary audits of a family, or the counterexample field."""
    o, a = cfg.options, cfg.annulus
    if o["method"] not in ("closed", "fd"):
        raise ConfigurationError("method must be 'closed' or 'fd'")
    if o["counterexample"]:
        rep = counterexample_checks(a, o["n_samples"], seed=cfg.seed)
        ok = (rep["max_abs_divergence"] < o["counterexample_fd_tol"]
              and rep["max_abs_curl"] < o["counterexample_fd_tol"]
              and rep["max_abs_wall_flux"] <= cfg.tol)
        rep["passed"] = bool(ok)
        return json.dumps({"counterexample": rep}, sort_keys=True) + "\n", 0 if ok else 1

    spec = cfg.flow
    if o["perturb"] != 0.0 or o["method"] == "fd":
        h = o["fd_step"] or default_step(a)
        pts = _fd_points(a, o["n_samples"], cfg.seed, h)
        fld = family_field(spec, a)
        if o["perturb"] != 0.0:
            fld = PerturbedField(fld, o["perturb"], seed=cfg.seed)
        res = fd_residual_report(fld, a, pts, h, seed=cfg.seed, label=spec.family.value)
    else:
        pts = sample_interior_points(a, o["n_samples"], cfg.seed)
        res = ns_residual_closed(spec, a, pts, seed=cfg.seed)
    bnd = boundary_check(spec, a, o["boundary_samples"], seed=cfg.seed)
    report = {"residual": res.to_dict(), "boundary": bnd.to_dict()}
    worst = max(res.max_abs, bnd.max_abs)
    if spec.family.is_vorticity:
        slip = navier_slip_identity(spec, a, o["boundary_samples"], seed=cfg.seed)
        report["navier_slip"] = slip.to_dict()
        worst = max(worst, slip.max_violation)
    ok = bool(worst <= cfg.tol)
    report["passed"] = ok
    report["tol"] = cfg.tol
    return json.dumps(report, sort_keys=True) + "\n", 0 if ok else 1


def _certify_kwargs(o: dict) -> dict:
    kw = {"bound_source": o["bound_source"], "theorem": o["theorem"] or None}
    if o["bound_source"] == "user_value":
        kw["user_lambda"] = o["user_lambda"]
    return kw


def cmd_stability(cfg: RunConfig) -> tuple[str, int]:
    """Certificates for one flow spec, or for the batch in ``flows``."""
    specs = cfg.flows or [cfg.flow]
    kw = _certify_kwargs(cfg.options)
    lines = []
    for spec in specs:
        rep = certify(spec, cfg.annulus, **kw)
        d = rep.to_dict()
        d["flow"] = spec.to_dict()
        lines.append(json.dumps(d, sort_keys=True))
    return "\n".join(lines) + "\n", 0


def _map_cell(task):
    family, alpha, beta, gamma, r1, r2, kw = task
    rep = certify(FlowSpec(family, alpha, beta, gamma), Annulus(r1, r2), **kw)
    return rep.m_value, rep.lambda_lower, rep.certified


def cmd_map(cfg: RunConfig) -> tuple[str, int]:
    """Certified region over an (alpha, beta) grid; a gamma slice for vorticity families."""
    o, a, spec = cfg.options, cfg.annulus, cfg.flow
    alphas = _grid(o["alpha_range"], o["n_alpha"], "alpha")
    # Couette families have no beta axis
    betas = np.zeros(1) if spec.family.is_couette else _grid(o["beta_range"], o["n_beta"], "beta")
    gamma = spec.gamma
    kw = _certify_kwargs(o)
    tasks = [(spec.family.value, float(al), float(be), gamma, a.r_inner, a.r_outer, kw)
             for be in betas for al in alphas]
    cells = _parallel_map(_map_cell, tasks, cfg.jobs)
    vort = spec.family.is_vorticity
    header = (("alpha", "beta", "gamma") if vort else ("alpha", "beta")) + ("m", "bound", "certified")
    rows = []
    for (_, al, be, ga, *_), (m, lam, ok) in zip(tasks, cells):
        bound = "" if lam is None else float(lam)
        rows.append(((al, be, ga) if vort else (al, be)) + (m, bound, int(ok)))
    if o["svg"]:
        m = np.array([c[0] for c in cells]).reshape(betas.size, alphas.size)
        lam = np.array([c[1] if c[1] is not None else np.inf for c in cells]).reshape(m.shape)
        cert = np.array([c[2] for c in cells]).reshape(m.shape)
        svg = heat_map_svg(alphas, betas, m / lam, cert,
                           title=f"{spec.family.value} certified region")
        with open(o["svg"], "w", encoding="utf-8", newline="") as fh:
            fh.write(svg)
    return _csv_text(header, rows), 0


def cmd_poincare(cfg: RunConfig) -> tuple[str, int]:
    """Closed-form Poincare bounds and test-field Rayleigh quotients."""
    o, a = cfg.options, cfg.annulus
    bs = bound_set(a)
    veps = []
    for eps in o["eps"]:
        r = v_epsilon_rayleigh(a, float(eps), n_rho=o["n_rho"], n_z=o["n_z"])
        veps.append(r.to_dict())
    consistent = bool(bs.lower_best <= bs.upper)
    report = {"annulus": a.to_dict(), "bounds": bs.to_dict(),
              "bounds_consistent": consistent, "v_epsilon": veps}
    return json.dumps(report, sort_keys=True) + "\n", 0 if consistent else 1


def _scan_one(task):
    r1, r2, k, alphas, n = task
    return sl_scan(Annulus(r1, r2), k, alphas, Grid1D(Annulus(r1, r2), n))


def cmd_slscan(cfg: RunConfig) -> tuple[str, int]:
    """Smallest singular values of the discrete operator along the imaginary axis."""
    o, a = cfg.options, cfg.annulus
    alphas = _grid(o["alpha_range"], o["n_alpha"], "alpha")
    ks = [_coerce("k", k, 0) for k in o["k"]]
    tasks = [(a.r_inner, a.r_outer, k, alphas, o["n"]) for k in ks]
    results = _parallel_map(_scan_one, tasks, cfg.jobs)
    text = "".join(r.to_csv(header=(i == 0)) for i, r in enumerate(results))
    low = min(float(np.min(r.sigma_min)) for r in results)
    code = 1 if o["threshold"] > 0.0 and low <= o["threshold"] else 0
    return text, code


def _appendix_annuli(o: dict) -> list[Annulus]:
    seq = o["sequence"]
    if seq == "r1_to_0":
        return [Annulus(10.0**-j, 1.0) for j in range(1, 5)]
    if seq == "r2_to_inf":
        return [Annulus(1.0, 10.0**j) for j in range(1, 4)]
    if seq == "r2_to_r1":
        return [Annulus(1.0, 1.0 + 10.0**-j) for j in range(1, 5)]
    if seq == "custom":
        if not o["annuli"]:
            raise ConfigurationError("sequence 'custom' needs a non-empty 'annuli' list")
        return [_annulus_from(x) for x in o["annuli"]]
    raise ConfigurationError(
        f"unknown sequence {seq!r}; expected r1_to_0, r2_to_inf, r2_to_r1 or custom"
    )


def certified_thresholds(a: Annulus) -> tuple[float, float]:
    """Largest certified |alpha| (beta=0) and |beta| (alpha=0), inner Dirichlet family."""
    lam = bound_set(a).lower_best
    m_a, _ = m_constant(FlowSpec(FlowFamily.SPIRAL_INNER, 1.0, 0.0), a)
    m_b, _ = m_constant(FlowSpec(FlowFamily.SPIRAL_INNER, 0.0, 1.0), a)
    return lam / m_a, lam / m_b


def cmd_appendix(cfg: RunConfig) -> tuple[str, int]:
    """Phi table, bound table or V_eps table over a parameter sequence."""
    o = cfg.options
    annuli = _appendix_annuli(o)
    table = o["table"]
    if table == "phi":
        return phi_csv(phi_asymptotics(annuli)), 0
    if table == "bounds":
        rows = []
        for a in annuli:
            bs = bound_set(a)
            ta, tb = certified_thresholds(a)
            rows.append((a.r_inner, a.r_outer, bs.lower_square, bs.lower_radial,
                         bs.lower_best, bs.upper, bs.curl_factor, ta, tb))
        return _csv_text(BOUNDS_HEADER, rows), 0
    if table == "vepsilon":
        rows = []
        for a in annuli:
            for eps in o["eps"]:
                r = v_epsilon_rayleigh(a, float(eps))
                rows.append((a.r_inner, a.r_outer, r.eps, r.numeric_quotient,
                             r.closed_form, r.exact_quotient))
        return _csv_text(VEPS_HEADER, rows), 0
    raise ConfigurationError(f"unknown table {table!r}; expected phi, bounds or vepsilon")


HANDLERS = {"eval": cmd_eval, "verify": cmd_verify, "stability": cmd_stability,
            "map": cmd_map, "poincare": cmd_poincare, "slscan": cmd_slscan,
            "appendix": cmd_appendix}


# --- argument parsing ---------------------------------------------------------

def _u64(text: str) -> int:
    try:
        val = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= val <= U64_MAX:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return val


def _key_value(text: str):
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    try:
        return key, json.loads(raw)
    except json.JSONDecodeError:
        return key, raw


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global")
    g.add_argument("--config", metavar="FILE.json", default=argparse.SUPPRESS)
    g.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)
    g.add_argument("--jobs", type=int, metavar="N", default=argparse.SUPPRESS)
    g.add_argument("--seed", type=_u64, metavar="U64", default=argparse.SUPPRESS)
    g.add_argument("--tol", type=float, metavar="FLOAT", default=argparse.SUPPRESS)
    f = common.add_argument_group("annulus and flow")
    f.add_argument("--r1", type=float, default=argparse.SUPPRESS, help="inner radius")
    f.add_argument("--r2", type=float, default=argparse.SUPPRESS, help="outer radius")
    f.add_argument("--family", default=argparse.SUPPRESS,
                   help="one of " + ", ".join(m.value for m in FlowFamily))
    f.add_argument("--alpha", type=float, default=argparse.SUPPRESS)
    f.add_argument("--beta", type=float, default=argparse.SUPPRESS)
    f.add_argument("--gamma", type=float, default=argparse.SUPPRESS)
    f.add_argument("-O", "--option", dest="options", action="append", type=_key_value,
                   metavar="KEY=VALUE", default=argparse.SUPPRESS,
                   help="command option; VALUE is parsed as JSON when possible")

    parser = argparse.ArgumentParser(prog="taylor-couette", parents=[common],
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "eval": "field samples as CSV",
        "verify": "residual and boundary audits (JSON)",
        "stability": "stability certificates (JSON lines)",
        "map": "certified region over a parameter grid (CSV, optional SVG)",
        "poincare": "Poincare bounds and test-field quotients (JSON)",
        "slscan": "Sturm-Liouville smallest singular value scan (CSV)",
        "appendix": "Phi, bound and V_eps tables (CSV)",
    }
    subs = {name: sub.add_parser(name, parents=[common], help=h) for name, h in helps.items()}
    subs["verify"].add_argument("--counterexample", action="store_true",
                                default=argparse.SUPPRESS)
    subs["verify"].add_argument("--perturb", type=float, metavar="AMP", default=argparse.SUPPRESS)
    subs["map"].add_argument("--svg", metavar="PATH", default=argparse.SUPPRESS)
    subs["appendix"].add_argument("--table", choices=("phi", "bounds", "vepsilon"),
                                  default=argparse.SUPPRESS)
    subs["appendix"].add_argument("--sequence", default=argparse.SUPPRESS,
                                  choices=("r1_to_0", "r2_to_inf", "r2_to_r1", "custom"))
    return parser


def _flags(ns: argparse.Namespace) -> dict:
    d = vars(ns)
    opts = dict(d.get("options") or [])
    for key in ("counterexample", "perturb", "svg", "table", "sequence"):
        if key in d:
            opts[key] = d[key]
    flags = {k: d.get(k) for k in ("out", "jobs", "seed", "tol", "r1", "r2",
                                   "family", "alpha", "beta", "gamma")}
    flags["options"] = opts
    return flags


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read config {path!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigurationError("config file must hold a JSON object")
    return data


def main(argv=None, *, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        file_data = _load_config(ns.config) if getattr(ns, "config", None) else None
        cfg = resolve_config(ns.command, file_data, _flags(ns))
    except (ConfigurationError, DomainError) as exc:
        print(f"config error: {exc}", file=stderr)
        return 2
    print(json.dumps(cfg.to_dict(), sort_keys=True), file=stderr)
    try:
        text, code = HANDLERS[cfg.command](cfg)
        _emit(text, cfg, stdout)
    except (ConfigurationError, DomainError) as exc:
        print(f"config error: {exc}", file=stderr)
        return 2
    except (ConsistencyError, ConvergenceError, SolverError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=stderr)
        return 1
    except OSError as exc:
        print(f"output error: {exc}", file=stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
