# harness.py
import dataclasses
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from analytics import (
    fit_loglog,
    grows_at_most_linearly,
    pass_fraction,
    ratio_stability,
    summary_table,
)
from forest_algebra import LabeledTree, bullet, graft
from rde import (
    BranchedRoughPath,
    ControlOmega,
    defect_scan,
    lift_bv,
    lipschitz_lhs,
    perturb_top,
    rho_distance,
    solve_euler,
    solve_geodesic,
    truncation_level,
)
from realization import PLPath, random_pl_path, realize, realize_pair
from results_store import digest, get_store
from vector_fields import PolyVectorField, check_ode_estimates, lip_gamma_norm, random_poly_field
from word_group import (
    WordSeries,
    get_alphabet,
    group_norm,
    lie_series,
    random_group_element,
    signature,
    weighted_lyndon_words,
    word_exp,
    word_log,
)

LIPSCHITZ_SLOPE_TOL = 0.05
DEFECT_SLOPE_SLACK = 0.15
DISCREPANCY_SLOPE_SLACK = 0.2
BACKEND_AGREEMENT = 1e-6
REALIZATION_RESIDUAL = 1e-9
RATIO_FACTOR = 2.0


class ConfigError(ValueError):
    """Invalid experiment configuration."""


# ---------------------------------------------------------------------
# ⚙️ Configuration
# ---------------------------------------------------------------------
@dataclass
class ExperimentConfig:
    p: float = 2.5
    gamma: float = 3.5
    d: int = 2
    e: int = 2
    seed: int = 0
    segments: int = 8
    refine: int = 16
    perturbations: List[float] = field(default_factory=lambda: [0.02, 0.01, 0.005, 0.0025, 0.00125])
    xi: List[float] = field(default_factory=lambda: [0.1, -0.2])
    field_degree: int = 2
    field_scale: float = 0.5
    box_radius: float = 4.0
    field1: Optional[Dict[str, Any]] = None
    field2: Optional[Dict[str, Any]] = None
    blocks: List[int] = field(default_factory=lambda: [1, 2, 4])
    ode_instances: int = 100
    ode_max_K: int = 5
    ode_max_e: int = 3
    ode_degree: int = 3
    adversarial_seed: int = 7
    realization_instances: int = 50
    realization_norm: float = 2.0
    realization_deltas: List[float] = field(default_factory=lambda: [1e-1, 1e-2, 1e-3, 1e-4])
    convergence_ps: List[float] = field(default_factory=lambda: [1.5, 2.5])
    convergence_level: int = 8
    convergence_field_scale: float = 0.05
    comparison_levels: List[int] = field(default_factory=lambda: [4, 5, 6, 7, 8])
    out_dir: str = "results"
    exact: bool = False
    threads: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not self.gamma > self.p >= 1:
            raise ConfigError(f"Need γ > p ≥ 1, got γ={self.gamma}, p={self.p}")
        if self.d < 1 or self.e < 1:
            raise ConfigError(f"Need d, e ≥ 1, got d={self.d}, e={self.e}")
        if self.segments < 1 or self.refine < 1 or self.segments * self.refine + 1 < 2:
            raise ConfigError("Grid needs at least 2 points")
        if any(h <= 0 for h in self.perturbations) or any(h <= 0 for h in self.realization_deltas):
            raise ConfigError("Perturbation sizes must be positive")
        if len(self.xi) != self.e:
            raise ConfigError(f"ξ has {len(self.xi)} entries, e={self.e}")
        if self.threads < 1:
            raise ConfigError(f"threads must be ≥ 1, got {self.threads}")
        if self.convergence_level < 2:
            raise ConfigError("convergence_level must be ≥ 2")
        if any(not 1 <= k <= self.convergence_level for k in self.comparison_levels):
            raise ConfigError(f"comparison_levels must lie in 1..{self.convergence_level}, got {self.comparison_levels}")
        if self.convergence_field_scale <= 0:
            raise ConfigError("convergence_field_scale must be positive")

    @classmethod
    def from_json(cls, path: str, **overrides) -> "ExperimentConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Could not read config {path}: {e}") from e
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown config keys: {sorted(unknown)}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return cls(**data)
        except TypeError as e:
            raise ConfigError(f"Bad config {path}: {e}") from e

    def with_overrides(self, **overrides) -> "ExperimentConfig":
        return dataclasses.replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_json(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    def digest(self) -> str:
        payload = self.to_json()
        # excluded: output location and thread count
        payload.pop("out_dir")
        payload.pop("threads")
        return digest(payload)

    @property
    def box(self) -> List[Tuple[float, float]]:
        return [(-self.box_radius, self.box_radius)] * self.e


def instance_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based stream per (seed, instance) so parallel runs draw the same numbers."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def run_instances(fn: Callable[..., Dict[str, Any]], args: Sequence[Tuple], threads: int) -> List[Dict[str, Any]]:
    """Run instances in order; each failure becomes a status='failed' row."""
    return Parallel(n_jobs=threads)(delayed(_guarded)(fn, a) for a in args)


def _guarded(fn: Callable[..., Dict[str, Any]], args: Tuple) -> Dict[str, Any]:
    try:
        row = fn(*args)
        row.setdefault("status", "ok")
        return row
    except Exception as e:
        logging.exception(f"❌ Instance {args[:2]} failed: {e}")
        return {"instance": args[0] if args else None, "status": "failed", "error": str(e)}


# ---------------------------------------------------------------------
# 🛠️ Problem builders
# ---------------------------------------------------------------------
def build_driver(rng: np.random.Generator, d: int, segments: int, refine: int, blocks: int = 1,
                 scale: float = 1.0) -> PLPath:
    """Concatenation of independent random PL blocks, each refined with `refine` points per segment."""
    path = None
    for _ in range(blocks):
        block = random_pl_path(rng, d, segments, scale=scale)
        path = block if path is None else path.concat(block)
    fine = np.linspace(float(path.times[0]), float(path.times[-1]), path.n_segments * refine + 1)
    return path.refine(list(fine))


def smooth_driver(rng: np.random.Generator, d: int, points: int) -> PLPath:
    """PL interpolation of a random trigonometric curve on [0, 1]."""
    t = np.linspace(0.0, 1.0, points)
    amps = rng.normal(size=(d, 3)) * 0.5
    values = np.stack([sum(amps[j, k] * np.sin(np.pi * (k + 1) * t) for k in range(3)) for j in range(d)], axis=1)
    return PLPath(list(t), values.tolist())


def build_fields(config: ExperimentConfig, rng: np.random.Generator) -> Tuple[PolyVectorField, PolyVectorField]:
    """f¹ and the direction g of the vector-field sweep."""
    if config.field1 is not None:
        f1 = PolyVectorField.from_json(config.field1)
    else:
        f1 = random_poly_field(rng, config.e, config.d, config.field_degree, config.box, config.field_scale)
    if config.field2 is not None:
        g = PolyVectorField.from_json(config.field2)
    else:
        g = random_poly_field(rng, config.e, config.d, config.field_degree, config.box, config.field_scale)
    return f1, g


def ladder(config: ExperimentConfig) -> LabeledTree:
    """Top-degree tree used by the perturbation sweep: a chain of [p] vertices on labels 1, 2, …"""
    tree = bullet(1)
    for k in range(1, truncation_level(config.p)):
        tree = graft((tree,), 1 + (k % config.d))
    return tree


def non_geometric_lift(config: ExperimentConfig, x: PLPath) -> BranchedRoughPath:
    X = lift_bv(x, config.p, exact=config.exact)
    if truncation_level(config.p) < 2:
        return X
    return perturb_top(X, ladder(config), lambda t: Fraction(1, 2) * Fraction(t) if config.exact else 0.5 * float(t))


# ---------------------------------------------------------------------
# 📈 Lipschitz experiment
# ---------------------------------------------------------------------
@dataclass
class LipschitzReport:
    rows: List[Dict[str, Any]]
    slopes: Dict[str, Optional[float]]
    zero_lhs: Dict[str, float]
    growth: List[Dict[str, Any]]
    growth_ok: bool
    lam: float
    omega_total: float

    @property
    def passed(self) -> bool:
        slopes_ok = all(s is not None and abs(s - 1.0) <= LIPSCHITZ_SLOPE_TOL for s in self.slopes.values())
        return slopes_ok and all(v == 0 for v in self.zero_lhs.values()) and self.growth_ok

    def to_json(self) -> Dict[str, Any]:
        return {"slopes": self.slopes, "zero_lhs": self.zero_lhs, "growth": self.growth,
                "growth_ok": self.growth_ok, "lambda": self.lam, "omega_total": self.omega_total,
                "passed": self.passed}


def _lipschitz_point(sweep: str, h: float, X1: BranchedRoughPath, X2: BranchedRoughPath,
                     f1: PolyVectorField, f2: PolyVectorField, xi1: np.ndarray, xi2: np.ndarray,
                     gamma: float, lam1: float) -> Dict[str, Any]:
    r1 = solve_euler(X1, f1, xi1, record_defects=False)
    r2 = solve_euler(X2, f2, xi2, record_defects=False)
    omega = ControlOmega([X1, X2])
    lhs = lipschitz_lhs(r1, r2, omega)
    lam = lam1 if f2 is f1 else max(lam1, lip_gamma_norm(f2, gamma).value)
    dxi = float(np.linalg.norm(xi1 - xi2))
    df = 0.0 if f2 is f1 else lip_gamma_norm(f1.difference(f2), gamma - 1).value
    rho = rho_distance(X1, X2, omega)
    delta_bar = rho + df / lam
    denominator = lam * (dxi + df / lam + rho)
    m_hat = lhs / denominator if denominator > 0 else 0.0
    logging.debug(f"🔄 {sweep} h={h:.3g}: lhs={lhs:.4e}, M̂={m_hat:.4g}")
    return {"sweep": sweep, "h": h, "lhs": lhs, "xi_gap": dxi, "field_gap_scaled": df / lam, "rho": rho,
            "delta_bar": delta_bar, "lambda": lam, "omega_total": omega.total, "M_hat": m_hat}


def run_lipschitz(config: ExperimentConfig) -> LipschitzReport:
    """Sweeps in ξ, f and the top-degree tree; fits log lhs against log h; checks M̂ growth in T."""
    rng = instance_rng(config.seed, 0)
    f1, g = build_fields(config, rng)
    lam1 = lip_gamma_norm(f1, config.gamma).value
    u = rng.normal(size=config.e)
    u = u / np.linalg.norm(u)
    xi1 = np.asarray(config.xi, dtype=float)
    x = build_driver(rng, config.d, config.segments, config.refine)
    X1 = non_geometric_lift(config, x)
    tau = ladder(config)

    rows: List[Dict[str, Any]] = []
    zero_lhs: Dict[str, float] = {}
    sweeps = {
        "initial_value": lambda h: (X1, f1, xi1 + h * u),
        "vector_field": lambda h: (X1, f1 + g.scale(h) if h else f1, xi1),
        "rough_path": lambda h: (perturb_top(X1, tau, lambda t: h * float(t)) if h else X1, f1, xi1),
    }
    for name, make in sweeps.items():
        X2, f2, xi2 = make(0.0)
        zero_lhs[name] = _lipschitz_point(name, 0.0, X1, X2, f1, f2, xi1, xi2, config.gamma, lam1)["lhs"]
        for h in config.perturbations:
            try:
                X2, f2, xi2 = make(h)
                rows.append(_lipschitz_point(name, h, X1, X2, f1, f2, xi1, xi2, config.gamma, lam1))
            except Exception as e:
                logging.exception(f"❌ Lipschitz sweep {name} failed at h={h}: {e}")
                rows.append({"sweep": name, "h": h, "status": "failed", "error": str(e)})

    slopes: Dict[str, Optional[float]] = {}
    for name in sweeps:
        pts = [(r["h"], r["lhs"]) for r in rows if r.get("sweep") == name and r.get("status") != "failed"]
        try:
            slopes[name] = fit_loglog([h for h, _ in pts], [v for _, v in pts]).slope
        except ValueError:
            slopes[name] = None
        logging.info(f"{'✅' if slopes[name] is not None and abs(slopes[name] - 1) <= LIPSCHITZ_SLOPE_TOL else '❌'} "
                     f"Lipschitz sweep {name}: slope {slopes[name]}")

    growth = _growth_in_time(config, f1, lam1, u)
    fitted = [(r["omega_total"], math.log(r["M_hat"])) for r in growth if r["M_hat"] > 0]
    growth_ok = grows_at_most_linearly([w for w, _ in fitted], [m for _, m in fitted])
    omega_total = ControlOmega([X1]).total
    return LipschitzReport(rows, slopes, zero_lhs, growth, growth_ok, lam1, omega_total)


def _growth_in_time(config: ExperimentConfig, f1: PolyVectorField, lam1: float, u: np.ndarray) -> List[Dict[str, Any]]:
    h = config.perturbations[len(config.perturbations) // 2]
    xi1 = np.asarray(config.xi, dtype=float)
    out = []
    for blocks in config.blocks:
        rng = instance_rng(config.seed, 1000 + blocks)
        try:
            x = build_driver(rng, config.d, config.segments, config.refine, blocks)
            X = non_geometric_lift(config, x)
            row = _lipschitz_point("time_blocks", h, X, X, f1, f1, xi1, xi1 + h * u, config.gamma, lam1)
            row["blocks"] = blocks
            out.append(row)
        except Exception as e:
            logging.exception(f"❌ T-doubling run with {blocks} blocks failed: {e}")
    return out


# ---------------------------------------------------------------------
# 📏 ODE bounds experiment
# ---------------------------------------------------------------------
def ode_instance(index: int, seed: int, max_K: int, max_e: int, max_degree: int,
                 variation: float = 1.0) -> Dict[str, Any]:
    rng = instance_rng(seed, index)
    K = int(rng.integers(1, max_K + 1))
    e = int(rng.integers(1, max_e + 1))
    degree = int(rng.integers(1, max_degree + 1))
    radius = 4.0 + 2.0 * variation
    box = [(-radius, radius)] * e
    scale = 0.3 / (K * max(variation, 1.0))
    f = random_poly_field(rng, e, K, degree, box, scale)
    g = random_poly_field(rng, e, K, degree, box, scale)
    f_tilde = f + g.scale(Fraction(float(rng.uniform(0, 0.1))).limit_denominator(1000))
    x = random_pl_path(rng, K, 4, scale=variation)
    noise = random_pl_path(rng, K, 4, scale=0.05 * variation)
    x_tilde = PLPath(list(x.times), (x.values + noise.values).tolist())
    y0 = rng.uniform(-0.5, 0.5, size=e)
    y0_tilde = y0 + rng.uniform(-0.05, 0.05, size=e)
    report = check_ode_estimates(f, f_tilde, x, x_tilde, y0, y0_tilde)
    row = {"instance": index, "seed": seed, "K": K, "e": e, "degree": degree}
    row.update({k: v for k, v in report.to_json().items() if not isinstance(v, list)})
    row["max_l"] = max(report.l)
    return row


def run_ode_bounds(config: ExperimentConfig) -> pd.DataFrame:
    args = [(i, config.seed, config.ode_max_K, config.ode_max_e, config.ode_degree)
            for i in range(config.ode_instances)]
    rows = run_instances(ode_instance, args, config.threads)
    adversarial = _guarded(ode_instance, (0, config.adversarial_seed, config.ode_max_K, config.ode_max_e,
                                          config.ode_degree, 5.0))
    adversarial["instance"] = "adversarial"
    rows.append(adversarial)
    df = summary_table(rows)
    logging.info(f"ODE bounds: pass fraction {pass_fraction(df):.3f} over {len(df)} instances")
    return df


# ---------------------------------------------------------------------
# 🧪 Convergence experiment
# ---------------------------------------------------------------------
def run_convergence(config: ExperimentConfig) -> Dict[str, Any]:
    """Defect slopes per p on smooth drivers and the Euler/geodesic discrepancy under refinement."""
    out: Dict[str, Any] = {"defects": [], "discrepancy": []}
    points = 2 ** config.convergence_level + 1
    for index, p in enumerate(config.convergence_ps):
        rng = instance_rng(config.seed, 2000 + index)
        x = smooth_driver(rng, config.d, points)
        X = lift_bv(x, p, exact=False)
        f = random_poly_field(rng, config.e, config.d, config.field_degree, config.box,
                              config.convergence_field_scale)
        omega = ControlOmega([X])
        N = truncation_level(p)
        target = (N + 1) / p
        row: Dict[str, Any] = {"p": p, "target": target - DEFECT_SLOPE_SLACK}
        try:
            scan = defect_scan(solve_euler(X, f, config.xi), omega)
            row.update({"slope": scan.slope, "residual": scan.residual, "exact": scan.exact,
                        "levels": len(scan.levels)})
            row["pass"] = scan.exact or scan.slope >= target - DEFECT_SLOPE_SLACK
        except Exception as e:
            logging.exception(f"❌ Defect scan for p={p} failed: {e}")
            row.update({"status": "failed", "error": str(e), "pass": False})
        out["defects"].append(row)
        out["discrepancy"].append(_discrepancy(config, X, f, p))
    out["passed"] = all(r.get("pass") for r in out["defects"] + out["discrepancy"])
    return out


def _discrepancy(config: ExperimentConfig, X: BranchedRoughPath, f: PolyVectorField, p: float) -> Dict[str, Any]:
    N = truncation_level(p)
    top = config.convergence_level
    meshes, gaps = [], []
    row: Dict[str, Any] = {"p": p, "target": (N + 1) / p - 1 - DISCREPANCY_SLOPE_SLACK}
    try:
        for level in sorted(config.comparison_levels):
            stride = 2 ** (top - level)
            partition = list(range(0, X.n_points, stride))
            euler = solve_euler(X, f, config.xi, partition, record_defects=False)
            geodesic = solve_geodesic(X, f, config.xi, partition, record_defects=False)
            gap = float(np.abs(euler.states - geodesic.states).max())
            meshes.append(2.0 ** -level)
            gaps.append(gap)
            logging.debug(f"🔄 p={p} level {level}: backend gap {gap:.3e}")
        row["finest_gap"] = gaps[-1]
        row["agrees"] = gaps[-1] <= BACKEND_AGREEMENT
        positive = [(m, g) for m, g in zip(meshes, gaps) if g > 0]
        if len(positive) >= 2:
            row["slope"] = fit_loglog([m for m, _ in positive], [g for _, g in positive]).slope
            row["pass"] = row["agrees"] and row["slope"] >= row["target"]
        else:
            row["slope"] = None
            row["pass"] = row["agrees"]
        logging.info(f"{'✅' if row['pass'] else '❌'} p={p}: finest backend gap {gaps[-1]:.3e}, "
                     f"discrepancy slope {row['slope']}")
    except Exception as e:
        logging.exception(f"❌ Backend comparison for p={p} failed: {e}")
        row.update({"status": "failed", "error": str(e), "pass": False})
    return row


# ---------------------------------------------------------------------
# 🧭 Realization experiment
# ---------------------------------------------------------------------
def realization_instance(index: int, seed: int, p: float, d: int, norm_bound: float) -> Dict[str, Any]:
    rng = instance_rng(seed, index)
    alphabet = get_alphabet(p, d)
    h = random_group_element(rng, alphabet.weights, alphabet.n, norm_bound=norm_bound)
    x = realize(h)
    residual = signature(x, alphabet.weights, alphabet.n).max_difference(h)
    return {"instance": index, "norm": group_norm(h), "segments": x.n_segments, "residual": residual,
            "pass": residual <= REALIZATION_RESIDUAL}


def run_realization(config: ExperimentConfig) -> Dict[str, Any]:
    args = [(i, config.seed, config.p, config.d, config.realization_norm) for i in range(config.realization_instances)]
    rows = run_instances(realization_instance, args, config.threads)
    alphabet = get_alphabet(config.p, config.d)
    rng = instance_rng(config.seed, 3000)
    h1 = random_group_element(rng, alphabet.weights, alphabet.n, norm_bound=1.0)
    direction = {lw: float(rng.uniform(-1, 1)) for lw in weighted_lyndon_words(alphabet.weights, alphabet.n)}
    pairs = []
    for delta in config.realization_deltas:
        try:
            h2 = word_exp(word_log(h1) + lie_series(alphabet.weights, alphabet.n,
                                                    {w: delta * c for w, c in direction.items()}))
            gap = h1.max_difference(h2)
            x1, x2 = realize_pair(h1, h2, gap)
            diff = float(x1.difference(x2).total_variation())
            pairs.append({"delta": delta, "word_gap": gap, "difference": diff, "ratio": diff / gap})
        except Exception as e:
            logging.exception(f"❌ Pair realization failed at δ={delta}: {e}")
            pairs.append({"delta": delta, "status": "failed", "error": str(e)})
    df = summary_table(rows)
    stable = ratio_stability([r.get("ratio", 0.0) for r in pairs], RATIO_FACTOR)
    return {"instances": df, "pairs": summary_table(pairs), "residual_pass": pass_fraction(df) == 1.0,
            "ratio_stable": stable, "passed": pass_fraction(df) == 1.0 and stable}


# ---------------------------------------------------------------------
# 🧾 Command wrappers
# ---------------------------------------------------------------------
def alphabet_hash(p: float, d: int) -> Optional[str]:
    """Digest of the generator alphabet for ([p], d); None above the supported levels."""
    try:
        return get_alphabet(p, d).digest()
    except ValueError:
        return None


def _meta(config: ExperimentConfig) -> Dict[str, Optional[str]]:
    return {"config_hash": config.digest(), "alphabet_hash": alphabet_hash(config.p, config.d)}


def cmd_experiment_lipschitz(config: ExperimentConfig) -> bool:
    report = run_lipschitz(config)
    payload = report.to_json()
    payload["config"] = config.to_json()
    tables = {"sweeps": summary_table(report.rows, ["sweep", "h"]), "growth": pd.DataFrame(report.growth)}
    get_store(config.out_dir).save_report("exp_lipschitz", payload, tables, **_meta(config))
    return report.passed


def cmd_experiment_ode_bounds(config: ExperimentConfig) -> bool:
    df = run_ode_bounds(config)
    fraction = pass_fraction(df)
    payload = {"pass_fraction": fraction, "instances": len(df), "config": config.to_json()}
    get_store(config.out_dir).save_report("exp_ode_bounds", payload, {"instances": df}, **_meta(config))
    return fraction == 1.0


def cmd_experiment_convergence(config: ExperimentConfig) -> bool:
    result = run_convergence(config)
    tables = {"defects": pd.DataFrame(result["defects"]), "discrepancy": pd.DataFrame(result["discrepancy"])}
    payload = {"passed": result["passed"], "config": config.to_json()}
    get_store(config.out_dir).save_report("exp_convergence", payload, tables, **_meta(config))
    return result["passed"]


def cmd_experiment_realization(config: ExperimentConfig) -> bool:
    result = run_realization(config)
    payload = {k: v for k, v in result.items() if not isinstance(v, pd.DataFrame)}
    payload["config"] = config.to_json()
    tables = {"instances": result["instances"], "pairs": result["pairs"]}
    get_store(config.out_dir).save_report("exp_realization", payload, tables, **_meta(config))
    return result["passed"]


def cmd_lift(path_data: Dict[str, Any], p: float, exact: bool) -> Dict[str, Any]:
    return lift_bv(PLPath.from_json(path_data), p, exact).to_json()


def cmd_solve(rough_path: Dict[str, Any], field_data: Dict[str, Any], xi: Sequence[float],
              backend: str = "euler", exact: bool = False) -> Dict[str, Any]:
    X = BranchedRoughPath.from_json(rough_path)
    f = PolyVectorField.from_json(field_data)
    if backend == "euler":
        xi_vals = [Fraction(v) for v in xi] if exact else list(xi)
        return solve_euler(X, f, xi_vals, exact=exact).to_json()
    if backend == "geodesic":
        return solve_geodesic(X, f, xi).to_json()
    raise ValueError(f"Unknown backend {backend!r}")


def cmd_realize(series_data: Dict[str, Any]) -> Dict[str, Any]:
    h = WordSeries.from_json(series_data)
    x = realize(h)
    residual = signature(x, h.weights, h.n).max_difference(h)
    return {"path": x.to_json(), "residual": residual}
