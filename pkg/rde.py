# rde.py
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from analytics import LogLogFit, fit_loglog
from ck_hopf import Character, Scalar, TreeBasis, get_tree_basis, is_exact, rescale, scalar_from_json, scalar_to_json
from forest_algebra import LabeledTree, graft, bullet, tree_factorial
from realization import PLPath, realize
from vector_fields import PolyVectorField, DomainExitError, generator_fields, inside_box, ode_solve
from word_group import MAX_LEVEL, get_phi_map

MIN_SCAN_LEVELS = 4
SCAN_COARSE_LEVELS = 3
SCAN_OMEGA_CEILING = 1.0
SUPER_ADDITIVITY_TOL = 1e-12
GEOMETRIC_TOL = 1e-10


def truncation_level(p: float) -> int:
    if p < 1:
        raise ValueError(f"p must be at least 1, got {p}")
    return int(math.floor(p))


# ---------------------------------------------------------------------
# 🧵 Branched rough paths on a grid
# ---------------------------------------------------------------------
class BranchedRoughPath:
    """X_{0,tᵢ} as rows of tree values; increments X_{s,t} = X_s⁻¹X_t."""

    def __init__(self, grid: Sequence[Scalar], values: np.ndarray, p: float, d: int):
        self.p = p
        self.d = d
        self.N = truncation_level(p)
        self.basis: TreeBasis = get_tree_basis(self.N, d)
        self.grid = list(grid)
        self.values = np.asarray(values)
        if self.values.shape != (len(self.grid), self.basis.size):
            raise ValueError(f"States of shape {self.values.shape} do not match "
                             f"({len(self.grid)}, {self.basis.size})")
        if any(b <= a for a, b in zip(self.grid[:-1], self.grid[1:])):
            raise ValueError("Grid times must be strictly increasing")
        self._inverse: Optional[np.ndarray] = None

    @property
    def exact(self) -> bool:
        return self.values.dtype == object

    @property
    def n_points(self) -> int:
        return len(self.grid)

    def state(self, i: int) -> Character:
        return self.basis.from_array(self.values[i])

    def _inverses(self) -> np.ndarray:
        if self._inverse is None:
            self._inverse = self.basis.inverse(self.values)
        return self._inverse

    def increment_array(self, i: int, j: int) -> np.ndarray:
        return self.basis.product(self._inverses()[i], self.values[j])

    def increment(self, i: int, j: int) -> Character:
        return self.basis.from_array(self.increment_array(i, j))

    def increments_to(self, b: int) -> np.ndarray:
        """Rows X_{t_a, t_b} for a = 0..b-1."""
        return self.basis.product(self._inverses()[:b], self.values[b])

    def restrict(self, indices: Sequence[int]) -> "BranchedRoughPath":
        indices = list(indices)
        return BranchedRoughPath([self.grid[i] for i in indices], self.values[indices], self.p, self.d)

    def dilate(self, lam: Scalar) -> "BranchedRoughPath":
        """δ_λ: (X, τ) ↦ λ^{|τ|}(X, τ)."""
        return BranchedRoughPath(self.grid, self.basis.dilate(self.values, lam), self.p, self.d)

    def to_float(self) -> "BranchedRoughPath":
        return BranchedRoughPath([float(t) for t in self.grid], self.values.astype(float), self.p, self.d)

    def __repr__(self) -> str:
        return f"BranchedRoughPath(p={self.p}, d={self.d}, points={self.n_points}, exact={self.exact})"

    def to_json(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "grid": [scalar_to_json(t) for t in self.grid],
            "states": [self.state(i).to_json() for i in range(self.n_points)],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "BranchedRoughPath":
        p = float(data["p"])
        states = [Character.from_json(s) for s in data["states"]]
        d = states[0].d
        basis = get_tree_basis(truncation_level(p), d)
        exact = all(s.exact for s in states)
        values = np.stack([basis.to_array(s, exact) for s in states])
        return cls([scalar_from_json(t) for t in data["grid"]], values, p, d)


def _segment_rows(basis: TreeBasis, increments: np.ndarray, exact: bool) -> np.ndarray:
    """Tree values of each linear piece: Π_v Δ^{label(v)} / τ!."""
    counts = np.array([[t.labels.count(a) for a in range(1, basis.d + 1)] for t in basis.trees])
    factorials = [tree_factorial(t) for t in basis.trees]
    if not exact:
        incs = np.asarray(increments, dtype=float)
        return np.prod(incs[:, None, :] ** counts[None, :, :], axis=2) / np.array(factorials, dtype=float)
    rows = np.empty((len(increments), basis.size), dtype=object)
    for k, delta in enumerate(increments):
        for i, (cnt, fact) in enumerate(zip(counts, factorials)):
            value = Fraction(1)
            for a, power in enumerate(cnt):
                if power:
                    value *= Fraction(delta[a]) ** int(power)
            rows[k, i] = value / fact
    return rows


def lift_bv(x: PLPath, p: float, exact: Optional[bool] = None) -> BranchedRoughPath:
    """Canonical branched lift of a piecewise-linear path, built segment by segment with Chen."""
    N = truncation_level(p)
    if N > MAX_LEVEL:
        raise ValueError(f"Lift truncation [p] = {N} exceeds {MAX_LEVEL}")
    exact = x.exact if exact is None else exact
    basis = get_tree_basis(N, x.dim)
    rows = _segment_rows(basis, x.increments(), exact)
    states = [basis.identity(exact)]
    for row in rows:
        states.append(basis.product(states[-1], row))
    grid = list(x.times) if exact else [float(t) for t in x.times]
    return BranchedRoughPath(grid, np.stack(states), p, x.dim)


def perturb_top(X: BranchedRoughPath, tau: LabeledTree,
                phi: Union[Callable[[Scalar], Scalar], Sequence[Scalar]]) -> BranchedRoughPath:
    """(X', τ)_{s,t} = (X, τ)_{s,t} + φ(t) − φ(s) for a top-degree tree τ."""
    if tau.degree != X.N:
        raise ValueError(f"Perturbed tree {tau!r} has degree {tau.degree}, top degree is {X.N}")
    col = X.basis.index[tau]
    phis = [phi(t) for t in X.grid] if callable(phi) else list(phi)
    if len(phis) != X.n_points:
        raise ValueError(f"φ has {len(phis)} values for {X.n_points} grid points")
    values = X.values.copy()
    for i, v in enumerate(phis):
        shift = Fraction(v) - Fraction(phis[0]) if X.exact else float(v) - float(phis[0])
        values[i, col] = values[i, col] + shift
    return BranchedRoughPath(X.grid, values, X.p, X.d)


def is_geometric(X: BranchedRoughPath, tol: Optional[float] = None) -> bool:
    """Degree-2 integration by parts on every grid increment: X(•a)X(•b) = X([•a]_b) + X([•b]_a)."""
    if X.N < 2:
        return True
    if tol is None and not X.exact:
        tol = GEOMETRIC_TOL
    idx = X.basis.index
    for b in range(1, X.n_points):
        incs = X.increments_to(b)
        for a1 in range(1, X.d + 1):
            for a2 in range(a1, X.d + 1):
                lhs = incs[:, idx[bullet(a1)]] * incs[:, idx[bullet(a2)]]
                rhs = incs[:, idx[graft((bullet(a1),), a2)]] + incs[:, idx[graft((bullet(a2),), a1)]]
                gap = lhs - rhs
                if tol is None:
                    if any(g != 0 for g in gap):
                        return False
                elif np.max(np.abs(gap.astype(float))) > tol:
                    return False
    return True


def normalize_problem(f: PolyVectorField, X: BranchedRoughPath,
                      lam: Scalar) -> Tuple[PolyVectorField, BranchedRoughPath]:
    """f ↦ λ⁻¹f, X ↦ δ_λX; the Euler trajectory is unchanged."""
    inv = Fraction(1) / Fraction(lam) if is_exact(lam) else 1.0 / lam
    return f.scale(inv), X.dilate(lam)


# ---------------------------------------------------------------------
# 📐 p-variation, ω and ρ
# ---------------------------------------------------------------------
def _norm_powers(X: BranchedRoughPath, p: float) -> np.ndarray:
    """P[a, b] = ‖X_{t_a,t_b}‖^p for a < b."""
    n = X.n_points
    P = np.zeros((n, n))
    for b in range(1, n):
        P[:b, b] = X.basis.norm(X.increments_to(b)) ** p
    return P


def _variation_table(P: np.ndarray) -> np.ndarray:
    """V[a, b] = sup over grid partitions of [t_a, t_b] of Σ P; one dynamic program per right end."""
    n = len(P)
    V = np.full((n, n), -np.inf)
    np.fill_diagonal(V, 0.0)
    for j in range(1, n):
        V[:j, j] = (V[:j, :j] + P[:j, j][None, :]).max(axis=1)
    return V


def p_variation(X: BranchedRoughPath, p: float, i0: int = 0, i1: Optional[int] = None) -> float:
    """‖X‖_{p-var,[t_{i0}, t_{i1}]} over grid partitions."""
    i1 = X.n_points - 1 if i1 is None else i1
    if i1 <= i0:
        return 0.0
    sub = X.restrict(range(i0, i1 + 1))
    V = _variation_table(_norm_powers(sub, p))
    return float(V[0, -1]) ** (1.0 / p)


class ControlOmega:
    """ω(s, t) = Σ_i ‖Xⁱ‖^p_{p-var,[s,t]} on grid intervals."""

    def __init__(self, paths: Sequence[BranchedRoughPath], p: Optional[float] = None):
        if not paths:
            raise ValueError("ControlOmega needs at least one rough path")
        self.paths = list(paths)
        self.p = p if p is not None else self.paths[0].p
        n = self.paths[0].n_points
        if any(X.n_points != n or [float(t) for t in X.grid] != [float(t) for t in self.paths[0].grid]
               for X in self.paths):
            raise ValueError("ControlOmega needs rough paths on a shared grid")
        self.grid = [float(t) for t in self.paths[0].grid]
        table = np.zeros((n, n))
        for X in self.paths:
            table = table + _variation_table(_norm_powers(X, self.p))
        self.table = table
        logging.debug(f"Control ω built on {n} grid points, ω(0,T)={self.total:.4g}")

    def __call__(self, i: int, j: int) -> float:
        if j <= i:
            return 0.0
        return float(self.table[i, j])

    @property
    def total(self) -> float:
        return float(self.table[0, -1])

    def check_super_additivity(self, tol: float = SUPER_ADDITIVITY_TOL) -> List[Tuple[int, int, int]]:
        """Grid triples s < t < u with ω(s,t) + ω(t,u) > ω(s,u); empty when super-additive."""
        n = len(self.grid)
        bad: List[Tuple[int, int, int]] = []
        for t in range(1, n - 1):
            left = self.table[:t, t][:, None]
            right = self.table[t, t + 1:][None, :]
            whole = self.table[:t, t + 1:]
            gap = left + right - whole - tol * np.maximum(1.0, np.abs(whole))
            for s, u in zip(*np.nonzero(gap > 0)):
                bad.append((int(s), t, int(t + 1 + u)))
        return bad


def rho_distance(X1: BranchedRoughPath, X2: BranchedRoughPath, omega: Optional[ControlOmega] = None,
                 diagnostics: Optional[List[Tuple[int, int]]] = None) -> float:
    """max over forests and grid pairs of |(X¹_{s,t} − X²_{s,t}, τ)| / ω(s,t)^{|τ|/p}."""
    if (X1.N, X1.d, X1.n_points) != (X2.N, X2.d, X2.n_points):
        raise ValueError("ρ needs rough paths of the same level on a shared grid")
    if X1.values.shape == X2.values.shape and np.array_equal(X1.values, X2.values):
        return 0.0
    omega = omega or ControlOmega([X1, X2], X1.p)
    degrees = X1.basis.forest_degrees
    best = 0.0
    for b in range(1, X1.n_points):
        f1 = X1.basis.forest_values(X1.increments_to(b))
        f2 = X2.basis.forest_values(X2.increments_to(b))
        num = np.abs(np.asarray(f1 - f2, dtype=float))
        w = omega.table[:b, b]
        positive = w > 0
        if np.any(positive):
            scaled = num[positive] / w[positive][:, None] ** (degrees[None, :] / omega.p)
            best = max(best, float(scaled.max()))
        for a in np.nonzero(~positive & (num.max(axis=1) > 0))[0]:
            logging.warning(f"❌ ω({a}, {b}) = 0 with a nonzero increment gap; ρ is infinite")
            if diagnostics is not None:
                diagnostics.append((int(a), b))
            best = math.inf
    return best


# ---------------------------------------------------------------------
# 🧮 Solvers
# ---------------------------------------------------------------------
@dataclass
class DefectRecord:
    level: int
    start: int
    end: int
    vector: np.ndarray
    omega: Optional[float] = None

    @property
    def size(self) -> float:
        return float(np.linalg.norm(np.asarray(self.vector, dtype=float)))


@dataclass
class SolveReport:
    backend: str
    indices: List[int]
    times: List[Scalar]
    states: np.ndarray
    defects: List[DefectRecord] = field(default_factory=list)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def defect_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{"level": r.level, "start": r.start, "end": r.end,
                              "defect": r.size, "omega": r.omega} for r in self.defects])

    def to_json(self) -> Dict[str, Any]:
        return {
            "backend": self.backend,
            "indices": self.indices,
            "times": [scalar_to_json(t) for t in self.times],
            "states": [[scalar_to_json(v) for v in row] for row in self.states],
            "defects": [{"level": r.level, "start": r.start, "end": r.end, "defect": r.size,
                         "omega": r.omega} for r in self.defects],
        }


StepFn = Callable[[np.ndarray, int, int], np.ndarray]


def _solve(X: BranchedRoughPath, xi: Sequence[Scalar], partition: Optional[Sequence[int]], step: StepFn,
           backend: str, box: Optional[Sequence[Tuple[float, float]]], exact: bool,
           record_defects: bool) -> SolveReport:
    indices = list(partition) if partition is not None else list(range(X.n_points))
    if len(indices) < 2 or any(b <= a for a, b in zip(indices[:-1], indices[1:])):
        raise ValueError(f"Partition must be at least two increasing grid indices, got {indices}")
    y = np.array([Fraction(v) for v in xi], dtype=object) if exact else np.asarray(xi, dtype=float)
    states = [y]
    for a, b in zip(indices[:-1], indices[1:]):
        y = step(y, a, b)
        if not inside_box(np.asarray(y, dtype=float), box):
            raise DomainExitError(f"{backend} trajectory left the box {box} at t={float(X.grid[b]):.4g}")
        states.append(y)
    states_arr = np.array(states, dtype=object if exact else float)
    report = SolveReport(backend, indices, [X.grid[i] for i in indices], states_arr)
    if record_defects:
        report.defects = _record_defects(report, step)
    return report


def _record_defects(report: SolveReport, step: StepFn) -> List[DefectRecord]:
    """Γ_{s,t} = y_{s,t} − one step over [s,t], on dyadic blocks of the partition."""
    out: List[DefectRecord] = []
    m = len(report.indices) - 1
    level = 1
    while 2 ** level <= m:
        block = 2 ** level
        for k in range(0, m - block + 1, block):
            s, t = k, k + block
            y_s = report.states[s]
            local = step(y_s, report.indices[s], report.indices[t])
            gamma = report.states[t] - local
            out.append(DefectRecord(level, report.indices[s], report.indices[t], gamma))
        level += 1
    return out


def euler_step_fn(X: BranchedRoughPath, f: PolyVectorField, exact: bool = False) -> StepFn:
    """y ↦ y + Σ_τ (X_{s,t}, τ)/σ(τ) f(τ)(y) over trees of degree ≤ [p]."""
    if f.d != X.d:
        raise ValueError(f"Field has d={f.d}, rough path has d={X.d}")
    trees = X.basis.trees
    sigma = X.basis.sigma
    if exact:
        exprs = [f.tree_expr(t) for t in trees]

        def step(y: np.ndarray, a: int, b: int) -> np.ndarray:
            inc = X.increment_array(a, b)
            out = np.array(list(y), dtype=object)
            for i, expr in enumerate(exprs):
                c = Fraction(inc[i]) / sigma[i]
                if c != 0:
                    out = out + np.array([c * v for v in f.evaluate_exact(expr, list(y))], dtype=object)
            return out

        return step

    stack = f.stacked(trees)
    inv_sigma = 1.0 / np.array(sigma, dtype=float)

    def step(y: np.ndarray, a: int, b: int) -> np.ndarray:
        inc = np.asarray(X.increment_array(a, b), dtype=float) * inv_sigma
        return y + inc @ stack(y)

    return step


def solve_euler(X: BranchedRoughPath, f: PolyVectorField, xi: Sequence[Scalar],
                subgrid: Optional[Sequence[int]] = None, exact: bool = False,
                box: Optional[Sequence[Tuple[float, float]]] = None, record_defects: bool = True) -> SolveReport:
    """Branched Euler scheme on grid indices `subgrid` (all grid points by default)."""
    if exact and not (X.exact and f.exact):
        raise ValueError("Exact Euler needs an exact rough path and rational field coefficients")
    step = euler_step_fn(X, f, exact)
    return _solve(X, xi, subgrid, step, "euler", box if box is not None else f.box, exact, record_defects)


def geodesic_step_fn(X: BranchedRoughPath, f: PolyVectorField, tol: Optional[float] = None) -> StepFn:
    """ODE along a path realizing Φ⁻¹ of the rescaled increment, driven by f(ν₁), …, f(ν_K)."""
    phi_map = get_phi_map(X.p, X.d)
    fields = generator_fields(f, phi_map.alphabet)

    def step(y: np.ndarray, a: int, b: int) -> np.ndarray:
        h = phi_map.phi_inverse(rescale(X.increment(a, b)))
        path = realize(h, tol)
        return ode_solve(fields, np.asarray(y, dtype=float), path).final

    return step


def solve_geodesic(X: BranchedRoughPath, f: PolyVectorField, xi: Sequence[float],
                   partition: Optional[Sequence[int]] = None,
                   box: Optional[Sequence[Tuple[float, float]]] = None, record_defects: bool = True,
                   tol: Optional[float] = None) -> SolveReport:
    if f.d != X.d:
        raise ValueError(f"Field has d={f.d}, rough path has d={X.d}")
    step = geodesic_step_fn(X, f, tol)
    return _solve(X, xi, partition, step, "geodesic", box if box is not None else f.box, False, record_defects)


# ---------------------------------------------------------------------
# 📉 Defect diagnostics
# ---------------------------------------------------------------------
@dataclass
class DefectScan:
    slope: Optional[float]
    residual: float
    exact: bool
    levels: List[int]
    omegas: List[float]
    defects: List[float]
    fit: Optional[LogLogFit] = None


def _fine_levels(report: SolveReport) -> List[int]:
    """Dyadic levels whose blocks cover at most 2^-SCAN_COARSE_LEVELS of the partition."""
    m = len(report.indices) - 1
    return list(range(1, m.bit_length() - SCAN_COARSE_LEVELS))


def _scan(records: Sequence[DefectRecord], omega: ControlOmega, levels: Sequence[int]) -> DefectScan:
    by_level: Dict[int, List[Tuple[float, float]]] = {}
    all_zero = True
    for r in records:
        size = r.size
        if size > 0:
            all_zero = False
        if r.level not in levels:
            continue
        w = omega(r.start, r.end)
        r.omega = w
        if size > 0 and w > 0:
            by_level.setdefault(r.level, []).append((w, size))
    if all_zero:
        return DefectScan(None, 0.0, True, [], [], [])
    omegas: Dict[int, float] = {k: float(np.exp(np.mean(np.log([w for w, _ in pts]))))
                                for k, pts in by_level.items()}
    # saturated blocks (ω ≥ 1) are outside the small-ω regime of the fit
    used = sorted(k for k in by_level if omegas[k] < SCAN_OMEGA_CEILING)
    if len(used) < MIN_SCAN_LEVELS:
        raise ValueError(f"Defect scan needs {MIN_SCAN_LEVELS} fine scale levels with nonzero defects "
                         f"and ω < {SCAN_OMEGA_CEILING}, got {len(used)}")
    sizes = [float(np.exp(np.mean(np.log([s for _, s in by_level[k]])))) for k in used]
    fit = fit_loglog([omegas[k] for k in used], sizes)
    return DefectScan(fit.slope, fit.residual, False, used, [omegas[k] for k in used], sizes, fit)


def defect_scan(report: SolveReport, omega: ControlOmega,
                levels: Optional[Sequence[int]] = None) -> DefectScan:
    """Log-log slope of per-level |Γ_{s,t}| against ω(s,t) over the fine dyadic levels."""
    return _scan(report.defects, omega, _fine_levels(report) if levels is None else levels)


def paired_defects(r1: SolveReport, r2: SolveReport) -> List[DefectRecord]:
    """Γ¹ − Γ² on the intervals both reports recorded."""
    second = {(r.level, r.start, r.end): r for r in r2.defects}
    out = []
    for r in r1.defects:
        other = second.get((r.level, r.start, r.end))
        if other is not None:
            out.append(DefectRecord(r.level, r.start, r.end,
                                    np.asarray(r.vector, dtype=float) - np.asarray(other.vector, dtype=float)))
    return out


def paired_defect_scan(r1: SolveReport, r2: SolveReport, omega: ControlOmega,
                       levels: Optional[Sequence[int]] = None) -> DefectScan:
    return _scan(paired_defects(r1, r2), omega, _fine_levels(r1) if levels is None else levels)


def lipschitz_lhs(r1: SolveReport, r2: SolveReport, omega: ControlOmega) -> float:
    """sup over partition pairs of |(y¹_t − y¹_s) − (y²_t − y²_s)| / ω(s,t)^{1/p}."""
    if r1.indices != r2.indices:
        raise ValueError("Solve reports are on different partitions")
    y1 = np.asarray(r1.states, dtype=float)
    y2 = np.asarray(r2.states, dtype=float)
    gap = y1 - y2
    best = 0.0
    for j in range(1, len(r1.indices)):
        num = np.linalg.norm(gap[j][None, :] - gap[:j], axis=1)
        w = np.array([omega(r1.indices[i], r1.indices[j]) for i in range(j)])
        zero = w <= 0
        if np.any(zero & (num > 0)):
            return math.inf
        if np.any(~zero):
            best = max(best, float((num[~zero] / w[~zero] ** (1.0 / omega.p)).max()))
    return best


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
    x = PLPath([Fraction(0), Fraction(1)], [[Fraction(0), Fraction(0)], [Fraction(1), Fraction(1)]])
    X = lift_bv(x, 2.5)
    logging.info(f"{X!r}: X_(0,1) = {X.increment(0, 1)!r}")
