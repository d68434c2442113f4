# vector_fields.py
import itertools
import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from ck_hopf import Scalar, is_exact, scalar_from_json, scalar_to_json
from forest_algebra import LabeledTree, LabelError, bullet
from realization import PLPath
from word_group import WeightedAlphabet, Word, WordSeries

DEFAULT_ODE_TOL = 1e-10
MAX_DOUBLINGS = 18
HOLDER_MIN_SEPARATION = 1e-3
DEFAULT_RESOLUTION = {1: 201, 2: 31, 3: 11}
BOX_SLACK = 1e-9

FieldStack = Callable[[np.ndarray], np.ndarray]


class DegreeBudgetError(ValueError):
    """Tree or word needs more derivatives than the field's budget."""


class DomainExitError(RuntimeError):
    """Trajectory left the box on which the field is estimated."""


class ToleranceNotReachedError(RuntimeError):
    """Step doubling ran out of budget."""


# ---------------------------------------------------------------------
# 🧲 Polynomial vector fields
# ---------------------------------------------------------------------
def _to_sympy(v: Scalar) -> sympy.Expr:
    if isinstance(v, Fraction):
        return sympy.Rational(v.numerator, v.denominator)
    if isinstance(v, int):
        return sympy.Integer(v)
    return sympy.Float(v)


def _from_sympy(v: sympy.Expr) -> Scalar:
    if v.is_Rational:
        return Fraction(int(v.p), int(v.q))
    return float(v)


def _grid_values(fn: Callable, pts: np.ndarray, count: int) -> np.ndarray:
    """Evaluate a lambdified list of expressions on points; constants are broadcast."""
    out = fn(*pts.T)
    cols = [np.broadcast_to(np.asarray(v, dtype=float), (len(pts),)) for v in out]
    return np.stack(cols, axis=1) if cols else np.zeros((len(pts), count))


class PolyVectorField:
    """f = (f₁,…,f_d), each f_a: ℝ^e → ℝ^e polynomial, with a box for norm estimates."""

    def __init__(self, e: int, d: int, components: Sequence[Any],
                 box: Optional[Sequence[Tuple[float, float]]] = None):
        if e < 1 or d < 1:
            raise ValueError(f"Field needs e >= 1 and d >= 1, got e={e}, d={d}")
        if len(components) != d:
            raise ValueError(f"Expected {d} components, got {len(components)}")
        self.e = e
        self.d = d
        self.symbols: Tuple[sympy.Symbol, ...] = tuple(sympy.symbols(f"y1:{e + 1}"))
        self.components: List[sympy.Matrix] = []
        for comp in components:
            m = sympy.Matrix(comp)
            if m.shape != (e, 1):
                raise ValueError(f"Component shape {m.shape} does not match ({e}, 1)")
            self.components.append(m.applyfunc(sympy.expand))
        self.box: List[Tuple[float, float]] = [tuple(b) for b in (box or [(-1.0, 1.0)] * e)]
        if len(self.box) != e or any(lo >= hi for lo, hi in self.box):
            raise ValueError(f"Invalid box {self.box} for e={e}")
        self._trees: Dict[LabeledTree, sympy.Matrix] = {}
        self._words: Dict[Tuple[Tuple[LabeledTree, ...], Word], sympy.Matrix] = {}
        self._numeric: Dict[Any, Callable] = {}
        self._lock = threading.RLock()

    # -- construction -------------------------------------------------
    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "PolyVectorField":
        e, d = int(data["e"]), int(data["d"])
        syms = sympy.symbols(f"y1:{e + 1}")
        components = []
        for comp in data["components"]:
            vec = [sympy.Integer(0)] * e
            for mono in comp["monomials"]:
                exps = mono["exponents"]
                coeff = mono["coeff"]
                coeffs = coeff if isinstance(coeff, list) else [coeff] * e if e == 1 else None
                if coeffs is None:
                    raise ValueError("Scalar coeff is only allowed when e = 1")
                term = sympy.Mul(*[s ** int(k) for s, k in zip(syms, exps)])
                for i, c in enumerate(coeffs):
                    vec[i] += _to_sympy(scalar_from_json(c)) * term
            components.append(sympy.Matrix(vec))
        box = [tuple(float(v) for v in b) for b in data["box"]] if data.get("box") else None
        return cls(e, d, components, box)

    def to_json(self) -> Dict[str, Any]:
        comps = []
        for comp in self.components:
            by_exp: Dict[Tuple[int, ...], List[Scalar]] = {}
            for i in range(self.e):
                poly = sympy.Poly(comp[i], *self.symbols)
                for exps, c in poly.terms():
                    by_exp.setdefault(tuple(exps), [0] * self.e)[i] = _from_sympy(c)
            comps.append({"monomials": [{"exponents": list(k), "coeff": [scalar_to_json(v) for v in vals]}
                                        for k, vals in sorted(by_exp.items()) if any(v != 0 for v in vals)]})
        return {"e": self.e, "d": self.d, "components": comps, "box": [list(b) for b in self.box]}

    def _with(self, components: Sequence[sympy.Matrix], box=None) -> "PolyVectorField":
        return PolyVectorField(self.e, self.d, components, box or self.box)

    def scale(self, c: Scalar) -> "PolyVectorField":
        s = _to_sympy(c)
        return self._with([comp * s for comp in self.components])

    def difference(self, other: "PolyVectorField") -> "PolyVectorField":
        if (self.e, self.d) != (other.e, other.d):
            raise ValueError("Fields of different shapes")
        return self._with([a - b for a, b in zip(self.components, other.components)])

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        return self._with([a + b for a, b in zip(self.components, other.components)])

    def with_box(self, box: Sequence[Tuple[float, float]]) -> "PolyVectorField":
        return self._with(self.components, box)

    @property
    def exact(self) -> bool:
        return all(c.is_Rational for comp in self.components for entry in comp
                   for c in sympy.Poly(entry, *self.symbols).coeffs())

    @property
    def polynomial_degree(self) -> int:
        degs = [int(sympy.Poly(entry, *self.symbols).total_degree())
                for comp in self.components for entry in comp if entry != 0]
        return max(degs, default=0)

    def __repr__(self) -> str:
        return f"PolyVectorField(e={self.e}, d={self.d}, degree={self.polynomial_degree})"

    # -- symbolic building blocks ------------------------------------
    def tree_expr(self, tree: LabeledTree) -> sympy.Matrix:
        """f(τ) as a symbolic e-vector."""
        if tree.max_label() > self.d:
            raise LabelError(f"Tree {tree!r} uses labels outside 1..{self.d}")
        with self._lock:
            cached = self._trees.get(tree)
        if cached is not None:
            return cached
        expr = self.components[tree.label - 1]
        if tree.children:
            children = [self.tree_expr(c) for c in tree.children]
            subs = {}
            for i, child in enumerate(children):
                direction = sympy.symbols(f"u{i}_1:{self.e + 1}")
                expr = expr.jacobian(self.symbols) * sympy.Matrix(direction)
                subs.update({u: child[j] for j, u in enumerate(direction)})
            expr = expr.xreplace(subs).applyfunc(sympy.expand)
        with self._lock:
            self._trees[tree] = expr
        return expr

    def word_expr(self, generators: Sequence[LabeledTree], w: Word) -> sympy.Matrix:
        """F^w: F^ε = I, F^{k₁⋯k_m} = dF^{k₂⋯k_m}(f(ν_{k₁}))."""
        key = (tuple(generators), tuple(w))
        with self._lock:
            cached = self._words.get(key)
        if cached is not None:
            return cached
        if not w:
            expr = sympy.Matrix(self.symbols)
        else:
            inner = self.word_expr(generators, w[1:])
            expr = (inner.jacobian(self.symbols) * self.tree_expr(generators[w[0] - 1])).applyfunc(sympy.expand)
        with self._lock:
            self._words[key] = expr
        return expr

    def derivative_exprs(self, a: int, k: int) -> List[sympy.Expr]:
        """Entries of d^k f_a unfolded as an e × e^k matrix, row-major."""
        comp = self.components[a - 1]
        out = []
        for i in range(self.e):
            for idx in itertools.product(range(self.e), repeat=k):
                expr = comp[i]
                for j in idx:
                    expr = sympy.diff(expr, self.symbols[j])
                out.append(expr)
        return out

    # -- numeric evaluation ------------------------------------------
    def _lambdified(self, key: Any, exprs: Sequence[sympy.Expr]) -> Callable:
        with self._lock:
            fn = self._numeric.get(key)
            if fn is None:
                fn = sympy.lambdify(self.symbols, list(exprs), "numpy")
                self._numeric[key] = fn
            return fn

    def stacked(self, trees: Sequence[LabeledTree]) -> FieldStack:
        """y ↦ array (len(trees), e) of f(τ)(y)."""
        trees = tuple(trees)
        exprs = [entry for t in trees for entry in self.tree_expr(t)]
        fn = self._lambdified(("stack", trees), exprs)
        shape = (len(trees), self.e)

        def evaluate(y: np.ndarray) -> np.ndarray:
            return np.array(fn(*np.asarray(y, dtype=float)), dtype=float).reshape(shape)

        return evaluate

    def driving_fields(self) -> FieldStack:
        return self.stacked([bullet(a) for a in range(1, self.d + 1)])

    def evaluate_exact(self, expr: sympy.Matrix, y: Sequence[Scalar]) -> List[Scalar]:
        subs = {s: _to_sympy(v) for s, v in zip(self.symbols, y)}
        return [_from_sympy(entry.xreplace(subs)) for entry in expr]

    def grid(self, resolution: int, box: Optional[Sequence[Tuple[float, float]]] = None) -> np.ndarray:
        axes = [np.linspace(lo, hi, resolution) for lo, hi in (box or self.box)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def grid_values(self, exprs: Sequence[sympy.Expr], pts: np.ndarray, key: Any) -> np.ndarray:
        return _grid_values(self._lambdified(key, exprs), pts, len(exprs))


def elementary_differential(f: PolyVectorField, tree: LabeledTree, y: Sequence[Scalar],
                            budget: Optional[int] = None) -> Union[np.ndarray, List[Scalar]]:
    """f(τ)(y); exact when y is rational and f has rational coefficients."""
    if budget is not None and tree.degree > budget:
        raise DegreeBudgetError(f"Tree {tree!r} of degree {tree.degree} exceeds budget {budget}")
    if all(is_exact(v) for v in y):
        return f.evaluate_exact(f.tree_expr(tree), y)
    return f.stacked([tree])(np.asarray(y, dtype=float))[0]


def generator_fields(f: PolyVectorField, alphabet: WeightedAlphabet) -> FieldStack:
    """y ↦ (f(ν₁)(y), …, f(ν_K)(y)) as a (K, e) array."""
    return f.stacked(alphabet.generators)


@dataclass
class WordMap:
    word: Word
    expr: sympy.Matrix
    fn: Callable

    def __call__(self, y: Sequence[float]) -> np.ndarray:
        return np.array(self.fn(*np.asarray(y, dtype=float)), dtype=float).reshape(-1)


def build_F_w(f: PolyVectorField, alphabet: WeightedAlphabet, w: Word,
              budget: Optional[int] = None) -> WordMap:
    w = tuple(w)
    if budget is not None and alphabet.word_degree(w) > budget:
        raise DegreeBudgetError(f"Word {w} of degree {alphabet.word_degree(w)} exceeds budget {budget}")
    expr = f.word_expr(alphabet.generators, w)
    fn = f._lambdified(("word", alphabet.generators, w), list(expr))
    return WordMap(w, expr, fn)


def signature_taylor_step(f: PolyVectorField, alphabet: WeightedAlphabet, h: WordSeries,
                          y: Sequence[float]) -> np.ndarray:
    """Σ_{‖w‖ ≤ n} (h, w) F^w(y)."""
    out = np.zeros(f.e)
    for w, c in h.items():
        out = out + float(c) * build_F_w(f, alphabet, w)(y)
    return out


# ---------------------------------------------------------------------
# 🚀 ODE along piecewise-linear drivers
# ---------------------------------------------------------------------
@dataclass
class OdeTrajectory:
    times: np.ndarray
    states: np.ndarray

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def _as_stack(fields: Union[FieldStack, Sequence[Callable]]) -> FieldStack:
    if callable(fields):
        return fields
    fns = list(fields)
    return lambda y: np.stack([np.asarray(fn(y), dtype=float) for fn in fns])


def _rk4(stack: FieldStack, y: np.ndarray, delta: np.ndarray, steps: int) -> np.ndarray:
    h = 1.0 / steps

    def drive(z: np.ndarray) -> np.ndarray:
        return stack(z).T @ delta

    for _ in range(steps):
        k1 = drive(y)
        k2 = drive(y + 0.5 * h * k1)
        k3 = drive(y + 0.5 * h * k2)
        k4 = drive(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def inside_box(y: np.ndarray, box: Optional[Sequence[Tuple[float, float]]]) -> bool:
    if box is None:
        return True
    return all(lo - BOX_SLACK * (hi - lo) <= v <= hi + BOX_SLACK * (hi - lo) for v, (lo, hi) in zip(y, box))


def ode_solve(fields: Union[FieldStack, Sequence[Callable]], xi: Sequence[float], x: PLPath,
              box: Optional[Sequence[Tuple[float, float]]] = None, tol: float = DEFAULT_ODE_TOL,
              max_doublings: int = MAX_DOUBLINGS) -> OdeTrajectory:
    """dy = Σ_j V_j(y) dx^j, RK4 per linear piece with step doubling until successive results agree."""
    stack = _as_stack(fields)
    y = np.asarray(xi, dtype=float).copy()
    if not inside_box(y, box):
        raise DomainExitError(f"Initial value {y} outside box {box}")
    states = [y.copy()]
    for delta in np.asarray(x.increments(), dtype=float):
        if not np.any(delta):
            states.append(y.copy())
            continue
        prev = _rk4(stack, y, delta, 1)
        steps = 1
        for _ in range(max_doublings):
            steps *= 2
            cur = _rk4(stack, y, delta, steps)
            if np.linalg.norm(cur - prev) <= tol * max(1.0, np.linalg.norm(cur)):
                break
            prev = cur
        else:
            raise ToleranceNotReachedError(f"Tolerance {tol} not reached with {steps} steps")
        y = cur
        if not np.all(np.isfinite(y)) or not inside_box(y, box):
            raise DomainExitError(f"Trajectory left the box {box} at {y}")
        states.append(y.copy())
    return OdeTrajectory(np.asarray(x.times, dtype=float), np.array(states))


# ---------------------------------------------------------------------
# 📏 Lip(γ) estimates
# ---------------------------------------------------------------------
@dataclass
class LipGammaEstimate:
    gamma: float
    value: float
    grid_resolution: int
    box: List[Tuple[float, float]]
    sup_norms: List[float] = field(default_factory=list)
    holder: float = 0.0


def floor_strict(gamma: float) -> int:
    """Largest integer strictly below γ."""
    return int(math.ceil(gamma)) - 1


def _spectral_norms(A: np.ndarray) -> np.ndarray:
    """Largest singular value of each matrix in a (n, e, m) stack."""
    if A.shape[2] == 1:
        return np.linalg.norm(A[:, :, 0], axis=1)
    if A.shape[1] == 1:
        return np.linalg.norm(A[:, 0, :], axis=1)
    gram = A @ np.swapaxes(A, 1, 2)
    return np.sqrt(np.clip(np.linalg.eigvalsh(gram)[:, -1], 0.0, None))


def _holder_quotient(pts: np.ndarray, tensors: np.ndarray, exponent: float, min_sep: float,
                     chunk: int = 256) -> float:
    best = 0.0
    n = len(pts)
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        dist = np.linalg.norm(pts[start:stop, None, :] - pts[None, :, :], axis=-1)
        mask = dist >= min_sep
        if not np.any(mask):
            continue
        ii, jj = np.nonzero(mask)
        diffs = tensors[start + ii] - tensors[jj]
        quot = _spectral_norms(diffs) / dist[ii, jj] ** exponent
        best = max(best, float(quot.max()))
    return best


def component_lip_norm(f: PolyVectorField, a: int, gamma: float, resolution: int,
                       box: Optional[Sequence[Tuple[float, float]]] = None,
                       min_sep: float = HOLDER_MIN_SEPARATION) -> Tuple[List[float], float]:
    pts = f.grid(resolution, box)
    top = floor_strict(gamma)
    sups: List[float] = []
    tensors = None
    for k in range(top + 1):
        exprs = f.derivative_exprs(a, k)
        vals = f.grid_values(exprs, pts, ("deriv", a, k)).reshape(len(pts), f.e, f.e ** k)
        sups.append(float(_spectral_norms(vals).max()))
        tensors = vals
    holder = _holder_quotient(pts, tensors, gamma - top, min_sep)
    return sups, holder


def lip_gamma_norm(f: PolyVectorField, gamma: float, resolution: Optional[int] = None,
                   box: Optional[Sequence[Tuple[float, float]]] = None,
                   components: Optional[Sequence[int]] = None) -> LipGammaEstimate:
    """Grid estimate of |f|_{Lip(γ)}: max over components of derivative sups and the top Hölder quotient."""
    if gamma <= 0:
        raise ValueError(f"γ must be positive, got {gamma}")
    box = [tuple(b) for b in (box or f.box)]
    if any(lo >= hi for lo, hi in box):
        raise ValueError(f"Empty box {box}")
    resolution = resolution or DEFAULT_RESOLUTION.get(f.e, 7)
    sups = [0.0] * (floor_strict(gamma) + 1)
    holder = 0.0
    for a in (components or range(1, f.d + 1)):
        comp_sups, comp_holder = component_lip_norm(f, a, gamma, resolution, box)
        sups = [max(s, c) for s, c in zip(sups, comp_sups)]
        holder = max(holder, comp_holder)
    value = max(max(sups), holder)
    return LipGammaEstimate(gamma, value, resolution, box, sups, holder)


def sup_norm(f: PolyVectorField, a: int, resolution: Optional[int] = None) -> float:
    resolution = resolution or DEFAULT_RESOLUTION.get(f.e, 7)
    pts = f.grid(resolution)
    vals = f.grid_values(f.derivative_exprs(a, 0), pts, ("deriv", a, 0))
    return float(np.linalg.norm(vals, axis=1).max())


def lip_one_constant(f: PolyVectorField, a: int, resolution: Optional[int] = None) -> float:
    """max(|f_a|_{Lip(1)} grid estimate, sup‖df_a‖)."""
    resolution = resolution or DEFAULT_RESOLUTION.get(f.e, 7)
    est = lip_gamma_norm(f, 1.0, resolution, components=[a])
    pts = f.grid(resolution)
    jac = f.grid_values(f.derivative_exprs(a, 1), pts, ("deriv", a, 1)).reshape(len(pts), f.e, f.e)
    return max(est.value, float(_spectral_norms(jac).max()))


# ---------------------------------------------------------------------
# ✅ ODE stability estimates with explicit constants
# ---------------------------------------------------------------------
@dataclass
class OdeEstimateReport:
    lhs1: float
    rhs1: float
    lhs2: float
    rhs2: float
    passed: bool
    M: List[float]
    l: List[float]
    path_gaps: List[float]
    field_gaps: List[float]

    def to_json(self) -> Dict[str, Any]:
        return {"lhs1": self.lhs1, "rhs1": self.rhs1, "lhs2": self.lhs2, "rhs2": self.rhs2,
                "pass": self.passed, "M": self.M, "l": self.l,
                "path_gaps": self.path_gaps, "field_gaps": self.field_gaps}


def _merged_refined_grid(x: PLPath, x_tilde: PLPath, refine: int) -> List[float]:
    base = sorted(set(float(t) for t in x.times) | set(float(t) for t in x_tilde.times))
    grid = []
    for t0, t1 in zip(base[:-1], base[1:]):
        grid.extend(t0 + (t1 - t0) * i / refine for i in range(refine))
    grid.append(base[-1])
    return grid


def check_ode_estimates(f: PolyVectorField, f_tilde: PolyVectorField, x: PLPath, x_tilde: PLPath,
                        y0: Sequence[float], y0_tilde: Sequence[float], slack: float = 1e-6,
                        refine: int = 4, tol: float = DEFAULT_ODE_TOL,
                        resolution: Optional[int] = None) -> OdeEstimateReport:
    """Both sides of the two ODE stability inequalities with their explicit constants."""
    K = f.d
    if (f_tilde.e, f_tilde.d) != (f.e, K) or x.dim != K or x_tilde.dim != K:
        raise ValueError("Fields and drivers must share e and K")
    grid = _merged_refined_grid(x, x_tilde, refine)
    x_ref = PLPath(grid, [list(np.asarray(x.evaluate(t), dtype=float)) for t in grid])
    xt_ref = PLPath(grid, [list(np.asarray(x_tilde.evaluate(t), dtype=float)) for t in grid])
    y = ode_solve(f.driving_fields(), y0, x_ref, f.box, tol).states
    y_t = ode_solve(f_tilde.driving_fields(), y0_tilde, xt_ref, f_tilde.box, tol).states
    lhs1 = float(np.linalg.norm((y - y[0]) - (y_t - y_t[0]), axis=1).max())
    lhs2 = float(np.linalg.norm(y - y_t, axis=1).max())

    gap0 = float(np.linalg.norm(np.asarray(y0, dtype=float) - np.asarray(y0_tilde, dtype=float)))
    M = [max(lip_one_constant(f, j, resolution), lip_one_constant(f_tilde, j, resolution)) for j in range(1, K + 1)]
    l = [max(float(x.one_variation(j)), float(x_tilde.one_variation(j))) for j in range(K)]
    diff = x_ref.difference(xt_ref)
    path_gaps = [float(diff.one_variation(j)) for j in range(K)]
    delta_f = f.difference(f_tilde)
    field_gaps = [sup_norm(delta_f, j, resolution) for j in range(1, K + 1)]

    growth = math.exp(2.0 * sum(m * lj for m, lj in zip(M, l)))
    rhs1 = sum(m * lj * gap0 + m * dx + lj * df for m, lj, dx, df in zip(M, l, path_gaps, field_gaps)) * growth
    rhs2 = (gap0 + sum(m * dx for m, dx in zip(M, path_gaps)) + sum(lj * df for lj, df in zip(l, field_gaps))) * growth
    floor = 10 * tol
    passed = lhs1 <= rhs1 * (1 + slack) + floor and lhs2 <= rhs2 * (1 + slack) + floor
    if not passed:
        logging.warning(f"❌ ODE estimate violated: lhs1={lhs1:.3e} rhs1={rhs1:.3e} lhs2={lhs2:.3e} rhs2={rhs2:.3e}")
    return OdeEstimateReport(lhs1, rhs1, lhs2, rhs2, passed, M, l, path_gaps, field_gaps)


# ---------------------------------------------------------------------
# 🎲 Random fields
# ---------------------------------------------------------------------
def _monomials(e: int, degree: int) -> List[Tuple[int, ...]]:
    return [exps for exps in itertools.product(range(degree + 1), repeat=e) if sum(exps) <= degree]


def random_poly_field(rng: np.random.Generator, e: int, d: int, degree: int = 3,
                      box: Optional[Sequence[Tuple[float, float]]] = None, scale: float = 1.0,
                      resolution: int = 9) -> PolyVectorField:
    """Random rational-coefficient field with grid sup of every component about `scale`."""
    syms = sympy.symbols(f"y1:{e + 1}")
    monos = _monomials(e, degree)
    components = []
    for _ in range(d):
        vec = []
        for _ in range(e):
            expr = sympy.Integer(0)
            for exps in monos:
                c = Fraction(float(rng.normal()) / (1 + sum(exps))).limit_denominator(1000)
                expr += _to_sympy(c) * sympy.Mul(*[s ** k for s, k in zip(syms, exps)])
            vec.append(expr)
        components.append(sympy.Matrix(vec))
    raw = PolyVectorField(e, d, components, box)
    normalized = []
    for a in range(1, d + 1):
        sup = sup_norm(raw, a, resolution) or 1.0
        factor = _to_sympy(Fraction(scale / sup).limit_denominator(10 ** 6))
        normalized.append(raw.components[a - 1] * factor)
    return PolyVectorField(e, d, normalized, raw.box)


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
    y = sympy.symbols("y1")
    f = PolyVectorField(1, 1, [sympy.Matrix([y ** 2])])
    ladder = LabeledTree(1, (bullet(1),))
    logging.info(f"f(ℓ) = {f.tree_expr(ladder)[0]}")
