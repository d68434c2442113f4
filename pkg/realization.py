# realization.py
import bisect
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ck_hopf import GroupLikeGL, Scalar, is_exact, scalar_from_json, scalar_to_json
from word_group import (
    PhiMap,
    Word,
    WordSeries,
    NotInGroupError,
    ensure_group,
    lie_coordinates,
    signature,
    standard_factorization,
)

DEFAULT_GROUP_TOL = 1e-9
SPLIT_DENOMINATOR = 10 ** 6


class RealizationHypothesisError(ValueError):
    """Pair inputs are further apart than the stated δ."""


# ---------------------------------------------------------------------
# 📈 Piecewise-linear paths
# ---------------------------------------------------------------------
class PLPath:
    """Piecewise-linear path: breakpoint times and values (object dtype holds Fractions)."""

    def __init__(self, times: Sequence[Scalar], values: Any):
        exact = all(is_exact(t) for t in times) and all(is_exact(v) for v in np.ravel(np.asarray(values, dtype=object)))
        dtype = object if exact else float
        self.times = np.array([Fraction(t) for t in times] if exact else times, dtype=dtype)
        vals = np.array(values, dtype=dtype)
        if vals.ndim == 1:
            vals = vals.reshape(-1, 1)
        if exact:
            vals = np.vectorize(Fraction, otypes=[object])(vals)
        self.values = vals
        if len(self.times) < 2 or len(self.times) != len(self.values):
            raise ValueError(f"PLPath needs at least 2 matching breakpoints, got {len(self.times)} times "
                             f"and {len(self.values)} values")
        if any(self.times[i + 1] <= self.times[i] for i in range(len(self.times) - 1)):
            raise ValueError("PLPath times must be strictly increasing")
        self._variation: Dict[int, Scalar] = {}

    @property
    def exact(self) -> bool:
        return self.values.dtype == object

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def n_segments(self) -> int:
        return len(self.times) - 1

    @classmethod
    def constant(cls, dim: int, exact: bool = False) -> "PLPath":
        zero = Fraction(0) if exact else 0.0
        return cls([zero, zero + 1], [[zero] * dim, [zero] * dim])

    @classmethod
    def from_increments(cls, increments: Sequence[Sequence[Scalar]], dim: int, exact: bool = False) -> "PLPath":
        """Segments on unit-length time steps starting at the origin."""
        if len(increments) == 0:
            return cls.constant(dim, exact)
        zero = Fraction(0) if exact else 0.0
        values = [[zero] * dim]
        for inc in increments:
            values.append([a + (Fraction(b) if exact else float(b)) for a, b in zip(values[-1], inc)])
        times = [Fraction(i) if exact else float(i) for i in range(len(values))]
        return cls(times, values)

    def increments(self) -> np.ndarray:
        return self.values[1:] - self.values[:-1]

    def one_variation(self, j: int) -> Scalar:
        """Σ of |segment increments| of component j."""
        cached = self._variation.get(j)
        if cached is None:
            cached = sum((abs(v) for v in self.increments()[:, j]), Fraction(0) if self.exact else 0.0)
            self._variation[j] = cached
        return cached

    def total_variation(self) -> Scalar:
        return sum((self.one_variation(j) for j in range(self.dim)), Fraction(0) if self.exact else 0.0)

    def concat(self, other: "PLPath") -> "PLPath":
        """Increment-based concatenation; other's time axis is shifted to start where self ends."""
        if other.dim != self.dim:
            raise ValueError(f"Cannot concatenate paths of dimension {self.dim} and {other.dim}")
        exact = self.exact and other.exact
        shift_t = self.times[-1] - other.times[0]
        shift_v = self.values[-1] - other.values[0]
        times = list(self.times) + [t + shift_t for t in other.times[1:]]
        values = [list(v) for v in self.values] + [list(v + shift_v) for v in other.values[1:]]
        if not exact:
            times = [float(t) for t in times]
            values = [[float(a) for a in v] for v in values]
        return PLPath(times, values)

    def time_reverse(self) -> "PLPath":
        t0, t1 = self.times[0], self.times[-1]
        times = [t0 + t1 - t for t in self.times[::-1]]
        values = [list(v) for v in self.values[::-1]]
        return PLPath(times, values)

    def reparametrize(self, start: Scalar = 0, end: Scalar = 1) -> "PLPath":
        """Uniform segment times on [start, end]; increments unchanged."""
        m = self.n_segments
        if self.exact:
            start, end = Fraction(start), Fraction(end)
            times = [start + (end - start) * Fraction(i, m) for i in range(m + 1)]
        else:
            times = list(np.linspace(float(start), float(end), m + 1))
        return PLPath(times, [list(v) for v in self.values])

    def drop_zero_segments(self) -> "PLPath":
        incs = self.increments()
        keep = [inc for inc in incs if any(v != 0 for v in inc)]
        path = PLPath.from_increments(keep, self.dim, self.exact)
        shift = self.values[0]
        return PLPath(list(path.times), [list(v + shift) for v in path.values])

    def scale_components(self, factors: Sequence[Scalar]) -> "PLPath":
        factors = np.array(list(factors), dtype=self.values.dtype)
        base = self.values[0]
        return PLPath(list(self.times), [list(base + (v - base) * factors) for v in self.values])

    def evaluate(self, t: Scalar) -> np.ndarray:
        i = bisect.bisect_right(list(self.times), t) - 1
        i = min(max(i, 0), self.n_segments - 1)
        t0, t1 = self.times[i], self.times[i + 1]
        w = (t - t0) / (t1 - t0)
        return self.values[i] + (self.values[i + 1] - self.values[i]) * w

    def refine(self, times: Sequence[Scalar]) -> "PLPath":
        """Same path with extra breakpoints inserted."""
        grid = sorted(set(list(self.times)) | {t for t in times if self.times[0] <= t <= self.times[-1]})
        return PLPath(grid, [list(self.evaluate(t)) for t in grid])

    def difference(self, other: "PLPath") -> "PLPath":
        grid = sorted(set(list(self.times)) | set(list(other.times)))
        return PLPath(grid, [list(self.evaluate(t) - other.evaluate(t)) for t in grid])

    def __eq__(self, other: Any) -> bool:
        return (isinstance(other, PLPath) and self.values.shape == other.values.shape
                and bool(np.all(self.times == other.times)) and bool(np.all(self.values == other.values)))

    def __repr__(self) -> str:
        return f"PLPath(dim={self.dim}, segments={self.n_segments}, exact={self.exact})"

    def to_json(self) -> Dict[str, Any]:
        return {
            "times": [scalar_to_json(t) for t in self.times],
            "values": [[scalar_to_json(v) for v in row] for row in self.values],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "PLPath":
        return cls([scalar_from_json(t) for t in data["times"]],
                   [[scalar_from_json(v) for v in row] for row in data["values"]])


def time_reverse(x: PLPath) -> PLPath:
    return x.time_reverse()


def concat(x: PLPath, y: PLPath) -> PLPath:
    return x.concat(y)


def one_variation(x: PLPath, j: int) -> Scalar:
    return x.one_variation(j)


def one_variation_distance(x1: PLPath, x2: PLPath) -> float:
    """‖x¹ − x²‖_{1-var}, summed over components."""
    return float(x1.difference(x2).total_variation())


def random_pl_path(rng: np.random.Generator, dim: int, n_segments: int, exact: bool = False,
                   scale: float = 1.0) -> PLPath:
    if exact:
        incs = [[Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5))) for _ in range(dim)]
                for _ in range(n_segments)]
    else:
        incs = (rng.normal(size=(n_segments, dim)) * scale / np.sqrt(n_segments)).tolist()
    return PLPath.from_increments(incs, dim, exact).reparametrize()


# ---------------------------------------------------------------------
# 🧭 Single realization
# ---------------------------------------------------------------------
def _split_scale(c: Scalar, a: int, b: int, exact: bool) -> Tuple[Scalar, Scalar]:
    """s·t = c with |s| ≈ |c|^{a/(a+b)} and t ≈ |c|^{b/(a+b)}."""
    sign = 1 if c > 0 else -1
    if exact:
        r = Fraction(abs(float(c)) ** (a / (a + b))).limit_denominator(SPLIT_DENOMINATOR)
        if r == 0:
            r = Fraction(1, SPLIT_DENOMINATOR)
        return sign * r, abs(Fraction(c)) / r
    mag = abs(float(c))
    return sign * mag ** (a / (a + b)), mag ** (b / (a + b))


def _bracket_path(lw: Word, c: Scalar, weights: Sequence[int], exact: bool) -> PLPath:
    K = len(weights)
    if len(lw) == 1:
        zero = Fraction(0) if exact else 0.0
        inc = [zero] * K
        inc[lw[0] - 1] = c
        return PLPath.from_increments([inc], K, exact)
    u, v = standard_factorization(lw)
    a = sum(weights[k - 1] for k in u)
    b = sum(weights[k - 1] for k in v)
    s, t = _split_scale(c, a, b, exact)
    gu = _bracket_path(u, s, weights, exact)
    gv = _bracket_path(v, t, weights, exact)
    # group commutator loop
    return gu.concat(gv).concat(gu.time_reverse()).concat(gv.time_reverse())


def realize_top(top: Dict[Word, Scalar], weights: Sequence[int], n: int, exact: bool,
                tol: Optional[float] = None) -> PLPath:
    """Path whose degree-n signature is 1 + top, for a homogeneous Lie element top."""
    K = len(weights)
    coords, leftover = lie_coordinates(WordSeries(weights, n, top))
    if (leftover != 0) if tol is None else (leftover > tol):
        raise NotInGroupError(f"Top-degree part is not a Lie element (leftover {leftover:.3e})")
    path = PLPath.constant(K, exact)
    for lw in sorted(coords):
        c = coords[lw]
        if c == 0:
            continue
        path = path.concat(_bracket_path(lw, c, weights, exact))
    return path


def _realize(h: WordSeries, exact: bool, tol: Optional[float]) -> PLPath:
    K = len(h.weights)
    n = h.n
    z = _realize(h.truncate(n - 1), exact, tol) if n > 1 else PLPath.constant(K, exact)
    k = signature(z, h.weights, n).inverse() * h
    return z.concat(realize_top(k.homogeneous(n), h.weights, n, exact, tol))


def realize(h: WordSeries, tol: Optional[float] = None) -> PLPath:
    """Bounded-variation path x on [0, 1] with S_n(x)_{0,1} = h."""
    exact = h.exact
    if tol is None and not exact:
        tol = DEFAULT_GROUP_TOL
    ensure_group(h, None if exact else tol)
    if not exact:
        h = h.to_float()
    if h.n == 0:
        return PLPath.constant(len(h.weights), exact)
    return _realize(h, exact, None if exact else tol).drop_zero_segments().reparametrize()


# ---------------------------------------------------------------------
# 👯 Paired realization
# ---------------------------------------------------------------------
def _first_case(l1: Dict[Word, Scalar], l2: Dict[Word, Scalar], weights: Sequence[int], n: int,
                delta: float, tol: float) -> Tuple[PLPath, PLPath]:
    words = set(l1) | set(l2)
    m = {w: (l2.get(w, 0.0) - l1.get(w, 0.0)) / delta for w in words}
    base = {w: l1.get(w, 0.0) - m[w] for w in words}
    z = realize_top(base, weights, n, False, tol)
    y = realize_top(m, weights, n, False, tol)
    y_tilde = y.scale_components([(1.0 + delta) ** (wt / n) for wt in weights])
    return z.concat(y), z.concat(y_tilde)


def _realize_pair(h1: WordSeries, h2: WordSeries, delta: float, tol: float) -> Tuple[PLPath, PLPath]:
    K = len(h1.weights)
    n = h1.n
    if n > 1:
        z1, z2 = _realize_pair(h1.truncate(n - 1), h2.truncate(n - 1), delta, tol)
    else:
        z1 = z2 = PLPath.constant(K)
    k1 = signature(z1, h1.weights, n).inverse() * h1
    k2 = signature(z2, h2.weights, n).inverse() * h2
    y1, y2 = _first_case(k1.homogeneous(n), k2.homogeneous(n), h1.weights, n, delta, tol)
    return z1.concat(y1), z2.concat(y2)


def realize_pair(h1: WordSeries, h2: WordSeries, delta: float,
                 tol: float = DEFAULT_GROUP_TOL) -> Tuple[PLPath, PLPath]:
    """Time-aligned paths with S_n(xⁱ) = hⁱ and ‖x¹ − x²‖_{1-var} ≤ δM."""
    if h1.weights != h2.weights or h1.n != h2.n:
        raise ValueError("Pair realization needs series over the same alphabet and truncation")
    if delta <= 0:
        raise ValueError(f"δ must be positive, got {delta}")
    gap = h1.max_difference(h2)
    if gap > delta * (1 + 1e-9):
        raise RealizationHypothesisError(f"max |(h¹ − h², w)| = {gap:.3e} exceeds δ = {delta:.3e}")
    ensure_group(h1, tol)
    ensure_group(h2, tol)
    x1, x2 = _realize_pair(h1.to_float(), h2.to_float(), float(delta), tol)
    return x1.reparametrize(), x2.reparametrize()


# ---------------------------------------------------------------------
# 🌐 Realization of GL group-likes
# ---------------------------------------------------------------------
def realize_gl(g: GroupLikeGL, phi_map: PhiMap, tol: Optional[float] = None) -> PLPath:
    """Path x with Φ(S_[p](x)) = g."""
    return realize(phi_map.phi_inverse(g), tol)


@dataclass
class PairRealization:
    x1: PLPath
    x2: PLPath
    delta: float
    word_delta: float
    variation_1: float
    variation_2: float
    difference: float

    @property
    def ratio(self) -> float:
        return self.difference / self.delta if self.delta > 0 else 0.0


def realize_gl_pair(g1: GroupLikeGL, g2: GroupLikeGL, delta: float, phi_map: PhiMap,
                    tol: float = DEFAULT_GROUP_TOL) -> PairRealization:
    gap = g1.max_difference(g2)
    if gap > delta * (1 + 1e-9):
        raise RealizationHypothesisError(f"max |(g¹ − g², τ)| = {gap:.3e} exceeds δ = {delta:.3e}")
    h1 = phi_map.phi_inverse(g1).to_float()
    h2 = phi_map.phi_inverse(g2).to_float()
    word_delta = h1.max_difference(h2) or delta
    x1, x2 = realize_pair(h1, h2, word_delta, tol)
    result = PairRealization(x1, x2, delta, word_delta, float(x1.total_variation()),
                             float(x2.total_variation()), one_variation_distance(x1, x2))
    logging.debug(f"GL pair realized: δ={delta:.2e}, word δ={word_delta:.2e}, ratio={result.ratio:.3f}")
    return result


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
    from word_group import get_alphabet, lie_series, word_exp
    alphabet = get_alphabet(2.5, 2)
    h = word_exp(lie_series(alphabet.weights, alphabet.n, {(1,): Fraction(1), (1, 2): Fraction(1, 2)}))
    x = realize(h)
    logging.info(f"{x!r} with 1-variation {x.total_variation()}")
