# word_group.py
import hashlib
import itertools
import json
import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ck_hopf import (
    FormalSum,
    GroupLikeGL,
    Scalar,
    gl_product_sums,
    is_exact,
    scalar_from_json,
    scalar_to_json,
)
from forest_algebra import EMPTY_FOREST, Forest, LabeledTree, forests_of_degree, trees_of_degree

Word = Tuple[int, ...]
EMPTY_WORD: Word = ()
MAX_LEVEL = 3


class GeneratorSelectionError(ValueError):
    """Generators failed to span a graded piece."""


class SingularDegreeMatrixError(ValueError):
    """A per-degree matrix of Φ is not invertible."""


class NotInGroupError(ValueError):
    """Series whose logarithm is not a Lie series."""


# ---------------------------------------------------------------------
# 🔤 Weighted alphabet
# ---------------------------------------------------------------------
@dataclass(frozen=True)
class WeightedAlphabet:
    """Generator trees ν₁..ν_K for truncation level n = [p]; letter j has weight |ν_j|."""

    n: int
    d: int
    generators: Tuple[LabeledTree, ...]

    @property
    def K(self) -> int:
        return len(self.generators)

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def word_degree(self, w: Word) -> int:
        return word_degree(w, self.weights)

    def words_of_degree(self, k: int) -> List[Word]:
        return words_of_weight(self.weights, k)

    def words(self, max_degree: Optional[int] = None) -> List[Word]:
        top = self.n if max_degree is None else max_degree
        return [w for k in range(top + 1) for w in self.words_of_degree(k)]

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "d": self.d,
            "generators": [g.to_json() for g in self.generators],
            "weights": list(self.weights),
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "WeightedAlphabet":
        gens = tuple(LabeledTree.from_json(g) for g in data["generators"])
        return cls(int(data["n"]), int(data["d"]), gens)

    def digest(self) -> str:
        payload = json.dumps(self.to_json(), sort_keys=True).encode("utf-8")
        return hashlib.sha256(payload).hexdigest()


def word_degree(w: Word, weights: Sequence[int]) -> int:
    return sum(weights[k - 1] for k in w)


@lru_cache(maxsize=None)
def _words_of_weight(weights: Tuple[int, ...], k: int) -> Tuple[Word, ...]:
    if k == 0:
        return (EMPTY_WORD,)
    out: List[Word] = []
    for letter, wt in enumerate(weights, start=1):
        if wt <= k:
            out.extend((letter,) + rest for rest in _words_of_weight(weights, k - wt))
    return tuple(sorted(out))


def words_of_weight(weights: Sequence[int], k: int) -> List[Word]:
    return list(_words_of_weight(tuple(weights), k))


# ---------------------------------------------------------------------
# 📜 Word series
# ---------------------------------------------------------------------
class WordSeries:
    """Element of the truncated inhomogeneous tensor algebra: Σ (a, w) w over ‖w‖ ≤ n."""

    def __init__(self, weights: Sequence[int], n: int, coefficients: Optional[Dict[Word, Scalar]] = None):
        self.weights: Tuple[int, ...] = tuple(weights)
        self.n = n
        self.coefficients: Dict[Word, Scalar] = {}
        K = len(self.weights)
        for w, c in (coefficients or {}).items():
            w = tuple(w)
            if any(k < 1 or k > K for k in w):
                raise ValueError(f"Word {w} uses letters outside 1..{K}")
            if c != 0 and word_degree(w, self.weights) <= n:
                self.coefficients[w] = c

    @classmethod
    def unit(cls, weights: Sequence[int], n: int) -> "WordSeries":
        return cls(weights, n, {EMPTY_WORD: 1})

    @classmethod
    def letter(cls, weights: Sequence[int], n: int, j: int, c: Scalar = 1) -> "WordSeries":
        return cls(weights, n, {(j,): c})

    def coefficient(self, w: Word) -> Scalar:
        return self.coefficients.get(tuple(w), 0)

    @property
    def constant(self) -> Scalar:
        return self.coefficients.get(EMPTY_WORD, 0)

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.coefficients.values())

    def degree(self, w: Word) -> int:
        return word_degree(w, self.weights)

    def items(self):
        return self.coefficients.items()

    def _like(self, coefficients: Dict[Word, Scalar], n: Optional[int] = None) -> "WordSeries":
        return WordSeries(self.weights, self.n if n is None else n, coefficients)

    def __add__(self, other: "WordSeries") -> "WordSeries":
        acc = dict(self.coefficients)
        for w, c in other.items():
            acc[w] = acc.get(w, 0) + c
        return self._like(acc, min(self.n, other.n))

    def __sub__(self, other: "WordSeries") -> "WordSeries":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "WordSeries":
        return self._like({w: c * v for w, v in self.items()})

    def __mul__(self, other: "WordSeries") -> "WordSeries":
        """Truncated concatenation product."""
        n = min(self.n, other.n)
        acc: Dict[Word, Scalar] = {}
        for u, cu in self.items():
            du = self.degree(u)
            if du > n:
                continue
            for v, cv in other.items():
                if du + self.degree(v) <= n:
                    key = u + v
                    acc[key] = acc.get(key, 0) + cu * cv
        return self._like(acc, n)

    def truncate(self, m: int) -> "WordSeries":
        """π_m."""
        return WordSeries(self.weights, m, {w: c for w, c in self.items() if self.degree(w) <= m})

    def homogeneous(self, k: int) -> Dict[Word, Scalar]:
        return {w: c for w, c in self.items() if self.degree(w) == k}

    def without_constant(self) -> "WordSeries":
        return self._like({w: c for w, c in self.items() if w})

    def max_difference(self, other: "WordSeries") -> float:
        words = set(self.coefficients) | set(other.coefficients)
        return max((abs(float(self.coefficient(w) - other.coefficient(w))) for w in words), default=0.0)

    def to_float(self) -> "WordSeries":
        return self._like({w: float(c) for w, c in self.items()})

    def inverse(self) -> "WordSeries":
        """Group inverse via the truncated geometric series; constant term must be 1."""
        if self.constant != 1:
            raise NotInGroupError("Inverse needs constant term 1")
        y = self.without_constant()
        out = WordSeries.unit(self.weights, self.n)
        power = WordSeries.unit(self.weights, self.n)
        for k in range(1, self.n + 1):
            power = power * y
            out = out + power.scale((-1) ** k)
        return out

    def __eq__(self, other: Any) -> bool:
        return (isinstance(other, WordSeries) and self.weights == other.weights
                and self.n == other.n and self.coefficients == other.coefficients)

    def __repr__(self) -> str:
        body = " + ".join(f"{c}·{w}" for w, c in sorted(self.items()))
        return f"WordSeries(n={self.n}, {body or '0'})"

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "weights": list(self.weights),
            "coefficients": [{"word": list(w), "value": scalar_to_json(c)} for w, c in sorted(self.items())],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "WordSeries":
        coeffs = {tuple(item["word"]): scalar_from_json(item["value"]) for item in data["coefficients"]}
        return cls(data["weights"], int(data["n"]), coeffs)


def _inverse_factorial(k: int, exact: bool) -> Scalar:
    return Fraction(1, math.factorial(k)) if exact else 1.0 / math.factorial(k)


def word_exp(x: WordSeries) -> WordSeries:
    """Σ_k x^k/k! truncated at degree n."""
    c = x.constant
    y = x.without_constant()
    exact = x.exact
    out = WordSeries.unit(x.weights, x.n)
    power = WordSeries.unit(x.weights, x.n)
    for k in range(1, x.n + 1):
        power = power * y
        out = out + power.scale(_inverse_factorial(k, exact))
    if c != 0:
        out = out.scale(math.exp(float(c)))
    return out


def word_log(a: WordSeries) -> WordSeries:
    c = a.constant
    if c == 0:
        raise ValueError("Logarithm of a series with zero constant term")
    if is_exact(c):
        y = a.scale(Fraction(1) / c) - WordSeries.unit(a.weights, a.n)
    else:
        y = a.scale(1.0 / c) - WordSeries.unit(a.weights, a.n)
    out = WordSeries(a.weights, a.n)
    power = WordSeries.unit(a.weights, a.n)
    for k in range(1, a.n + 1):
        power = power * y
        coeff = Fraction((-1) ** (k + 1), k) if a.exact else (-1) ** (k + 1) / k
        out = out + power.scale(coeff)
    if c != 1:
        if float(c) < 0:
            raise ValueError("Logarithm of a series with negative constant term")
        out = out + WordSeries(a.weights, a.n, {EMPTY_WORD: math.log(float(c))})
    return out


def group_norm(a: WordSeries) -> float:
    """Σ over nonempty words of |(a, w)|^{1/‖w‖}."""
    return sum(abs(float(c)) ** (1.0 / a.degree(w)) for w, c in a.items() if w)


def dilate_series(h: WordSeries, lam: Scalar) -> WordSeries:
    """δ_λ: (h, w) ↦ λ^{‖w‖} (h, w)."""
    return h._like({w: c * lam ** h.degree(w) for w, c in h.items()})


def random_group_element(rng: np.random.Generator, weights: Sequence[int], n: int, exact: bool = False,
                         norm_bound: Optional[float] = None) -> WordSeries:
    """exp of a random Lie series; dilated so that group_norm ≤ norm_bound when one is given."""
    coords: Dict[Word, Scalar] = {}
    for lw in weighted_lyndon_words(weights, n):
        if exact:
            coords[lw] = Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))
        else:
            coords[lw] = float(rng.normal())
    h = word_exp(lie_series(weights, n, coords))
    if norm_bound is not None:
        size = group_norm(h)
        if size > norm_bound:
            # group_norm is 1-homogeneous under dilation; the loop only absorbs rounding
            lam = norm_bound / size
            if exact:
                lam = Fraction(lam).limit_denominator(1000)
            while group_norm(dilate_series(h, lam)) > norm_bound:
                lam = lam / 2
            h = dilate_series(h, lam)
    return h


# ---------------------------------------------------------------------
# 🧷 Lyndon words and Lie membership
# ---------------------------------------------------------------------
@lru_cache(maxsize=None)
def lyndon_words(K: int, max_length: int) -> Tuple[Word, ...]:
    """Lyndon words over 1..K up to max_length, in lexicographic order (Duval)."""
    out: List[Word] = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(x + 1 for x in w))
        m = len(w)
        while len(w) < max_length:
            w.append(w[-m])
        while w and w[-1] == K - 1:
            w.pop()
    return tuple(out)


def is_lyndon(w: Word) -> bool:
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


def standard_factorization(w: Word) -> Tuple[Word, Word]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


@lru_cache(maxsize=None)
def lie_polynomial(w: Word) -> Tuple[Tuple[Word, int], ...]:
    """Standard bracketing P_w; leading word is w with coefficient 1."""
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    pu, pv = dict(lie_polynomial(u)), dict(lie_polynomial(v))
    acc: Dict[Word, int] = {}
    for a, ca in pu.items():
        for b, cb in pv.items():
            acc[a + b] = acc.get(a + b, 0) + ca * cb
            acc[b + a] = acc.get(b + a, 0) - ca * cb
    return tuple((k, c) for k, c in sorted(acc.items()) if c != 0)


def weighted_lyndon_words(weights: Sequence[int], n: int) -> List[Word]:
    return [w for w in lyndon_words(len(weights), n) if word_degree(w, weights) <= n]


def lie_coordinates(x: WordSeries) -> Tuple[Dict[Word, Scalar], float]:
    """Coordinates of x in the Lyndon bracket basis plus the size of what is left over."""
    residual = {w: c for w, c in x.items() if w}
    coords: Dict[Word, Scalar] = {}
    for lw in weighted_lyndon_words(x.weights, x.n):
        c = residual.get(lw, 0)
        if c == 0:
            continue
        coords[lw] = c
        for word, coeff in lie_polynomial(lw):
            residual[word] = residual.get(word, 0) - c * coeff
    leftover = max((abs(float(v)) for v in residual.values()), default=0.0)
    return coords, leftover


def is_lie(x: WordSeries, tol: Optional[float] = None) -> bool:
    if x.constant != 0:
        return False
    _, leftover = lie_coordinates(x)
    return leftover == 0 if tol is None else leftover <= tol


def is_group_element(h: WordSeries, tol: Optional[float] = None) -> bool:
    if h.constant != 1:
        return False
    return is_lie(word_log(h), tol)


def ensure_group(h: WordSeries, tol: Optional[float] = None):
    if not is_group_element(h, tol):
        raise NotInGroupError(f"Series is not a group element (log is not a Lie series): {h!r}")


def lie_series(weights: Sequence[int], n: int, coords: Dict[Word, Scalar]) -> WordSeries:
    """Σ c_l P_l over the given Lyndon coordinates."""
    acc: Dict[Word, Scalar] = {}
    for lw, c in coords.items():
        for word, coeff in lie_polynomial(lw):
            acc[word] = acc.get(word, 0) + c * coeff
    return WordSeries(weights, n, acc)


def deshuffle(w: Word) -> Dict[Tuple[Word, Word], int]:
    out: Dict[Tuple[Word, Word], int] = {}
    for mask in itertools.product((0, 1), repeat=len(w)):
        u = tuple(k for k, m in zip(w, mask) if m == 0)
        v = tuple(k for k, m in zip(w, mask) if m == 1)
        out[(u, v)] = out.get((u, v), 0) + 1
    return out


# ---------------------------------------------------------------------
# ✍️ Signatures of piecewise-linear paths
# ---------------------------------------------------------------------
def segment_signature(delta: Sequence[Scalar], weights: Sequence[int], n: int) -> WordSeries:
    """Signature of one linear piece: Π Δ_{kᵢ}/m! on every word of degree ≤ n."""
    exact = all(is_exact(v) for v in delta)
    coeffs: Dict[Word, Scalar] = {EMPTY_WORD: 1}
    frontier: Dict[Word, Scalar] = {EMPTY_WORD: 1}
    for m in range(1, n + 1):
        grown: Dict[Word, Scalar] = {}
        for w, c in frontier.items():
            for k, dk in enumerate(delta, start=1):
                if dk == 0:
                    continue
                w2 = w + (k,)
                if word_degree(w2, weights) <= n:
                    grown[w2] = c * dk
        if not grown:
            break
        inv = _inverse_factorial(m, exact)
        coeffs.update({w: c * inv for w, c in grown.items()})
        frontier = grown
    return WordSeries(weights, n, coeffs)


def signature(x: Any, weights: Sequence[int], n: int) -> WordSeries:
    """S_n(x)_{0,1} of a piecewise-linear path, combined over pieces by Chen's identity."""
    out = WordSeries.unit(weights, n)
    for delta in x.increments():
        out = out * segment_signature(list(delta), weights, n)
    return out


# ---------------------------------------------------------------------
# 🌿 Eulerian idempotent and generator selection
# ---------------------------------------------------------------------
def _gl_chain(blocks: Sequence[Forest]) -> FormalSum:
    out = FormalSum.single(blocks[0])
    for b in blocks[1:]:
        out = gl_product_sums(out, FormalSum.single(b))
    return out


@lru_cache(maxsize=None)
def _eulerian_of_forest(f: Forest) -> Tuple[Tuple[Forest, Fraction], ...]:
    trees = f.trees
    m = len(trees)
    pairs: List[Tuple[Forest, Fraction]] = []
    for k in range(1, m + 1):
        coeff = Fraction((-1) ** (k + 1), k)
        for assignment in itertools.product(range(k), repeat=m):
            if len(set(assignment)) != k:
                continue
            blocks = [Forest(tuple(t for t, b in zip(trees, assignment) if b == i)) for i in range(k)]
            pairs.extend((h, coeff * c) for h, c in _gl_chain(blocks).items())
    return tuple(FormalSum.accumulate(pairs).items())


def eulerian_idempotent(x: FormalSum, n: Optional[int] = None) -> FormalSum:
    """π₁ = Σ_k (−1)^{k+1}/k · m^{(k−1)} ∘ Δ̃^{(k−1)}; the empty-forest component is dropped."""
    pairs = []
    for f, c in x.items():
        if f.is_empty or (n is not None and f.degree > n):
            continue
        pairs.extend((h, c * v) for h, v in _eulerian_of_forest(f))
    return FormalSum.accumulate(pairs)


def _coordinates(x: FormalSum, index: Dict[Forest, int]) -> List[Fraction]:
    vec = [Fraction(0)] * len(index)
    for f, c in x.items():
        vec[index[f]] += Fraction(c)
    return vec


def _domain_matrix(rows: Sequence[Sequence[Fraction]]) -> DomainMatrix:
    data = [[QQ(int(v.numerator), int(v.denominator)) for v in row] for row in rows]
    return DomainMatrix(data, (len(rows), len(rows[0]) if rows else 0), QQ)


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return int(_domain_matrix(rows).rank())


def exact_inverse(rows: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    inv = _domain_matrix(rows).inv().to_Matrix()
    return [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(inv.cols)] for i in range(inv.rows)]


def _word_image(word: Word, primitives: Sequence[FormalSum]) -> FormalSum:
    out = FormalSum.single(EMPTY_FOREST)
    for k in word:
        out = gl_product_sums(out, primitives[k - 1])
    return out


def select_generators(p: float, d: int) -> WeightedAlphabet:
    """Greedy degree-by-degree choice of trees whose primitive parts complete the GL span."""
    n = int(math.floor(p))
    if not 1 <= n <= MAX_LEVEL:
        raise GeneratorSelectionError(f"[p] = {n} outside the supported range 1..{MAX_LEVEL}")
    if d < 1:
        raise GeneratorSelectionError(f"d must be positive, got {d}")
    selected: List[LabeledTree] = []
    primitives: List[FormalSum] = []
    for k in range(1, n + 1):
        forests = forests_of_degree(k, d)
        index = {f: i for i, f in enumerate(forests)}
        weights = tuple(t.degree for t in selected)
        rows = [_coordinates(_word_image(w, primitives), index) for w in words_of_weight(weights, k)]
        rank = exact_rank(rows)
        for tree in trees_of_degree(k, d):
            if rank == len(forests):
                break
            prim = eulerian_idempotent(FormalSum.single(Forest.of(tree)))
            candidate = rows + [_coordinates(prim, index)]
            new_rank = exact_rank(candidate)
            if new_rank > rank:
                selected.append(tree)
                primitives.append(prim)
                rows, rank = candidate, new_rank
        if rank != len(forests):
            raise GeneratorSelectionError(
                f"Degree {k}: rank {rank} after selection, forest dimension {len(forests)}")
        logging.debug(f"Degree {k}: {sum(1 for t in selected if t.degree == k)} new generators")
    alphabet = WeightedAlphabet(n, d, tuple(selected))
    logging.info(f"✅ Selected K={alphabet.K} generators for [p]={n}, d={d}")
    return alphabet


# ---------------------------------------------------------------------
# 🔀 The isomorphism Φ
# ---------------------------------------------------------------------
class PhiMap:
    """Φ: letter j ↦ π₁(ν_j), words ↦ GL products; inverted degree by degree."""

    def __init__(self, alphabet: WeightedAlphabet):
        self.alphabet = alphabet
        self.n = alphabet.n
        self.d = alphabet.d
        self.primitives = [eulerian_idempotent(FormalSum.single(Forest.of(g))) for g in alphabet.generators]
        self._images: Dict[Word, FormalSum] = {}
        self._lock = threading.Lock()
        self.words: Dict[int, List[Word]] = {}
        self.forests: Dict[int, List[Forest]] = {}
        self.matrices: Dict[int, List[List[Fraction]]] = {}
        self.inverses: Dict[int, List[List[Fraction]]] = {}
        self.float_inverses: Dict[int, np.ndarray] = {}
        for k in range(1, self.n + 1):
            self._build_degree(k)

    def _build_degree(self, k: int):
        words = self.alphabet.words_of_degree(k)
        forests = list(forests_of_degree(k, self.d))
        if len(words) != len(forests):
            raise SingularDegreeMatrixError(
                f"Degree {k}: {len(words)} words vs {len(forests)} forests; matrix is not square")
        index = {f: i for i, f in enumerate(forests)}
        columns = [_coordinates(self.phi_word(w), index) for w in words]
        matrix = [[columns[j][i] for j in range(len(words))] for i in range(len(forests))]
        rank = exact_rank(matrix)
        if rank != len(forests):
            raise SingularDegreeMatrixError(f"Degree {k}: rank {rank} < {len(forests)}")
        inverse = exact_inverse(matrix)
        self.words[k] = words
        self.forests[k] = forests
        self.matrices[k] = matrix
        self.inverses[k] = inverse
        self.float_inverses[k] = np.array([[float(v) for v in row] for row in inverse])

    def phi_word(self, w: Word) -> FormalSum:
        image = self._images.get(w)
        if image is None:
            image = _word_image(w, self.primitives)
            with self._lock:
                self._images[w] = image
        return image

    def phi(self, a: WordSeries) -> FormalSum:
        pairs = []
        for w, c in a.items():
            pairs.extend((f, c * v) for f, v in self.phi_word(w).items())
        return FormalSum.accumulate(pairs).truncate(self.n)

    def phi_inverse(self, g: Union[FormalSum, GroupLikeGL]) -> WordSeries:
        x = g.as_formal_sum() if isinstance(g, GroupLikeGL) else g
        exact = all(is_exact(v) for _, v in x.items())
        coeffs: Dict[Word, Scalar] = {EMPTY_WORD: x.coefficient(EMPTY_FOREST)}
        for k in range(1, self.n + 1):
            forests = self.forests[k]
            if exact:
                vec = [Fraction(x.coefficient(f)) for f in forests]
                for row, w in zip(self.inverses[k], self.words[k]):
                    coeffs[w] = sum((r * v for r, v in zip(row, vec) if v != 0), Fraction(0))
            else:
                vec = np.array([float(x.coefficient(f)) for f in forests])
                sol = self.float_inverses[k] @ vec
                coeffs.update({w: float(v) for w, v in zip(self.words[k], sol)})
        return WordSeries(self.alphabet.weights, self.n, coeffs)

    def word_series_to_group_like(self, a: WordSeries) -> GroupLikeGL:
        return GroupLikeGL.from_formal_sum(self.phi(a), self.n, self.d)


_alphabets: Dict[Tuple[int, int], WeightedAlphabet] = {}
_phi_maps: Dict[Tuple[int, int], PhiMap] = {}
_cache_lock = threading.Lock()


def get_alphabet(p: float, d: int) -> WeightedAlphabet:
    """Shared alphabet per ([p], d); construction runs once."""
    key = (int(math.floor(p)), d)
    with _cache_lock:
        alphabet = _alphabets.get(key)
        if alphabet is None:
            alphabet = select_generators(p, d)
            _alphabets[key] = alphabet
        return alphabet


def get_phi_map(p: float, d: int) -> PhiMap:
    alphabet = get_alphabet(p, d)
    key = (alphabet.n, d)
    with _cache_lock:
        phi_map = _phi_maps.get(key)
        if phi_map is None:
            phi_map = PhiMap(alphabet)
            _phi_maps[key] = phi_map
            logging.info(f"✅ Φ matrices built for [p]={alphabet.n}, d={d} (K={alphabet.K})")
        return phi_map


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
    for p, d in [(1.5, 2), (2.5, 1), (2.5, 2), (3.5, 2)]:
        alphabet = get_alphabet(p, d)
        logging.info(f"[p]={alphabet.n}, d={d}: weights {alphabet.weights}")
