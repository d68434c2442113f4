# ck_hopf.py
import itertools
import logging
import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from forest_algebra import (
    EMPTY_FOREST,
    Forest,
    LabeledTree,
    LabelError,
    as_forest,
    enumerate_forests,
    symmetry_factor,
    trees_up_to,
)

Scalar = Union[int, float, Fraction]
TensorKey = Tuple[Forest, Forest]
Coproduct = Callable[[Forest], "FormalSum"]


class TruncationMismatchError(ValueError):
    """Operands live in different truncated groups."""


# ---------------------------------------------------------------------
# 🧮 Scalars
# ---------------------------------------------------------------------
def is_exact(v: Any) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def divide(v: Scalar, s: int) -> Scalar:
    if is_exact(v):
        return Fraction(v) / s
    return v / s


def scalar_to_json(v: Scalar) -> Union[str, float, int]:
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, int):
        return v
    return float(v)


def scalar_from_json(v: Union[str, float, int]) -> Scalar:
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


# ---------------------------------------------------------------------
# ➕ Formal sums
# ---------------------------------------------------------------------
def _key_degree(key: Union[Forest, TensorKey]) -> int:
    if isinstance(key, tuple):
        return sum(k.degree for k in key)
    return key.degree


class FormalSum:
    """Finite linear combination of forests (or of forest pairs); zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Any, Scalar]] = None):
        self.terms: Dict[Any, Scalar] = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def single(cls, key: Any, coeff: Scalar = 1) -> "FormalSum":
        return cls({key: coeff})

    @classmethod
    def accumulate(cls, pairs: Iterable[Tuple[Any, Scalar]]) -> "FormalSum":
        acc: Dict[Any, Scalar] = {}
        for key, coeff in pairs:
            acc[key] = acc.get(key, 0) + coeff
        return cls(acc)

    def coefficient(self, key: Any) -> Scalar:
        return self.terms.get(key, 0)

    def items(self):
        return self.terms.items()

    def keys(self):
        return self.terms.keys()

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum.accumulate(itertools.chain(self.items(), other.items()))

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + other.scale(-1)

    def __neg__(self) -> "FormalSum":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "FormalSum":
        return FormalSum({k: c * v for k, v in self.items()})

    def truncate(self, n: int) -> "FormalSum":
        return FormalSum({k: v for k, v in self.items() if _key_degree(k) <= n})

    def homogeneous(self, n: int) -> "FormalSum":
        return FormalSum({k: v for k, v in self.items() if _key_degree(k) == n})

    def swap(self) -> "FormalSum":
        return FormalSum({(r, l): v for (l, r), v in self.items()})

    def max_abs(self) -> float:
        return max((abs(float(v)) for v in self.terms.values()), default=0.0)

    def is_close(self, other: "FormalSum", tol: float) -> bool:
        return (self - other).max_abs() <= tol

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.items(), key=lambda kv: repr(kv[0])):
            label = f"{k[0]!r}⊗{k[1]!r}" if isinstance(k, tuple) else repr(k)
            parts.append(f"{v}·{label}")
        return " + ".join(parts)


# ---------------------------------------------------------------------
# ✂️ Connes–Kreimer coproduct
# ---------------------------------------------------------------------
def _tensor_multiply(x: Dict[TensorKey, int], y: Dict[TensorKey, int]) -> Dict[TensorKey, int]:
    out: Dict[TensorKey, int] = {}
    for (p1, r1), c1 in x.items():
        for (p2, r2), c2 in y.items():
            key = (p1 * p2, r1 * r2)
            out[key] = out.get(key, 0) + c1 * c2
    return out


@lru_cache(maxsize=None)
def _tree_coproduct(tree: LabeledTree) -> Tuple[Tuple[TensorKey, int], ...]:
    # Δ(B⁺_a(F)) = B⁺_a(F)⊗1 + (id⊗B⁺_a)Δ(F)
    out: Dict[TensorKey, int] = {(Forest.of(tree), EMPTY_FOREST): 1}
    for (pruned, root_part), c in _forest_coproduct(tree.child_forest):
        key = (pruned, Forest.of(LabeledTree(tree.label, root_part.trees)))
        out[key] = out.get(key, 0) + c
    return tuple(out.items())


@lru_cache(maxsize=None)
def _forest_coproduct(f: Forest) -> Tuple[Tuple[TensorKey, int], ...]:
    acc: Dict[TensorKey, int] = {(EMPTY_FOREST, EMPTY_FOREST): 1}
    for tree in f.trees:
        acc = _tensor_multiply(acc, dict(_tree_coproduct(tree)))
    return tuple(acc.items())


def ck_coproduct(f: Union[LabeledTree, Forest]) -> FormalSum:
    """Σ over admissible cuts of P^c ⊗ R^c; left factor pruned, right factor keeps the roots."""
    return FormalSum(dict(_forest_coproduct(as_forest(f))))


def _vertex_structure(tree: LabeledTree):
    labels: List[int] = []
    parents: List[Optional[int]] = []

    def visit(t: LabeledTree, parent: Optional[int]):
        idx = len(labels)
        labels.append(t.label)
        parents.append(parent)
        for child in t.children:
            visit(child, idx)

    visit(tree, None)
    kids: Dict[int, List[int]] = {v: [] for v in range(len(labels))}
    for v, p in enumerate(parents):
        if p is not None:
            kids[p].append(v)
    return labels, parents, kids


def admissible_cuts(tree: LabeledTree) -> List[TensorKey]:
    """Brute-force cut list over edge subsets, including the total cut τ⊗1."""
    labels, parents, kids = _vertex_structure(tree)
    edges = [v for v in range(len(labels)) if parents[v] is not None]

    def is_ancestor(u: int, v: int) -> bool:
        p = parents[v]
        while p is not None:
            if p == u:
                return True
            p = parents[p]
        return False

    def build(v: int, removed: frozenset) -> LabeledTree:
        return LabeledTree(labels[v], tuple(build(c, removed) for c in kids[v] if c not in removed))

    cuts: List[TensorKey] = [(Forest.of(tree), EMPTY_FOREST)]
    for r in range(len(edges) + 1):
        for subset in itertools.combinations(edges, r):
            if any(is_ancestor(u, v) for u in subset for v in subset if u != v):
                continue
            removed = frozenset(subset)
            pruned = Forest(tuple(build(v, frozenset()) for v in subset))
            cuts.append((pruned, Forest.of(build(0, removed))))
    return cuts


def ck_coproduct_bruteforce(f: Union[LabeledTree, Forest]) -> FormalSum:
    acc: Dict[TensorKey, int] = {(EMPTY_FOREST, EMPTY_FOREST): 1}
    for tree in as_forest(f).trees:
        cuts: Dict[TensorKey, int] = {}
        for key in admissible_cuts(tree):
            cuts[key] = cuts.get(key, 0) + 1
        acc = _tensor_multiply(acc, cuts)
    return FormalSum(acc)


def coassociativity_defect(f: Forest, coproduct: Coproduct) -> FormalSum:
    """(Δ⊗id)Δf − (id⊗Δ)Δf as a sum over nested triples ((a, b), c) vs (a, (b, c))."""
    delta = coproduct(f)
    left: Dict[Tuple[Forest, Forest, Forest], Scalar] = {}
    right: Dict[Tuple[Forest, Forest, Forest], Scalar] = {}
    for (l, r), c in delta.items():
        for (ll, lr), c2 in coproduct(l).items():
            key = (ll, lr, r)
            left[key] = left.get(key, 0) + c * c2
        for (rl, rr), c2 in coproduct(r).items():
            key = (l, rl, rr)
            right[key] = right.get(key, 0) + c * c2
    return FormalSum(left) - FormalSum(right)


# ---------------------------------------------------------------------
# 👤 Characters of the CK algebra
# ---------------------------------------------------------------------
class Character:
    """Element of G^N: stores tree values only, forest values are products."""

    def __init__(self, N: int, d: int, tree_values: Optional[Dict[LabeledTree, Scalar]] = None):
        if N < 1 or d < 1:
            raise ValueError(f"Character needs N >= 1 and d >= 1, got N={N}, d={d}")
        self.N = N
        self.d = d
        self.tree_values: Dict[LabeledTree, Scalar] = {}
        for tree, value in (tree_values or {}).items():
            if tree.degree > N:
                raise TruncationMismatchError(f"Tree {tree!r} has degree {tree.degree} > N={N}")
            if tree.max_label() > d:
                raise LabelError(f"Tree {tree!r} uses labels outside 1..{d}")
            if value != 0:
                self.tree_values[tree] = value
        self._memo: Dict[Forest, Scalar] = {}
        self._lock = threading.Lock()

    @classmethod
    def identity(cls, N: int, d: int) -> "Character":
        return cls(N, d)

    def value(self, f: Union[LabeledTree, Forest]) -> Scalar:
        if isinstance(f, LabeledTree):
            return self.tree_values.get(f, 0)
        if f.degree > self.N:
            raise TruncationMismatchError(f"Forest {f!r} has degree {f.degree} > N={self.N}")
        cached = self._memo.get(f)
        if cached is not None:
            return cached
        out: Scalar = 1
        for tree in f.trees:
            out = out * self.tree_values.get(tree, 0)
        with self._lock:
            self._memo[f] = out
        return out

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.tree_values.values())

    def to_float(self) -> "Character":
        return Character(self.N, self.d, {t: float(v) for t, v in self.tree_values.items()})

    def __eq__(self, other: Any) -> bool:
        return (isinstance(other, Character) and (self.N, self.d) == (other.N, other.d)
                and self.tree_values == other.tree_values)

    def __repr__(self) -> str:
        body = ", ".join(f"{t!r}: {v}" for t, v in sorted(self.tree_values.items()))
        return f"Character(N={self.N}, d={self.d}, {{{body}}})"

    def max_difference(self, other: "Character") -> float:
        trees = set(self.tree_values) | set(other.tree_values)
        return max((abs(float(self.value(t) - other.value(t))) for t in trees), default=0.0)

    def to_json(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "d": self.d,
            "values": [{"tree": t.to_json(), "value": scalar_to_json(v)}
                       for t, v in sorted(self.tree_values.items())],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Character":
        values = {LabeledTree.from_json(item["tree"]): scalar_from_json(item["value"])
                  for item in data.get("values", [])}
        return cls(int(data["N"]), int(data["d"]), values)


def _check_compatible(a: Character, b: Character):
    if (a.N, a.d) != (b.N, b.d):
        raise TruncationMismatchError(f"Characters differ: (N, d) = {(a.N, a.d)} vs {(b.N, b.d)}")


def convolve(a: Character, b: Character, f: Union[LabeledTree, Forest],
             coproduct: Coproduct = ck_coproduct) -> Scalar:
    """Σ_{(f)} (a, f₍₁₎)(b, f₍₂₎)."""
    total: Scalar = 0
    for (pruned, root_part), c in coproduct(as_forest(f)).items():
        total += c * a.value(pruned) * b.value(root_part)
    return total


def char_product(a: Character, b: Character, coproduct: Coproduct = ck_coproduct) -> Character:
    _check_compatible(a, b)
    values = {tree: convolve(a, b, tree, coproduct) for tree in trees_up_to(a.N, a.d)}
    return Character(a.N, a.d, values)


def char_inverse(a: Character) -> Character:
    """Degree-by-degree solve of a·a⁻¹ = ε."""
    inverse: Dict[LabeledTree, Scalar] = {}
    for tree in trees_up_to(a.N, a.d):
        total = -a.value(tree)
        for (pruned, root_part), c in ck_coproduct(tree).items():
            if pruned.is_empty or root_part.is_empty:
                continue
            total -= c * a.value(pruned) * inverse.get(root_part.trees[0], 0)
        inverse[tree] = total
    return Character(a.N, a.d, inverse)


def char_norm(a: Character) -> float:
    """max over forests of degree ≤ N of |(a, τ)|^{1/|τ|}."""
    best = 0.0
    for f in enumerate_forests(a.N, a.d):
        v = abs(float(a.value(f)))
        if v > 0:
            best = max(best, v ** (1.0 / f.degree))
    return best


def random_character(rng: np.random.Generator, N: int, d: int, exact: bool = True,
                     scale: float = 1.0) -> Character:
    values: Dict[LabeledTree, Scalar] = {}
    for tree in trees_up_to(N, d):
        if exact:
            values[tree] = Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5)))
        else:
            values[tree] = float(rng.normal()) * scale ** tree.degree
    return Character(N, d, values)


# ---------------------------------------------------------------------
# 🌱 Grossman–Larson product and coproduct
# ---------------------------------------------------------------------
def gl_product(f: Forest, g: Forest, max_degree: Optional[int] = None) -> FormalSum:
    """Graft each tree of f onto a vertex of g or onto the ground, summed over all choices."""
    if max_degree is not None and f.degree + g.degree > max_degree:
        return FormalSum()
    labels: List[int] = []
    parents: List[Optional[int]] = []
    kids: Dict[int, List[int]] = {}
    for tree in g.trees:
        t_labels, t_parents, t_kids = _vertex_structure(tree)
        offset = len(labels)
        labels.extend(t_labels)
        parents.extend(None if p is None else p + offset for p in t_parents)
        kids.update({v + offset: [c + offset for c in cs] for v, cs in t_kids.items()})
    n = len(labels)
    roots = [v for v in range(n) if parents[v] is None]

    acc: Dict[Forest, int] = {}
    for targets in itertools.product(range(-1, n), repeat=len(f.trees)):
        extra: Dict[int, List[LabeledTree]] = {}
        ground: List[LabeledTree] = []
        for tree, target in zip(f.trees, targets):
            if target < 0:
                ground.append(tree)
            else:
                extra.setdefault(target, []).append(tree)

        def build(v: int) -> LabeledTree:
            return LabeledTree(labels[v], tuple(build(c) for c in kids[v]) + tuple(extra.get(v, ())))

        result = Forest(tuple(build(v) for v in roots) + tuple(ground))
        acc[result] = acc.get(result, 0) + 1
    return FormalSum(acc)


def gl_product_sums(x: FormalSum, y: FormalSum, max_degree: Optional[int] = None) -> FormalSum:
    pairs = []
    for f, cf in x.items():
        for g, cg in y.items():
            for h, c in gl_product(f, g, max_degree).items():
                pairs.append((h, cf * cg * c))
    return FormalSum.accumulate(pairs)


def gl_coproduct(f: Union[LabeledTree, Forest]) -> FormalSum:
    """Σ over ordered two-block splits of the tree positions."""
    trees = as_forest(f).trees
    acc: Dict[TensorKey, int] = {}
    for mask in itertools.product((0, 1), repeat=len(trees)):
        left = Forest(tuple(t for t, m in zip(trees, mask) if m == 0))
        right = Forest(tuple(t for t, m in zip(trees, mask) if m == 1))
        acc[(left, right)] = acc.get((left, right), 0) + 1
    return FormalSum(acc)


def gl_coproduct_sum(x: FormalSum) -> FormalSum:
    pairs = []
    for f, c in x.items():
        pairs.extend((k, c * v) for k, v in gl_coproduct(f).items())
    return FormalSum.accumulate(pairs)


def reduced_gl_coproduct(x: FormalSum) -> FormalSum:
    return FormalSum({(l, r): v for (l, r), v in gl_coproduct_sum(x).items()
                      if not l.is_empty and not r.is_empty})


# ---------------------------------------------------------------------
# 🔗 Group-likes and the σ-rescale bridge
# ---------------------------------------------------------------------
class GroupLikeGL:
    """Truncated GL group-like element; the empty forest carries 1."""

    def __init__(self, n: int, d: int, forest_values: Optional[Dict[Forest, Scalar]] = None):
        self.n = n
        self.d = d
        self.forest_values: Dict[Forest, Scalar] = {}
        for f, v in (forest_values or {}).items():
            if f.is_empty or v == 0:
                continue
            if f.degree > n:
                raise TruncationMismatchError(f"Forest {f!r} has degree {f.degree} > n={n}")
            self.forest_values[f] = v

    @classmethod
    def identity(cls, n: int, d: int) -> "GroupLikeGL":
        return cls(n, d)

    @classmethod
    def from_formal_sum(cls, x: FormalSum, n: int, d: int) -> "GroupLikeGL":
        return cls(n, d, {f: v for f, v in x.truncate(n).items() if not f.is_empty})

    def value(self, f: Union[LabeledTree, Forest]) -> Scalar:
        f = as_forest(f)
        if f.is_empty:
            return 1
        return self.forest_values.get(f, 0)

    def as_formal_sum(self) -> FormalSum:
        terms: Dict[Forest, Scalar] = {EMPTY_FOREST: 1}
        terms.update(self.forest_values)
        return FormalSum(terms)

    def compose(self, other: "GroupLikeGL") -> "GroupLikeGL":
        """GL group law: linear extension of gl_product, truncated at n."""
        if (self.n, self.d) != (other.n, other.d):
            raise TruncationMismatchError("Group-likes from different truncations")
        prod = gl_product_sums(self.as_formal_sum(), other.as_formal_sum(), self.n)
        return GroupLikeGL.from_formal_sum(prod, self.n, self.d)

    def norm(self) -> float:
        best = 0.0
        for f, v in self.forest_values.items():
            if v != 0:
                best = max(best, abs(float(v)) ** (1.0 / f.degree))
        return best

    def max_difference(self, other: "GroupLikeGL") -> float:
        keys = set(self.forest_values) | set(other.forest_values)
        return max((abs(float(self.value(f) - other.value(f))) for f in keys), default=0.0)

    def __eq__(self, other: Any) -> bool:
        return (isinstance(other, GroupLikeGL) and (self.n, self.d) == (other.n, other.d)
                and self.forest_values == other.forest_values)

    def __repr__(self) -> str:
        return f"GroupLikeGL(n={self.n}, d={self.d}, {self.as_formal_sum()!r})"

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "d": self.d,
            "values": [{"forest": f.to_json(), "value": scalar_to_json(v)}
                       for f, v in sorted(self.forest_values.items())],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "GroupLikeGL":
        values = {Forest.from_json(item["forest"]): scalar_from_json(item["value"])
                  for item in data.get("values", [])}
        return cls(int(data["n"]), int(data["d"]), values)


def rescale(a: Character) -> GroupLikeGL:
    """(ā, τ) = (a, τ)/σ(τ) on every forest of degree ≤ N."""
    values = {f: divide(a.value(f), symmetry_factor(f)) for f in enumerate_forests(a.N, a.d)}
    return GroupLikeGL(a.N, a.d, values)


def rescale_inv(g: GroupLikeGL) -> Character:
    return Character(g.n, g.d, {t: g.value(t) * symmetry_factor(t) for t in trees_up_to(g.n, g.d)})


def split_multiplicity(f1: Forest, f2: Forest) -> int:
    """Number of position splits of f1·f2 into (f1, f2)."""
    union = f1 * f2
    out = 1
    for tree, count in f1.multiplicities:
        out *= math.comb(union.count(tree), count)
    return out


def is_group_like(g: GroupLikeGL, tol: Optional[float] = None) -> bool:
    """Δg = g⊗g up to degree n: g(F₁F₂)·#splits = g(F₁)g(F₂)."""
    forests = [f for f in enumerate_forests(g.n, g.d) if f.degree < g.n]
    for f1 in forests:
        for f2 in forests:
            if f1.degree + f2.degree > g.n:
                continue
            lhs = g.value(f1 * f2) * split_multiplicity(f1, f2)
            rhs = g.value(f1) * g.value(f2)
            if tol is None:
                if lhs != rhs:
                    logging.debug(f"❌ group-like check failed on {f1!r} ⊗ {f2!r}: {lhs} != {rhs}")
                    return False
            elif abs(float(lhs) - float(rhs)) > tol * max(1.0, abs(float(rhs))):
                logging.debug(f"❌ group-like check failed on {f1!r} ⊗ {f2!r}: {lhs} vs {rhs}")
                return False
    return True


# ---------------------------------------------------------------------
# 📊 Batched tree tables
# ---------------------------------------------------------------------
class TreeBasis:
    """Characters of G^N as rows of tree values, with vectorised product and inverse."""

    def __init__(self, N: int, d: int):
        self.N = N
        self.d = d
        self.trees: List[LabeledTree] = trees_up_to(N, d)
        self.index: Dict[LabeledTree, int] = {t: i for i, t in enumerate(self.trees)}
        self.degrees = np.array([t.degree for t in self.trees])
        self.sigma = [symmetry_factor(t) for t in self.trees]
        self.forests: List[Forest] = enumerate_forests(N, d)
        self.forest_degrees = np.array([f.degree for f in self.forests])
        self.forest_columns = [[self.index[t] for t in f.trees] for f in self.forests]
        self._terms: List[List[Tuple[int, Tuple[int, ...], int]]] = []
        for tree in self.trees:
            terms = []
            for (pruned, root_part), c in ck_coproduct(tree).items():
                r = self.index[root_part.trees[0]] if not root_part.is_empty else -1
                terms.append((c, tuple(self.index[t] for t in pruned.trees), r))
            self._terms.append(terms)

    @property
    def size(self) -> int:
        return len(self.trees)

    def to_array(self, a: Character, exact: bool = False) -> np.ndarray:
        if (a.N, a.d) != (self.N, self.d):
            raise TruncationMismatchError(f"Character {(a.N, a.d)} does not match basis {(self.N, self.d)}")
        if exact:
            return np.array([Fraction(a.value(t)) for t in self.trees], dtype=object)
        return np.array([float(a.value(t)) for t in self.trees], dtype=float)

    def from_array(self, row: np.ndarray) -> Character:
        return Character(self.N, self.d, {t: row[i] for i, t in enumerate(self.trees)})

    def identity(self, exact: bool = False) -> np.ndarray:
        if exact:
            return np.array([Fraction(0)] * self.size, dtype=object)
        return np.zeros(self.size)

    @staticmethod
    def _prod_columns(A: np.ndarray, columns: Sequence[int]):
        out = None
        for j in columns:
            out = A[..., j] if out is None else out * A[..., j]
        return out

    def product(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        shape = np.broadcast_shapes(A.shape, B.shape)
        dtype = object if (A.dtype == object or B.dtype == object) else float
        out = np.zeros(shape, dtype=dtype)
        for i, terms in enumerate(self._terms):
            col = np.zeros(shape[:-1], dtype=dtype)
            for c, pruned, r in terms:
                left = self._prod_columns(A, pruned)
                right = B[..., r] if r >= 0 else None
                if left is None:
                    term = c * right
                elif right is None:
                    term = c * left
                else:
                    term = c * left * right
                col = col + term
            out[..., i] = col
        return out

    def inverse(self, A: np.ndarray) -> np.ndarray:
        out = np.zeros(A.shape, dtype=A.dtype)
        for i, terms in enumerate(self._terms):
            col = -A[..., i]
            for c, pruned, r in terms:
                if not pruned or r < 0:
                    continue
                col = col - c * self._prod_columns(A, pruned) * out[..., r]
            out[..., i] = col
        return out

    def increment(self, A_s: np.ndarray, A_t: np.ndarray) -> np.ndarray:
        return self.product(self.inverse(A_s), A_t)

    def forest_values(self, A: np.ndarray) -> np.ndarray:
        cols = []
        for columns in self.forest_columns:
            cols.append(self._prod_columns(A, columns))
        return np.stack(cols, axis=-1)

    def norm(self, A: np.ndarray) -> np.ndarray:
        # forest terms are weighted geometric means of tree terms, so the max is attained on trees
        vals = np.abs(np.asarray(A, dtype=float)) ** (1.0 / self.degrees)
        return vals.max(axis=-1)

    def dilate(self, A: np.ndarray, lam: Scalar) -> np.ndarray:
        factors = np.array([lam ** int(k) for k in self.degrees], dtype=A.dtype)
        return A * factors


_bases: Dict[Tuple[int, int], TreeBasis] = {}
_bases_lock = threading.Lock()


def get_tree_basis(N: int, d: int) -> TreeBasis:
    """Shared TreeBasis per (N, d)."""
    with _bases_lock:
        basis = _bases.get((N, d))
        if basis is None:
            basis = TreeBasis(N, d)
            _bases[(N, d)] = basis
            logging.debug(f"Built tree basis N={N}, d={d} with {basis.size} trees")
        return basis


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
    from forest_algebra import bullet
    ladder = LabeledTree(1, (bullet(2),))
    logging.info(f"Δ({ladder!r}) = {ck_coproduct(ladder)!r}")
    logging.info(f"•1 ⋆ •2 = {gl_product(Forest.of(bullet(1)), Forest.of(bullet(2)))!r}")
