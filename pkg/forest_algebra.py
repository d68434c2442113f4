# forest_algebra.py
import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

# ---------------------------------------------------------------------
# 📂 Constants and errors
# ---------------------------------------------------------------------
DEFAULT_ENUMERATION_LIMIT = 10 ** 6
MAX_LABEL = 0xFFFF

_OPEN = b"\x01"
_CLOSE = b"\x00"


class LabelError(ValueError):
    """Label outside 1..d."""


class EnumerationLimitError(ValueError):
    """Too many forests requested."""


def check_label(label: int, d: Optional[int] = None) -> int:
    if isinstance(label, bool) or not isinstance(label, int):
        raise LabelError(f"Label must be an integer, got {label!r}")
    if label < 1 or label > MAX_LABEL:
        raise LabelError(f"Label {label} outside 1..{MAX_LABEL}")
    if d is not None and label > d:
        raise LabelError(f"Label {label} outside 1..{d}")
    return label


# ---------------------------------------------------------------------
# 🌳 Trees
# ---------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class LabeledTree:
    """Non-planar rooted tree with vertex labels; children kept in canonical order."""

    label: int
    children: Tuple["LabeledTree", ...] = ()

    def __post_init__(self):
        check_label(self.label)
        object.__setattr__(self, "children", tuple(sorted(self.children, key=lambda c: c.key)))

    @cached_property
    def key(self) -> bytes:
        # prefix-free: open marker, 2-byte label, sorted child keys, close marker
        return _OPEN + self.label.to_bytes(2, "big") + b"".join(c.key for c in self.children) + _CLOSE

    @cached_property
    def degree(self) -> int:
        return 1 + sum(c.degree for c in self.children)

    @cached_property
    def labels(self) -> Tuple[int, ...]:
        out = [self.label]
        for c in self.children:
            out.extend(c.labels)
        return tuple(out)

    @property
    def child_forest(self) -> "Forest":
        return Forest(self.children)

    def max_label(self) -> int:
        return max(self.labels)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, LabeledTree) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "LabeledTree") -> bool:
        return (self.degree, self.key) < (other.degree, other.key)

    def __repr__(self) -> str:
        if not self.children:
            return f"•{self.label}"
        return "[" + "".join(repr(c) for c in self.children) + f"]{self.label}"

    def to_json(self) -> Dict[str, Any]:
        return {"label": self.label, "children": [c.to_json() for c in self.children]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "LabeledTree":
        return cls(int(data["label"]), tuple(cls.from_json(c) for c in data.get("children", [])))


# ---------------------------------------------------------------------
# 🌲 Forests
# ---------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class Forest:
    """Commutative monomial of trees. The empty forest is the unit."""

    trees: Tuple[LabeledTree, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(sorted(self.trees, key=lambda t: t.key)))

    @classmethod
    def of(cls, *trees: LabeledTree) -> "Forest":
        return cls(tuple(trees))

    @cached_property
    def key(self) -> bytes:
        return b"".join(t.key for t in self.trees)

    @cached_property
    def degree(self) -> int:
        return sum(t.degree for t in self.trees)

    @cached_property
    def multiplicities(self) -> Tuple[Tuple[LabeledTree, int], ...]:
        out: List[Tuple[LabeledTree, int]] = []
        for tree, group in itertools.groupby(self.trees):
            out.append((tree, len(list(group))))
        return tuple(out)

    @property
    def is_empty(self) -> bool:
        return not self.trees

    @property
    def is_tree(self) -> bool:
        return len(self.trees) == 1

    def count(self, tree: LabeledTree) -> int:
        return sum(1 for t in self.trees if t == tree)

    def __mul__(self, other: "Forest") -> "Forest":
        return Forest(self.trees + other.trees)

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Forest) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "Forest") -> bool:
        return (self.degree, self.key) < (other.degree, other.key)

    def __repr__(self) -> str:
        return "1" if not self.trees else "".join(repr(t) for t in self.trees)

    def to_json(self) -> List[Dict[str, Any]]:
        return [t.to_json() for t in self.trees]

    @classmethod
    def from_json(cls, data: Sequence[Dict[str, Any]]) -> "Forest":
        return cls(tuple(LabeledTree.from_json(t) for t in data))


EMPTY_FOREST = Forest()


def as_forest(x: Union[LabeledTree, Forest]) -> Forest:
    return Forest.of(x) if isinstance(x, LabeledTree) else x


def graft(children: Iterable[LabeledTree], a: int, d: Optional[int] = None) -> LabeledTree:
    """[τ₁⋯τ_k]_a in canonical form."""
    check_label(a, d)
    return LabeledTree(a, tuple(children))


def bullet(a: int, d: Optional[int] = None) -> LabeledTree:
    return graft((), a, d)


def canonical_key(f: Union[LabeledTree, Forest]) -> bytes:
    return as_forest(f).key


# ---------------------------------------------------------------------
# 🔢 Enumeration
# ---------------------------------------------------------------------
@lru_cache(maxsize=None)
def _trees_of_degree(n: int, d: int, limit: int) -> Tuple[LabeledTree, ...]:
    if n == 1:
        return tuple(LabeledTree(a) for a in range(1, d + 1))
    out = [LabeledTree(a, f.trees) for f in _forests_of_degree(n - 1, d, limit) for a in range(1, d + 1)]
    if len(out) > limit:
        raise EnumerationLimitError(f"{len(out)} trees of degree {n} exceed the limit {limit}")
    return tuple(sorted(out, key=lambda t: t.key))


@lru_cache(maxsize=None)
def _forests_of_degree(n: int, d: int, limit: int) -> Tuple[Forest, ...]:
    if n == 0:
        return (EMPTY_FOREST,)
    pool = [t for k in range(1, n + 1) for t in _trees_of_degree(k, d, limit)]
    results: List[Forest] = []
    stack: List[LabeledTree] = []

    def extend(start: int, remaining: int):
        if remaining == 0:
            results.append(Forest(tuple(stack)))
            if len(results) > limit:
                raise EnumerationLimitError(f"More than {limit} forests of degree {n} for d={d}")
            return
        for i in range(start, len(pool)):
            tree = pool[i]
            if tree.degree <= remaining:
                stack.append(tree)
                extend(i, remaining - tree.degree)
                stack.pop()

    extend(0, n)
    return tuple(sorted(results, key=lambda f: f.key))


def trees_of_degree(n: int, d: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Tuple[LabeledTree, ...]:
    return _trees_of_degree(n, d, limit)


def forests_of_degree(n: int, d: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Tuple[Forest, ...]:
    return _forests_of_degree(n, d, limit)


def enumerate_forests(N: int, d: int, kind: str = "forests",
                      limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[Forest]:
    """All trees or forests of degree 1..N over labels 1..d, sorted by (degree, canonical key)."""
    if N < 1 or d < 1:
        raise ValueError(f"enumerate_forests needs N >= 1 and d >= 1, got N={N}, d={d}")
    if kind not in ("trees", "forests"):
        raise ValueError(f"kind must be 'trees' or 'forests', got {kind!r}")
    out: List[Forest] = []
    for n in range(1, N + 1):
        if kind == "trees":
            out.extend(Forest.of(t) for t in trees_of_degree(n, d, limit))
        else:
            out.extend(forests_of_degree(n, d, limit))
        if len(out) > limit:
            raise EnumerationLimitError(f"{len(out)} {kind} up to degree {n} exceed the limit {limit}")
    logging.debug(f"Enumerated {len(out)} {kind} for N={N}, d={d}")
    return out


def trees_up_to(N: int, d: int) -> List[LabeledTree]:
    return [t for n in range(1, N + 1) for t in trees_of_degree(n, d)]


# ---------------------------------------------------------------------
# 🔁 Symmetry
# ---------------------------------------------------------------------
@lru_cache(maxsize=None)
def _tree_symmetry(tree: LabeledTree) -> int:
    return symmetry_factor(tree.child_forest)


def symmetry_factor(f: Union[LabeledTree, Forest]) -> int:
    """σ(τ₁^{n₁}⋯τ_k^{n_k}) = Π nᵢ! σ(τᵢ)^{nᵢ}, with σ([F]_a) = σ(F)."""
    if isinstance(f, LabeledTree):
        return _tree_symmetry(f)
    out = 1
    for tree, count in f.multiplicities:
        out *= math.factorial(count) * _tree_symmetry(tree) ** count
    return out


def _flatten(f: Forest) -> Tuple[List[int], List[Optional[int]]]:
    labels: List[int] = []
    parents: List[Optional[int]] = []

    def visit(tree: LabeledTree, parent: Optional[int]):
        idx = len(labels)
        labels.append(tree.label)
        parents.append(parent)
        for child in tree.children:
            visit(child, idx)

    for t in f.trees:
        visit(t, None)
    return labels, parents


def automorphism_count(f: Union[LabeledTree, Forest]) -> int:
    """Label- and parent-preserving vertex permutations, counted by brute force."""
    labels, parents = _flatten(as_forest(f))
    n = len(labels)
    count = 0
    for perm in itertools.permutations(range(n)):
        if any(labels[perm[v]] != labels[v] for v in range(n)):
            continue
        ok = True
        for v in range(n):
            pv = parents[v]
            image_parent = None if pv is None else perm[pv]
            if parents[perm[v]] != image_parent:
                ok = False
                break
        if ok:
            count += 1
    return count


def tree_factorial(tree: LabeledTree) -> int:
    """τ! = |τ| Π τᵢ! over the root's children."""
    out = tree.degree
    for c in tree.children:
        out *= tree_factorial(c)
    return out


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
    for forest in enumerate_forests(2, 2):
        logging.info(f"{forest!r}: σ={symmetry_factor(forest)}")
