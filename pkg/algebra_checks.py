# algebra_checks.py
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from ck_hopf import (
    Character,
    Coproduct,
    FormalSum,
    GroupLikeGL,
    char_inverse,
    char_product,
    ck_coproduct,
    ck_coproduct_bruteforce,
    coassociativity_defect,
    convolve,
    gl_coproduct,
    gl_coproduct_sum,
    gl_product_sums,
    is_group_like,
    random_character,
    rescale,
    split_multiplicity,
)
from forest_algebra import (
    Forest,
    LabeledTree,
    automorphism_count,
    enumerate_forests,
    symmetry_factor,
    trees_up_to,
)
from realization import random_pl_path
from word_group import MAX_LEVEL, deshuffle, get_phi_map, signature

MAX_CHECK_N = 4
MAX_CHECK_D = 3
RANDOM_CHARACTERS = 3


@dataclass
class CheckResult:
    name: str
    passed: bool
    n_cases: int
    counterexample: Optional[str] = None


@dataclass
class AlgebraReport:
    N: int
    d: int
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((r for r in self.results if not r.passed), None)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([vars(r) for r in self.results])

    def to_json(self) -> Dict[str, Any]:
        return {"N": self.N, "d": self.d, "passed": self.passed, "results": [vars(r) for r in self.results]}


def _run(name: str, cases: Iterable[Any], check: Callable[[Any], bool]) -> CheckResult:
    """First failing case, in enumeration order, is the minimal counterexample."""
    n = 0
    for case in cases:
        n += 1
        if not check(case):
            logging.error(f"❌ {name} failed on {case!r}")
            return CheckResult(name, False, n, repr(case))
    logging.info(f"✅ {name}: {n} cases")
    return CheckResult(name, True, n)


def _tensor(x: FormalSum, y: FormalSum) -> FormalSum:
    return FormalSum.accumulate(((f, g), a * b) for f, a in x.items() for g, b in y.items())


# ---------------------------------------------------------------------
# 🔎 Individual suites
# ---------------------------------------------------------------------
def _shuffled_children(tree: LabeledTree) -> LabeledTree:
    return LabeledTree(tree.label, tuple(_shuffled_children(c) for c in reversed(tree.children)))


def forest_suites(N: int, d: int) -> List[CheckResult]:
    forests = enumerate_forests(N, d)
    trees = trees_up_to(N, d)
    pairs = [(a, b) for a in forests for b in forests if a.degree + b.degree <= N]
    return [
        _run("canonical key is order independent", trees,
             lambda t: _shuffled_children(t).key == t.key),
        _run("σ matches the automorphism count", forests,
             lambda f: symmetry_factor(f) == automorphism_count(f)),
        _run("σ multiplicativity", pairs,
             lambda ab: symmetry_factor(ab[0] * ab[1])
             == symmetry_factor(ab[0]) * symmetry_factor(ab[1]) * split_multiplicity(ab[0], ab[1])),
    ]


def coproduct_suites(N: int, d: int, coproduct: Coproduct = ck_coproduct) -> List[CheckResult]:
    forests = enumerate_forests(N, d)
    trees = trees_up_to(N, d)
    return [
        _run("CK coproduct matches admissible cuts", trees,
             lambda t: coproduct(Forest.of(t)) == ck_coproduct_bruteforce(t)),
        _run("CK coassociativity", forests,
             lambda f: not coassociativity_defect(f, coproduct)),
        _run("GL coassociativity", forests,
             lambda f: not coassociativity_defect(f, gl_coproduct)),
        _run("GL cocommutativity", forests,
             lambda f: gl_coproduct(f).swap() == gl_coproduct(f)),
    ]


def gl_product_suite(N: int, d: int) -> CheckResult:
    forests = enumerate_forests(N, d)
    triples = [(a, b, c) for a in forests for b in forests for c in forests
               if a.degree + b.degree + c.degree <= N]

    def associative(abc: Tuple[Forest, Forest, Forest]) -> bool:
        a, b, c = (FormalSum.single(f) for f in abc)
        return gl_product_sums(gl_product_sums(a, b), c) == gl_product_sums(a, gl_product_sums(b, c))

    return _run("GL associativity", triples, associative)


def character_suites(N: int, d: int, rng: np.random.Generator,
                     coproduct: Coproduct = ck_coproduct) -> List[CheckResult]:
    chars = [random_character(rng, N, d, exact=True) for _ in range(RANDOM_CHARACTERS)]
    forests = enumerate_forests(N, d)
    identity = Character.identity(N, d)
    closure_cases = [(i, j, f) for i in range(len(chars)) for j in range(len(chars)) for f in forests]
    triples = list(itertools.product(range(len(chars)), repeat=3))

    def closed(case) -> bool:
        i, j, f = case
        return convolve(chars[i], chars[j], f, coproduct) == char_product(chars[i], chars[j], coproduct).value(f)

    def associative(case) -> bool:
        a, b, c = (chars[k] for k in case)
        return (char_product(char_product(a, b, coproduct), c, coproduct)
                == char_product(a, char_product(b, c, coproduct), coproduct))

    def antipode(k: int) -> bool:
        a = chars[k]
        inv = char_inverse(a)
        return char_product(a, inv, coproduct) == identity and char_product(inv, a, coproduct) == identity

    def rescale_morphism(case) -> bool:
        i, j = case
        a, b = chars[i], chars[j]
        return rescale(char_product(a, b, coproduct)) == rescale(a).compose(rescale(b))

    return [
        _run("character closure", closure_cases, closed),
        _run("character associativity", triples, associative),
        _run("antipode inverse", range(len(chars)), antipode),
        _run("rescale is a morphism", [(i, j) for i in range(len(chars)) for j in range(len(chars))],
             rescale_morphism),
        _run("rescale is group-like", range(len(chars)), lambda k: is_group_like(rescale(chars[k]))),
    ]


def phi_suites(N: int, d: int, rng: np.random.Generator) -> List[CheckResult]:
    """Invertibility, bialgebra morphism on words, and group-likeness of Φ(S(x))."""
    try:
        phi_map = get_phi_map(N + 0.5, d)
    except ValueError as e:
        logging.error(f"❌ Φ could not be built for N={N}, d={d}: {e}")
        return [CheckResult("Φ degree matrices invertible", False, 0, str(e))]
    alphabet = phi_map.alphabet
    words = [w for w in alphabet.words() if w]

    def morphism(w) -> bool:
        lhs = gl_coproduct_sum(phi_map.phi_word(w))
        pairs = []
        for (u, v), c in deshuffle(w).items():
            pairs.extend((k, c * val) for k, val in _tensor(phi_map.phi_word(u), phi_map.phi_word(v)).items())
        return lhs == FormalSum.accumulate(pairs)

    paths = [random_pl_path(rng, alphabet.K, 3, exact=True) for _ in range(3)]

    def group_like(k: int) -> bool:
        g = phi_map.word_series_to_group_like(signature(paths[k], alphabet.weights, alphabet.n))
        return is_group_like(g)

    return [
        CheckResult("Φ degree matrices invertible", True, len(phi_map.matrices)),
        _run("Φ is a bialgebra morphism", words, morphism),
        _run("Φ maps signatures to group-likes", range(len(paths)), group_like),
    ]


# ---------------------------------------------------------------------
# ▶️ Entry point
# ---------------------------------------------------------------------
def run_algebra_checks(N: int, d: int, coproduct: Coproduct = ck_coproduct, seed: int = 0,
                       stop_at_first: bool = False) -> AlgebraReport:
    """Exhaustive exact identities over all forests of degree ≤ N on labels 1..d."""
    if not 1 <= N <= MAX_CHECK_N or not 1 <= d <= MAX_CHECK_D:
        raise ValueError(f"check-algebra supports N ≤ {MAX_CHECK_N}, d ≤ {MAX_CHECK_D}; got N={N}, d={d}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, N, d])))
    report = AlgebraReport(N, d)
    stages: List[Callable[[], Any]] = [
        lambda: forest_suites(N, d),
        lambda: coproduct_suites(N, d, coproduct),
        lambda: [gl_product_suite(N, d)],
        lambda: character_suites(N, d, rng, coproduct),
    ]
    if N <= MAX_LEVEL:
        stages.append(lambda: phi_suites(N, d, rng))
    for stage in stages:
        report.results.extend(stage())
        if stop_at_first and not report.passed:
            break
    status = "✅ all checks passed" if report.passed else f"❌ failed: {report.first_failure.name}"
    logging.info(f"Algebra checks N={N}, d={d}: {status}")
    return report
