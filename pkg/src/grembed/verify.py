"""Exhaustive and randomized checkers for the identities, image-equality
lemmas, embedding injectivity and the characteristic-p counterexample.

Exhaustive verifiers enumerate every point of the relevant finite
Grassmannians and compare embedded images; randomized ones are
deterministic given a seed.  Everything returns a CheckReport.
"""

from __future__ import annotations

import itertools
import math
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from grembed.grassmann import (
    DegenerateImageError,
    GrassmannPoint,
    point_from_matrix,
    sym_embed,
    tensor_embed,
    tensor_power_embed,
    wedge_embed,
)
from grembed.linalg import Matrix
from grembed.multilinear import (
    check_det_sym_identity,
    check_det_tensor_identity,
    check_det_wedge_identity,
)
from grembed.reports import CheckReport
from grembed.rings import (
    DualNumbers,
    IntegerRing,
    NotEnumerableError,
    PolynomialRing,
    PrimeField,
    Ring,
    RingError,
    is_prime,
)

# symbolic identity checks beyond this many generic variables must be
# requested explicitly; they are polynomially expensive
SYMBOLIC_VARIABLE_LIMIT = 8


@dataclass(frozen=True)
class EnumerationSpec:
    """Parameters of one exhaustive sweep over a finite Grassmannian.

    Either (n, m) for a single Grassmannian (with the power order r where
    relevant) or factors=((n1, m1), (n2, m2), ...) for products.
    """

    ring: Ring
    n: int = 0
    m: int = 0
    r: int = 0
    factors: tuple = ()

    def __post_init__(self):
        if not self.ring.is_finite:
            raise NotEnumerableError(f"exhaustive checks need a finite ring, not {self.ring}")
        for n, m in self.factor_list():
            if not (1 <= m <= n):
                raise ValueError(f"need 1 <= m <= n, got Gr({n}, {m})")

    def factor_list(self):
        if self.factors:
            return [tuple(f) for f in self.factors]
        return [(self.n, self.m)]


def gaussian_binomial(n: int, m: int, q: int) -> int:
    """Number of m-dimensional subspaces of an n-space over a q-element field."""
    num = 1
    den = 1
    for i in range(m):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def grassmannian_point_count(ring: Ring, n: int, m: int) -> int:
    """Closed-form point count of Gr(n, m) over the finite rings."""
    if isinstance(ring, PrimeField):
        return gaussian_binomial(n, m, ring.p)
    if isinstance(ring, DualNumbers):
        p = ring.p
        return gaussian_binomial(n, m, p) * p ** (m * (n - m))
    raise NotEnumerableError(f"no point-count formula for {ring}")


def enumerate_grassmannian(ring: Ring, n: int, m: int):
    """Yield every point of Gr(n, m) over a finite local ring exactly once.

    Enumerates canonical basis matrices directly: for each pivot row set I
    (ascending lex) the rows in I carry the identity, positions below a
    pivot range over the whole ring, and positions above a pivot range over
    the non-units only (so the lex-first unit row set stays I).
    """
    if not ring.is_finite:
        raise NotEnumerableError(f"cannot enumerate points over {ring}")
    if not (1 <= m <= n):
        raise ValueError(f"need 1 <= m <= n, got Gr({n}, {m})")
    all_values = list(ring.elements())
    small_values = list(ring.nonunits())
    for pivots in itertools.combinations(range(n), m):
        pivot_col = {row: l for l, row in enumerate(pivots)}
        free = []
        for row in range(n):
            if row in pivot_col:
                continue
            for l in range(m):
                free.append((row, l, all_values if row > pivots[l] else small_values))
        for choice in itertools.product(*[values for _, _, values in free]):
            grid = [[ring.zero] * m for _ in range(n)]
            for row, l in pivot_col.items():
                grid[row][l] = ring.one
            for (row, l, _), value in zip(free, choice):
                grid[row][l] = value
            entries = tuple(grid[i][j] for i in range(n) for j in range(m))
            yield point_from_matrix(Matrix(ring, n, m, entries))


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("GREMBED_THREADS", "1")))
    except ValueError:
        return 1


def _map_deterministic(fn, items):
    workers = _thread_count()
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _source_json(source):
    if isinstance(source, tuple):
        return [p.to_json() for p in source]
    return source.to_json()


def _injectivity_report(name, ring, parameters, sources, embed, started,
                        expect_failure=False) -> CheckReport:
    """Embed every source, group by image, and flag groups with two or more
    distinct sources (all ordered source pairs are accounted as cases)."""
    images = _map_deterministic(embed, sources)
    groups = {}
    degenerate = []
    for source, image in zip(sources, images):
        if isinstance(image, DegenerateImageError):
            degenerate.append({"degenerate_source": _source_json(source)})
            continue
        groups.setdefault(image, []).append(source)
    failures = list(degenerate)
    for image, members in groups.items():
        if len(members) > 1:
            failures.append(
                {
                    "image": image.to_json(),
                    "sources": [_source_json(s) for s in members],
                }
            )
    cases = len(sources) * len(sources)
    return CheckReport.build(
        name, ring, parameters, cases, failures, started, expect_failure
    )


def _guarded_sym_embed(r):
    def embed(point):
        try:
            return sym_embed(point, r)
        except DegenerateImageError as exc:
            return exc

    return embed


def verify_tensor_image_lemma(spec: EnumerationSpec) -> CheckReport:
    """Equal spans of Kronecker images force equal factor spans.

    Exhausts all tuples of points of the factor Grassmannians (the paper
    scale is two factors; induction covers the rest) and checks the tensor
    embedding is injective on tuples.
    """
    started = time.perf_counter()
    factors = spec.factor_list()
    point_sets = [list(enumerate_grassmannian(spec.ring, n, m)) for n, m in factors]
    sources = list(itertools.product(*point_sets))
    parameters = {}
    for i, (n, m) in enumerate(factors):
        parameters[f"n{i + 1}"] = n
        parameters[f"m{i + 1}"] = m
    return _injectivity_report(
        "tensor-image-lemma", spec.ring, parameters, sources,
        lambda tup: tensor_embed(list(tup)), started,
    )


def verify_wedge_image_lemma(spec: EnumerationSpec) -> CheckReport:
    """Equal exterior power images force equal spans: wedge embedding is
    injective on all points of Gr(n, m)."""
    started = time.perf_counter()
    sources = list(enumerate_grassmannian(spec.ring, spec.n, spec.m))
    parameters = {"n": spec.n, "m": spec.m, "r": spec.r}
    return _injectivity_report(
        "wedge-image-lemma", spec.ring, parameters, sources,
        lambda p: wedge_embed(p, spec.r), started,
    )


def verify_sym_image_lemma(spec: EnumerationSpec, expect_failure=False) -> CheckReport:
    """Equal symmetric power images force equal spans when the rank is at
    least 2 or the degree is invertible; with expect_failure the verifier
    must instead exhibit a collision (the characteristic-p regime)."""
    started = time.perf_counter()
    sources = list(enumerate_grassmannian(spec.ring, spec.n, spec.m))
    parameters = {"n": spec.n, "m": spec.m, "r": spec.r}
    return _injectivity_report(
        "sym-image-lemma", spec.ring, parameters, sources,
        _guarded_sym_embed(spec.r), started, expect_failure,
    )


_EMBEDDING_NAMES = ("tensor", "tensor-power", "wedge", "sym")


def verify_embedding_injectivity(spec: EnumerationSpec, which: str,
                                 expect_failure=False) -> CheckReport:
    """Exhaustive injectivity of one embedding on the chosen point set."""
    if which not in _EMBEDDING_NAMES:
        raise ValueError(f"unknown embedding {which!r}, expected one of {_EMBEDDING_NAMES}")
    started = time.perf_counter()
    if which == "tensor":
        factors = spec.factor_list()
        point_sets = [list(enumerate_grassmannian(spec.ring, n, m)) for n, m in factors]
        sources = list(itertools.product(*point_sets))
        embed = lambda tup: tensor_embed(list(tup))
        parameters = {}
        for i, (n, m) in enumerate(factors):
            parameters[f"n{i + 1}"] = n
            parameters[f"m{i + 1}"] = m
    else:
        sources = list(enumerate_grassmannian(spec.ring, spec.n, spec.m))
        parameters = {"n": spec.n, "m": spec.m, "r": spec.r}
        if which == "tensor-power":
            embed = lambda p: tensor_power_embed(p, spec.r)
        elif which == "wedge":
            embed = lambda p: wedge_embed(p, spec.r)
        else:
            embed = _guarded_sym_embed(spec.r)
    return _injectivity_report(
        f"{which}-injectivity", spec.ring, parameters, sources, embed, started,
        expect_failure,
    )


def verify_grassmannian_count(spec: EnumerationSpec) -> CheckReport:
    """Cross-check the enumerator against the closed-form point count."""
    started = time.perf_counter()
    seen = set()
    total = 0
    for point in enumerate_grassmannian(spec.ring, spec.n, spec.m):
        total += 1
        seen.add(point)
    expected = grassmannian_point_count(spec.ring, spec.n, spec.m)
    failures = []
    if total != expected or len(seen) != expected:
        failures.append({"expected": expected, "enumerated": total, "distinct": len(seen)})
    return CheckReport.build(
        "point-count", spec.ring, {"n": spec.n, "m": spec.m}, total, failures, started
    )


def run_counterexample(p: int, r: int, n: int = 2) -> CheckReport:
    """Reproduce the symmetric power collision over the dual numbers.

    For p | r the spans of e1 and of e1 + eps*e2 in F_p[eps]^n are distinct
    points of Gr(n, 1) with equal degree-r symmetric power images, so the
    expected verdict is expected-failure-observed with exactly that witness.
    """
    if not is_prime(p):
        raise RingError(f"{p} is not prime")
    if r < 1 or r % p != 0:
        raise ValueError(f"counterexample needs p | r, got p={p}, r={r}")
    if n < 2:
        raise ValueError(f"counterexample needs ambient dimension >= 2, got {n}")
    started = time.perf_counter()
    ring = DualNumbers(p)
    col1 = [[ring.one]] + [[ring.zero]] * (n - 1)
    col2 = [[ring.one], [(0, 1)]] + [[ring.zero]] * (n - 2)
    v1 = point_from_matrix(Matrix.from_rows(ring, col1))
    v2 = point_from_matrix(Matrix.from_rows(ring, col2))
    failures = []
    if v1 == v2:
        return CheckReport.build(
            "counterexample", ring, {"p": p, "r": r, "n": n}, 1,
            [{"error": "source points unexpectedly coincide"}], started,
        )
    image1 = sym_embed(v1, r)
    image2 = sym_embed(v2, r)
    if image1 == image2:
        failures.append(
            {
                "sources": [v1.to_json(), v2.to_json()],
                "image": image1.to_json(),
            }
        )
    return CheckReport.build(
        "counterexample", ring, {"p": p, "r": r, "n": n}, 1, failures, started,
        expect_failure=True,
    )


def random_matrix(ring: Ring, rows: int, cols: int, rng) -> Matrix:
    """Random matrix with entries drawn from the ring's sampler."""
    return Matrix(
        ring, rows, cols,
        tuple(ring.random_element(rng) for _ in range(rows * cols)),
    )


def generic_matrices(sizes, prefixes=None):
    """Square matrices of distinct variables over one polynomial ring.

    Returns (ring, matrices); entry (j, k) of matrix i is the variable
    '<prefix_i><j><k>'.
    """
    if prefixes is None:
        prefixes = [chr(ord("a") + i) for i in range(len(sizes))]
    names = []
    for n, prefix in zip(sizes, prefixes):
        names.extend(f"{prefix}{j}{k}" for j in range(n) for k in range(n))
    ring = PolynomialRing(names)
    matrices = []
    for n, prefix in zip(sizes, prefixes):
        rows = [[ring.variable(f"{prefix}{j}{k}") for k in range(n)] for j in range(n)]
        matrices.append(Matrix(ring, n, n, tuple(x for row in rows for x in row)))
    return ring, matrices


def _require_symbolic_size(total_vars: int, allow_large: bool):
    if total_vars > SYMBOLIC_VARIABLE_LIMIT and not allow_large:
        raise ValueError(
            f"symbolic check wants {total_vars} generic variables, above the "
            f"default limit {SYMBOLIC_VARIABLE_LIMIT}; pass allow_large_symbolic=True"
        )


def symbolic_tensor_identity_check(n1: int = 2, n2: int = 2,
                                   allow_large_symbolic: bool = False) -> CheckReport:
    """The tensor determinant identity as a polynomial identity in generic entries."""
    _require_symbolic_size(n1 * n1 + n2 * n2, allow_large_symbolic)
    _, ms = generic_matrices([n1, n2])
    return check_det_tensor_identity(ms)


def symbolic_power_identity_check(kind: str, n: int, d: int,
                                  allow_large_symbolic: bool = False) -> CheckReport:
    """The sym/wedge determinant identity as a polynomial identity."""
    _require_symbolic_size(n * n, allow_large_symbolic)
    _, ms = generic_matrices([n])
    if kind == "sym":
        return check_det_sym_identity(ms[0], d)
    if kind == "wedge":
        return check_det_wedge_identity(ms[0], d)
    raise ValueError(f"unknown power identity kind {kind!r}")


def verify_det_identities(trials: int = 100, seed: int = 0, ring: Ring = None,
                          tensor_sizes=((2, 2), (2, 3), (3, 3)),
                          power_sizes=((2, 2), (3, 2), (3, 3), (4, 2)),
                          include_symbolic: bool = True,
                          allow_large_symbolic: bool = False) -> CheckReport:
    """Randomized plus symbolic sweep of the three determinant identities.

    Runs `trials` seeded random matrices per size configuration, then the
    generic 2x2 symbolic identities (3x3 symbolic only when explicitly
    allowed; those need nine generic variables).
    """
    started = time.perf_counter()
    if ring is None:
        ring = IntegerRing()
    rng = random.Random(seed)
    failures = []
    cases = 0
    for n1, n2 in tensor_sizes:
        for _ in range(trials):
            ms = [random_matrix(ring, n1, n1, rng), random_matrix(ring, n2, n2, rng)]
            report = check_det_tensor_identity(ms)
            cases += 1
            failures.extend(report.failures)
    for n, d in power_sizes:
        for _ in range(trials):
            m = random_matrix(ring, n, n, rng)
            for checker in (check_det_sym_identity, check_det_wedge_identity):
                report = checker(m, d)
                cases += 1
                failures.extend(report.failures)
    if include_symbolic:
        symbolic = [
            symbolic_tensor_identity_check(2, 2),
            symbolic_power_identity_check("sym", 2, 2),
            symbolic_power_identity_check("wedge", 2, 2),
        ]
        if allow_large_symbolic:
            symbolic.append(symbolic_power_identity_check("sym", 3, 2, True))
            symbolic.append(symbolic_power_identity_check("wedge", 3, 2, True))
        for report in symbolic:
            cases += 1
            failures.extend(report.failures)
    parameters = {"trials": trials, "seed": seed}
    return CheckReport.build("det-identities", ring, parameters, cases, failures, started)
