"""Instance families and per-statement verifiers.

Every verifier walks a family of instances, filters on the statement's
hypothesis and records counterexamples instead of raising.  Sweeps are split
into fixed-size chunks; each chunk is checked independently (optionally in a
process pool) and merged in chunk order, so the report does not depend on
the number of workers.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import multiprocessing
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, NamedTuple, Optional, Sequence

from .group import (
    GroupContext,
    MalcevElement,
    commutator,
    commutes,
    format_element,
    inverse,
    is_central,
    multiply,
    power,
)
from .order import BOTH_ORDERS, Order, is_positive, sorted_under, standard_key
from .progressions import (
    ConstructionError,
    K3Case,
    classify_k3,
    construct_general,
    construct_two_progressions,
    recognize_progression_plus_point,
    recognize_structure,
)
from .sumset import Subset, is_cna, is_pairwise_commuting, product_set

THEOREM_IDS = ("L2_1", "P2_2", "L2_3", "L2_4", "T2_5", "E3_1", "T3_2", "P3_3", "P3_4", "BG_1_3")
GRID_THEOREMS = ("L2_3", "L2_4", "E3_1")
ORDER_DEPENDENT = ("L2_1", "T2_5")
COUNTEREXAMPLE_CAP = 16
CHUNK_SIZE = 2048

EXIT_PASS, EXIT_FAIL, EXIT_VACUOUS = 0, 1, 3


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class BoxSpec:
    """Coordinate box |gens| <= gen_bound, |comms| <= comm_bound, and sweep limits."""

    gen_bound: int = 1
    comm_bound: int = 1
    k: int = 3
    budget: int = 10**6
    seed: int = 0
    n: int = 2

    def __post_init__(self):
        if self.gen_bound < 0 or self.comm_bound < 0:
            raise ValueError("box bounds must be non-negative")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.k < 1:
            raise ValueError("subset size must be at least 1")
        GroupContext(self.n)

    @property
    def context(self) -> GroupContext:
        return GroupContext(self.n)

    @property
    def universe_size(self) -> int:
        ctx = self.context
        return (2 * self.gen_bound + 1) ** ctx.n * (2 * self.comm_bound + 1) ** ctx.comm_dim

    def universe(self) -> tuple[MalcevElement, ...]:
        return box_universe(self.n, self.gen_bound, self.comm_bound)


@lru_cache(maxsize=32)
def box_universe(n: int, gen_bound: int, comm_bound: int) -> tuple[MalcevElement, ...]:
    ctx = GroupContext(n)
    gens = itertools.product(range(-gen_bound, gen_bound + 1), repeat=ctx.n)
    comms = list(itertools.product(range(-comm_bound, comm_bound + 1), repeat=ctx.comm_dim))
    elems = [MalcevElement(g, c) for g in gens for c in comms]
    return tuple(sorted(elems, key=standard_key))


def enumerate_subsets(box: BoxSpec, mode: str = "exhaustive") -> Iterator[Subset]:
    """Exhaustive: every k-subset once, in combination order.  Sampled: ``budget``
    uniformly random k-subsets drawn from ``random.Random(seed)``."""
    universe = box.universe()
    ctx = box.context
    size = len(universe)
    if box.k > size:
        raise ValueError(f"k = {box.k} exceeds the universe size {size}")
    if mode == "exhaustive":
        total = math.comb(size, box.k)
        if total > box.budget:
            raise BudgetExceeded(f"C({size}, {box.k}) = {total} subsets exceed the budget {box.budget}")
        return (Subset(ctx, combo) for combo in itertools.combinations(universe, box.k))
    if mode == "sampled":
        return _sampled(box, universe)
    raise ValueError(f"unknown enumeration mode {mode!r}")


def _sampled(box: BoxSpec, universe) -> Iterator[Subset]:
    rng = random.Random(box.seed)
    ctx = box.context
    indices = range(len(universe))
    for _ in range(box.budget):
        picked = sorted(rng.sample(indices, box.k))
        yield Subset(ctx, tuple(universe[i] for i in picked))


# -- constructed families -------------------------------------------------------


def _random_noncommuting_pair(rng: random.Random, universe) -> tuple[MalcevElement, MalcevElement]:
    while True:
        a, b = rng.choice(universe), rng.choice(universe)
        if not commutes(a, b):
            return a, b


def _positive(g: MalcevElement) -> MalcevElement:
    return g if is_positive(g) else inverse(g)


def _perturb(rng: random.Random, elems: list[MalcevElement]) -> list[MalcevElement]:
    n = len(elems[0].gens)
    ctx = GroupContext(n)
    while True:
        delta = ctx.element(
            [rng.randint(-1, 1) for _ in range(ctx.n)],
            [rng.randint(-2, 2) for _ in range(ctx.comm_dim)],
        )
        if delta == ctx.identity():
            continue
        idx = rng.randrange(len(elems))
        moved = multiply(elems[idx], delta) if rng.random() < 0.5 else multiply(delta, elems[idx])
        if moved not in elems:
            return elems[:idx] + [moved] + elems[idx + 1:]


def constructed_family(box: BoxSpec) -> Iterator[Subset]:
    """``budget`` structured instances of size ``box.k``, reproducible from ``seed``.

    Instances cycle through two-progression sets (v = 1), general two-progression
    sets (v >= 2) and progression-plus-point sets with gaps.  Half of them get
    one element moved by a small random factor.  The base points a, b come from
    the box; the progressions may leave it.
    """
    rng = random.Random(box.seed)
    universe = box.universe()
    k = box.k
    if k < 3:
        raise ValueError("constructed families need k >= 3")
    kinds = ["two", "general", "plus_point"]
    for count in range(box.budget):
        kind = kinds[count % 3]
        a, b = _random_noncommuting_pair(rng, universe)
        if kind == "two":
            c = _positive(commutator(b, a))
            i = rng.randint(0, k - 2)
            elems = list(construct_two_progressions(a, b, c, i, k - 2 - i))
        elif kind == "general":
            v = rng.randint(1, max(1, min(k - 2, 4)))
            c = _positive(commutator(b, a))
            b = power(b, v)
            i = rng.randint(0, k - 2)
            elems = list(construct_general(a, b, c, i, k - 2 - i).subset)
        else:
            v = rng.randint(1, 3)
            c = _positive(commutator(b, a))
            b = power(b, v)
            span = rng.randint(k - 2, max(k - 2, 2 * k - 6))
            inner = rng.sample(range(1, span), k - 3) if k >= 3 and span > 1 else []
            exps = sorted({0, span, *inner})
            elems = [multiply(a, power(c, e)) for e in exps] + [b]
        if rng.random() < 0.5:
            elems = _perturb(rng, elems)
        yield Subset.of(elems, box.context)


class GridPoint(NamedTuple):
    a: MalcevElement
    b: MalcevElement
    c: MalcevElement
    i: int
    j: int


def construction_grid(box: BoxSpec, j_zero: bool = False) -> Iterator[GridPoint]:
    """All (a, b, c, i, j) with a != b from the box, c a positive central box
    element and 1 + i + 1 + j = box.k.  Invalid points are hypothesis misses."""
    universe = box.universe()
    ratios = [g for g in universe if is_central(g) and is_positive(g)]
    splits = [(box.k - 2, 0)] if j_zero else [(i, box.k - 2 - i) for i in range(box.k - 1)]
    for a in universe:
        for b in universe:
            if a == b:
                continue
            for c in ratios:
                for i, j in splits:
                    yield GridPoint(a, b, c, i, j)


# -- reports --------------------------------------------------------------------


class Counterexample(NamedTuple):
    elements: tuple
    order: str
    reason: str

    def sort_key(self):
        return (tuple(standard_key(g) for g in self.elements), self.order, self.reason)

    def to_dict(self) -> dict:
        return {
            "subset": [format_element(g) for g in self.elements],
            "order": self.order,
            "reason": self.reason,
        }


@dataclass
class VerificationReport:
    theorem_id: str
    instances_checked: int = 0
    hypothesis_hits: int = 0
    counterexamples: list = field(default_factory=list)
    counterexample_total: int = 0
    elapsed: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.counterexample_total:
            return "fail"
        if not self.hypothesis_hits:
            return "vacuous"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "vacuous": EXIT_VACUOUS}[self.status]

    def to_dict(self, include_elapsed: bool = True) -> dict:
        out = {
            "theorem_id": self.theorem_id,
            "status": self.status,
            "instances_checked": self.instances_checked,
            "hypothesis_hits": self.hypothesis_hits,
            "counterexample_total": self.counterexample_total,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "notes": list(self.notes),
        }
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 6)
        return out

    def to_json(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(include_elapsed), indent=2, sort_keys=True)

    CSV_FIELDS = ("theorem_id", "status", "instances_checked", "hypothesis_hits",
                  "counterexample_total", "elapsed")

    def csv_row(self, header: bool = False) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if header:
            writer.writerow(self.CSV_FIELDS)
        d = self.to_dict()
        writer.writerow([d[name] for name in self.CSV_FIELDS])
        return buf.getvalue().rstrip("\n")


# -- per-instance checks ----------------------------------------------------------
#
# Each check returns (hypothesis_hit, counterexamples).

def _cex(elems, order, reason) -> Counterexample:
    return Counterexample(tuple(elems), order.value if order else "-", reason)


def check_top_pair_growth(S: Subset, orders: Sequence[Order]):
    k = len(S)
    if k < 3:
        return False, []
    hit, out = False, []
    sq = None
    for order in orders:
        xs = sorted_under(S, order)
        if commutes(xs[-1], xs[-2]):
            continue
        hit = True
        sq = sq if sq is not None else len(product_set(xs))
        T = xs[:-1]
        tsq = len(product_set(T))
        if sq < tsq + 4:
            out.append(_cex(S, order, f"|S^2|={sq} < |T^2|+4={tsq + 4}"))
        if not is_pairwise_commuting(T) and sq < 3 * k - 1:
            out.append(_cex(S, order, f"<T> non-abelian but |S^2|={sq} < 3k-1={3 * k - 1}"))
    return hit, out


def check_cna_bound(S: Subset, orders=()):
    if not is_cna(S):
        return False, []
    k, sq = len(S), len(product_set(S))
    if sq < 4 * k - 4:
        return True, [_cex(S, None, f"CNA with |S^2|={sq} < 4k-4={4 * k - 4}")]
    return True, []


def check_abelian_threshold(S: Subset, orders=()):
    k = len(S)
    if k < 2:
        return False, []
    sq = len(product_set(S))
    if sq > 3 * k - 3:
        return False, []
    if not is_pairwise_commuting(S):
        return True, [_cex(S, None, f"|S^2|={sq} <= 3k-3 with <S> non-abelian")]
    return True, []


def check_progression_plus_point(S: Subset, orders: Sequence[Order]):
    k = len(S)
    if k < 4 or is_pairwise_commuting(S):
        return False, []
    sq = len(product_set(S))
    if sq > 4 * k - 6:
        return False, []
    hit, out = False, []
    found = None
    for order in orders:
        xs = sorted_under(S, order)
        if not is_pairwise_commuting(xs[:-1]):
            continue
        hit = True
        if found is None:
            found = (recognize_progression_plus_point(S),)
        d = found[0]
        bound = sq - 2 * k  # k + i with |S^2| = 3k + i
        if d is None:
            out.append(_cex(S, order, f"|S^2|={sq}: not a progression plus a point"))
            continue
        if d.v > bound:
            out.append(_cex(S, order, f"v={d.v} > k+i={bound}"))
        if d.i > bound or d.i > 2 * k - 6:
            out.append(_cex(S, order, f"spanning exponent {d.i} exceeds min(k+i, 2k-6)"))
        if not d.relation_holds() or d.reconstruct() != S:
            out.append(_cex(S, order, "recognized description does not reproduce S"))
    return hit, out


def check_extremal_two_progressions(S: Subset, orders=()):
    k = len(S)
    if k < 4 or is_pairwise_commuting(S):
        return False, []
    sq = len(product_set(S))
    extremal = sq == 3 * k - 2
    d = recognize_structure(S)
    if not extremal and d is None:
        return False, []
    out = []
    if d is not None and not extremal:
        out.append(_cex(S, None, f"recognized as {d} but |S^2|={sq} != 3k-2"))
    if extremal and d is None:
        out.append(_cex(S, None, f"|S^2|=3k-2={sq} but not two c-progressions"))
    if d is not None and (d.v != 1 or not d.relation_holds() or d.reconstruct() != S):
        out.append(_cex(S, None, "recognized description does not reproduce S"))
    return True, out


def check_k3_classification(S: Subset, orders=()):
    if len(S) != 3 or is_pairwise_commuting(S):
        return False, []
    sq = len(product_set(S))
    cls = classify_k3(S)
    classified = cls.case is not K3Case.NOT_EXTREMAL
    if sq != 7 and not classified:
        return False, []
    out = []
    if (sq == 7) != classified:
        out.append(_cex(S, None, f"|S^2|={sq} but classified {cls.case.value}"))
    if cls.case is K3Case.PROGRESSION:
        d = cls.structure
        if not is_central(d.c) or not d.relation_holds() or d.reconstruct() != S:
            out.append(_cex(S, None, f"progression case with inconsistent description {d}"))
    return True, out


def check_strict_progression_plus_point(S: Subset, orders=()):
    k = len(S)
    if k < 4 or is_pairwise_commuting(S):
        return False, []
    if len(product_set(S)) != 3 * k - 2:
        return False, []
    if not any(is_pairwise_commuting(S.without(x)) for x in S):
        return False, []
    d = recognize_progression_plus_point(S)
    if d is None or not d.strict:
        return True, [_cex(S, None, f"expected {{a, ac, ..., ac^(k-2), b}} with v=1, got {d}")]
    return True, []


def _check_construction(p: GridPoint, j_zero: bool):
    if j_zero and p.j != 0:
        return False, []
    try:
        built = construct_general(p.a, p.b, p.c, p.i, p.j)
    except ConstructionError:
        return False, []
    S = built.subset
    v = built.v
    out = []
    sq = len(product_set(S))
    if sq != built.predicted_square:
        out.append(_cex(S, None, f"|S^2|={sq} != 3|S|+v-3={built.predicted_square} ({_describe(p, v)})"))
    A = [multiply(p.a, power(p.c, e)) for e in range(p.i + 1)]
    B = [multiply(p.b, power(p.c, e)) for e in range(p.j + 1)]
    union = {multiply(s, t) for s in A for t in B} | {multiply(t, s) for s in A for t in B}
    base = min(multiply(p.a, p.b), multiply(p.b, p.a), key=standard_key)
    expected = {multiply(base, power(p.c, l)) for l in range(p.i + p.j + v + 1)}
    if union != expected or len(union) != p.i + p.j + v + 1:
        out.append(_cex(S, None, f"|AB ∪ BA|={len(union)} != i+j+v+1={p.i + p.j + v + 1} ({_describe(p, v)})"))
    return True, out


def _describe(p: GridPoint, v: int) -> str:
    return f"i={p.i}, j={p.j}, v={v}, c={format_element(p.c)}"


def check_general_formula_one_side(p: GridPoint, orders=()):
    return _check_construction(p, j_zero=True)


def check_general_formula(p: GridPoint, orders=()):
    return _check_construction(p, j_zero=False)


def check_two_progression_size(p: GridPoint, orders=()):
    try:
        S = construct_two_progressions(p.a, p.b, p.c, p.i, p.j)
    except ConstructionError:
        return False, []
    k = p.i + p.j + 2
    sq = len(product_set(S))
    if len(S) != k or sq != 3 * k - 2:
        return True, [_cex(S, None, f"k={len(S)}, |S^2|={sq}, expected {3 * k - 2}")]
    return True, []


CHECKS: dict[str, Callable] = {
    "L2_1": check_top_pair_growth,
    "P2_2": check_cna_bound,
    "L2_3": check_general_formula_one_side,
    "L2_4": check_general_formula,
    "T2_5": check_progression_plus_point,
    "E3_1": check_two_progression_size,
    "T3_2": check_extremal_two_progressions,
    "P3_3": check_k3_classification,
    "P3_4": check_strict_progression_plus_point,
    "BG_1_3": check_abelian_threshold,
}


# -- sweeping -------------------------------------------------------------------------


class _ChunkResult(NamedTuple):
    checked: int
    hits: int
    total: int
    counterexamples: list


def _merge_capped(cexs: list) -> list:
    return sorted(cexs, key=Counterexample.sort_key)[:COUNTEREXAMPLE_CAP]


def _run_chunk(job) -> _ChunkResult:
    theorem_id, items, orders = job
    check = CHECKS[theorem_id]
    hits = total = 0
    cexs = []
    for item in items:
        hit, found = check(item, orders)
        hits += hit
        if found:
            total += len(found)
            cexs.extend(found)
            if len(cexs) > 4 * COUNTEREXAMPLE_CAP:
                cexs = _merge_capped(cexs)
    return _ChunkResult(len(items), hits, total, _merge_capped(cexs))


def _chunks(family: Iterable, size: int) -> Iterator[list]:
    it = iter(family)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def sweep(
    theorem_id: str,
    family: Iterable,
    orders: Sequence[Order] = BOTH_ORDERS,
    jobs: int = 1,
    notes: Sequence[str] = (),
    chunk_size: int = CHUNK_SIZE,
) -> VerificationReport:
    """Run one statement's check over a family and merge the results."""
    if theorem_id not in CHECKS:
        raise ValueError(f"unknown theorem id {theorem_id!r}")
    orders = tuple(orders)
    start = time.perf_counter()
    jobs_iter = ((theorem_id, chunk, orders) for chunk in _chunks(family, chunk_size))
    if jobs > 1:
        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            results = list(pool.imap(_run_chunk, jobs_iter))
    else:
        results = [_run_chunk(job) for job in jobs_iter]
    report = VerificationReport(theorem_id, notes=list(notes))
    cexs = []
    for r in results:
        report.instances_checked += r.checked
        report.hypothesis_hits += r.hits
        report.counterexample_total += r.total
        cexs.extend(r.counterexamples)
    report.counterexamples = _merge_capped(cexs)
    if not report.hypothesis_hits:
        report.notes.append("vacuous: no instance met the hypothesis")
    report.elapsed = time.perf_counter() - start
    return report


def verify_lemma_2_1(family, orders=BOTH_ORDERS, jobs=1):
    return sweep("L2_1", family, orders, jobs)


def verify_prop_2_2(family, jobs=1):
    return sweep("P2_2", family, jobs=jobs)


def verify_lemmas_2_3_2_4(grid, j_zero: bool = False, jobs=1):
    return sweep("L2_3" if j_zero else "L2_4", grid, jobs=jobs)


def verify_example_3_1(grid, jobs=1):
    return sweep("E3_1", grid, jobs=jobs)


def verify_thm_2_5(family, orders=BOTH_ORDERS, jobs=1):
    return sweep("T2_5", family, orders, jobs)


def verify_thm_3_2(family, jobs=1, notes=()):
    return sweep("T3_2", family, jobs=jobs, notes=notes)


def verify_prop_3_3(family, jobs=1):
    return sweep("P3_3", family, jobs=jobs)


def verify_prop_3_4(family, jobs=1):
    return sweep("P3_4", family, jobs=jobs)


def verify_background_1_3(family, jobs=1):
    return sweep("BG_1_3", family, jobs=jobs)


def run_verification(
    theorem_id: str,
    box: BoxSpec,
    mode: str = "exhaustive",
    orders: Optional[Sequence[Order]] = None,
    jobs: int = 1,
) -> VerificationReport:
    """Build the family a statement needs from a box and sweep it.

    ``mode`` is ``exhaustive``, ``sampled`` or ``constructed``; construction
    statements (L2_3, L2_4, E3_1) always sweep the box's construction grid.
    """
    if theorem_id not in CHECKS:
        raise ValueError(f"unknown theorem id {theorem_id!r}")
    notes = [f"box n={box.n} gen_bound={box.gen_bound} comm_bound={box.comm_bound} k={box.k}"]
    if theorem_id in GRID_THEOREMS:
        family = construction_grid(box, j_zero=theorem_id == "L2_3")
        notes.append("family: construction grid")
    elif mode == "constructed":
        family = constructed_family(box)
        notes.append(f"family: {box.budget} constructed/perturbed instances, seed={box.seed}")
    else:
        family = enumerate_subsets(box, mode)
        if mode == "sampled":
            notes.append(f"family: {box.budget} sampled subsets, seed={box.seed}")
        else:
            notes.append("family: exhaustive")
    if theorem_id in ("T3_2", "T2_5") and (mode != "exhaustive" or box.k >= 6):
        notes.append("non-exhaustive family: verification strength, not proof")
    if orders is None:
        orders = BOTH_ORDERS if theorem_id in ORDER_DEPENDENT else (Order.STANDARD,)
    return sweep(theorem_id, family, orders, jobs, notes)
