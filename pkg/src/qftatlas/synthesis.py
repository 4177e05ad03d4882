"""Enumerative sketch solver for the loop schedules.

A sketch is a loop template over one or two qubit lines whose statements
carry integer holes inside a small expression grammar: affine functions of
the loop variable (a*i + b), parity starts ((a*i + b) mod 2), and window
caps (min of two affine functions).  Solving enumerates hole assignments
in lexicographic order, simulates each candidate against a declarative
interaction spec (required pair coverage, per-mode ordering, duplicate
policy), pruning a candidate at its first violated layer, and returns the
satisfying assignments.

Hole domains default to [-3, 3] for slopes and iteration offsets and
[0, 2*size] for position offsets; both are overridable per hole.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .qft_gates import Mode


class SynthesisError(ValueError):
    pass


# -- expression grammar ------------------------------------------------------


@dataclass(frozen=True)
class Affine:
    """slope * i + size_mult * size + offset; slope/offset may be holes."""

    slope: int | str
    offset: int | str
    size_mult: int = 0

    def value(self, i: int, size: int, env: dict[str, int]) -> int:
        a = env[self.slope] if isinstance(self.slope, str) else self.slope
        b = env[self.offset] if isinstance(self.offset, str) else self.offset
        return a * i + self.size_mult * size + b

    def holes(self) -> list[str]:
        return [x for x in (self.slope, self.offset) if isinstance(x, str)]


@dataclass(frozen=True)
class Mod2:
    inner: Affine

    def value(self, i: int, size: int, env: dict[str, int]) -> int:
        return self.inner.value(i, size, env) % 2

    def holes(self) -> list[str]:
        return self.inner.holes()


@dataclass(frozen=True)
class MinAffine:
    left: Affine
    right: Affine

    def value(self, i: int, size: int, env: dict[str, int]) -> int:
        return min(self.left.value(i, size, env), self.right.value(i, size, env))

    def holes(self) -> list[str]:
        return self.left.holes() + self.right.holes()


Expr = Affine | Mod2 | MinAffine


# -- statements ---------------------------------------------------------------


@dataclass(frozen=True)
class CphaseLinks:
    """Interact across every link whose positions fall in [lo, hi)."""

    lo: Expr | None = None
    hi: Expr | None = None


@dataclass(frozen=True)
class CphaseWindow:
    """Interact along one line at the window's brick positions."""

    row: int
    beg: Expr
    end: Expr


@dataclass(frozen=True)
class SwapLayer:
    row: int
    beg: Expr
    end: Expr
    delay: int = 0     # rounds to hold before this row starts moving


Statement = CphaseLinks | CphaseWindow | SwapLayer


@dataclass(frozen=True)
class SketchTemplate:
    shape: str
    iterations: Affine          # evaluated with i = 0 against the size
    statements: tuple[Statement, ...]
    holes: tuple[str, ...]
    domains: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def domain(self, hole: str, size: int) -> tuple[int, ...]:
        if hole in self.domains:
            return self.domains[hole]
        if hole.startswith("w"):
            return tuple(range(0, 2 * size + 1))   # position offsets
        return tuple(range(-3, 4))                 # slopes and small offsets


@dataclass(frozen=True)
class SynthSpec:
    """Interaction requirements for a candidate schedule."""

    kind: str                     # "line" | "grid" | "sycamore"
    size: int
    mode: Mode
    required: frozenset[tuple[int, int]]
    allow_duplicates: bool = False


@dataclass(frozen=True)
class HoleAssignment:
    values: dict[str, int]
    satisfies: bool
    first_failure: str | None = None

    def as_json(self) -> dict:
        return {"holes": dict(sorted(self.values.items())),
                "satisfies": self.satisfies,
                "first_failure": self.first_failure}


# -- geometry -----------------------------------------------------------------


def line_links(size: int) -> list[tuple[int, int]]:
    return [(p, p + 1) for p in range(size - 1)]


def grid_links(size: int) -> list[tuple[int, int]]:
    return [(c, c) for c in range(size)]


def sycamore_links(size: int) -> list[tuple[int, int]]:
    links = []
    for p in range(1, size, 2):
        links.append((p, p - 1))
        if p + 1 < size:
            links.append((p, p + 1))
    return links


def spec_links(spec: SynthSpec) -> list[tuple[int, int]]:
    if spec.kind == "line":
        return line_links(spec.size)
    if spec.kind == "grid":
        return grid_links(spec.size)
    if spec.kind == "sycamore":
        return sycamore_links(spec.size)
    raise SynthesisError(f"unknown spec kind {spec.kind!r}")


def cross_pairs(size: int, exclude_same_position: bool = False) -> frozenset[tuple[int, int]]:
    pairs = set()
    for a in range(size):
        for b in range(size):
            if exclude_same_position and a == b:
                continue
            pairs.add((a, b))
    return frozenset(pairs)


def line_pairs(size: int) -> frozenset[tuple[int, int]]:
    return frozenset((a, b) for a in range(size) for b in range(a + 1, size))


# -- ordering trackers --------------------------------------------------------


class _LineOrder:
    """Full QFT CPHASE release order along one line of n qubits."""

    def __init__(self, n: int):
        self.next_target = list(range(1, n + 1))
        self.ctrl_prefix = [0] * n

    def ready(self, x: int, y: int) -> bool:
        return (self.next_target[x] == y
                and self.ctrl_prefix[y] == x
                and self.ctrl_prefix[x] == x)

    def mark(self, x: int, y: int) -> None:
        self.next_target[x] = y + 1
        self.ctrl_prefix[y] += 1


class _CrossOrder:
    """Product order over (top rank, bottom rank) cross pairs, induced on
    the required subset (excluded pairs impose no constraints)."""

    def __init__(self, required: frozenset[tuple[int, int]]):
        self.required = required
        self.done: set[tuple[int, int]] = set()

    def ready(self, a: int, b: int) -> bool:
        return all((a, b2) in self.done for b2 in range(b)
                   if (a, b2) in self.required) and \
               all((a2, b) in self.done for a2 in range(a)
                   if (a2, b) in self.required)

    def mark(self, a: int, b: int) -> None:
        self.done.add((a, b))


# -- simulation ---------------------------------------------------------------


def _simulate(sketch: SketchTemplate, spec: SynthSpec,
              env: dict[str, int]) -> tuple[bool, str | None]:
    size = spec.size
    iterations = sketch.iterations.value(0, size, env)
    if iterations < 0 or iterations > 8 * size + 8:
        return False, f"iteration count {iterations} out of range"

    two_rows = spec.kind in ("grid", "sycamore")
    top = list(range(size))
    bottom = list(range(size)) if two_rows else None
    links = spec_links(spec)
    executed: set[tuple[int, int]] = set()
    strict = spec.mode is Mode.STRICT
    order = (_CrossOrder(spec.required) if two_rows else _LineOrder(size)) if strict else None

    def run_pair(a: int, b: int, where: str) -> str | None:
        if two_rows:
            key = (a, b)
        else:
            key = (a, b) if a < b else (b, a)
        if key in executed:
            if spec.allow_duplicates:
                return None
            return f"{where}: pair {key} executed twice"
        if strict:
            x, y = key
            if not order.ready(x, y):
                return f"{where}: pair {key} out of order"
            order.mark(x, y)
        executed.add(key)
        return None

    for i in range(iterations):
        for st in sketch.statements:
            if isinstance(st, CphaseLinks):
                lo = st.lo.value(i, size, env) if st.lo is not None else -(10 ** 9)
                hi = st.hi.value(i, size, env) if st.hi is not None else 10 ** 9
                progressed, first_pass = True, True
                while progressed:   # pairs released within the sweep run too
                    progressed = False
                    for pt, pb in links:
                        if not (lo <= pt < hi):
                            continue
                        a, b = top[pt], bottom[pb]
                        if (a, b) in executed:
                            if first_pass and not spec.allow_duplicates:
                                return False, f"iteration {i}: pair {(a, b)} executed twice"
                            continue
                        if strict and not order.ready(a, b):
                            continue    # strict schedules skip unreleased meetings
                        err = run_pair(a, b, f"iteration {i}")
                        if err:
                            return False, err
                        progressed = True
                    first_pass = False
            elif isinstance(st, CphaseWindow):
                beg = st.beg.value(i, size, env)
                end = st.end.value(i, size, env)
                line = top if st.row == 0 else bottom
                if line is None:
                    return False, f"iteration {i}: no row {st.row}"
                for p in range(beg, min(end, size - 1) + 1, 2):
                    if p < 0 or p + 1 >= size:
                        continue
                    a, b = line[p], line[p + 1]
                    if strict and not order.ready(*(sorted((a, b)))):
                        continue
                    err = run_pair(a, b, f"iteration {i}")
                    if err:
                        return False, err
            elif isinstance(st, SwapLayer):
                if i < st.delay:
                    continue
                j = i - st.delay
                beg = st.beg.value(j, size, env)
                end = st.end.value(j, size, env)
                line = top if st.row == 0 else bottom
                if line is None:
                    return False, f"iteration {i}: no row {st.row}"
                if beg < 0:
                    return False, f"iteration {i}: negative window start {beg}"
                for p in range(beg, min(end, size - 2) + 1, 2):
                    line[p], line[p + 1] = line[p + 1], line[p]
    missing = spec.required - executed
    if missing:
        return False, f"missing {len(missing)} pairs, e.g. {sorted(missing)[:3]}"
    return True, None


# -- solver -------------------------------------------------------------------

SEARCH_CAP = 10 ** 8


def solve(sketch: SketchTemplate, spec: SynthSpec,
          limit: int = 1,
          search_cap: int = SEARCH_CAP) -> list[HoleAssignment]:
    """Enumerate hole assignments lexicographically; return satisfying ones."""
    domains = [sketch.domain(h, spec.size) for h in sketch.holes]
    space = 1
    for d in domains:
        space *= len(d)
    if space > search_cap:
        raise SynthesisError(f"search space {space} exceeds cap {search_cap}")
    found: list[HoleAssignment] = []
    for combo in itertools.product(*domains):
        env = dict(zip(sketch.holes, combo))
        ok, failure = _simulate(sketch, spec, env)
        if ok:
            found.append(HoleAssignment(env, True))
            if len(found) >= limit:
                break
    return found


@dataclass(frozen=True)
class GeneralizationReport:
    assignment: HoleAssignment
    results: tuple[tuple[int, bool, str | None], ...]

    @property
    def generalizing(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    def as_json(self) -> dict:
        return {
            "holes": dict(sorted(self.assignment.values.items())),
            "sizes": [{"size": s, "ok": ok, "failure": failure}
                      for s, ok, failure in self.results],
            "generalizing": self.generalizing,
        }


def cross_validate(assignment: HoleAssignment, sketch: SketchTemplate,
                   spec_family: list[SynthSpec]) -> GeneralizationReport:
    """Re-instantiate the assignment at each size and report satisfaction."""
    results = []
    for spec in spec_family:
        ok, failure = _simulate(sketch, spec, assignment.values)
        results.append((spec.size, ok, failure))
    return GeneralizationReport(assignment, tuple(results))


# -- shape library ------------------------------------------------------------


def lnn_sketch() -> SketchTemplate:
    """Triangular path pattern: parity start, window capped by two affines."""
    return SketchTemplate(
        shape="lnn",
        iterations=Affine(0, "it", size_mult=2),      # 2n + it rounds
        statements=(
            CphaseWindow(0, Mod2(Affine(1, "b")), MinAffine(Affine(1, "c1"), Affine(-1, "w1"))),
            SwapLayer(0, Mod2(Affine(1, "b")), MinAffine(Affine(1, "c1"), Affine(-1, "w1"))),
        ),
        holes=("it", "b", "c1", "w1"),
    )


def lnn_spec(n: int, mode: Mode = Mode.STRICT) -> SynthSpec:
    return SynthSpec("line", n, mode, line_pairs(n), allow_duplicates=False)


def grid_relaxed_sketch() -> SketchTemplate:
    """Opposite-parity brick rotation under full vertical interaction."""
    return SketchTemplate(
        shape="grid-ie-relaxed",
        iterations=Affine(0, "it", size_mult=1),      # m + it iterations
        statements=(
            CphaseLinks(),
            SwapLayer(0, Mod2(Affine("at", "bt")), Affine(0, 0, size_mult=1)),
            SwapLayer(1, Mod2(Affine("ab", "bb")), Affine(0, 0, size_mult=1)),
        ),
        holes=("it", "at", "bt", "ab", "bb"),
        domains={"it": (0, 1, 2), "bt": (0, 1), "bb": (0, 1)},
    )


def grid_relaxed_spec(m: int) -> SynthSpec:
    return SynthSpec("grid", m, Mode.RELAXED, cross_pairs(m), allow_duplicates=False)


def grid_relaxed_sketch_no_mod() -> SketchTemplate:
    """The same shape with the parity expression removed: provably stuck,
    since a constant window start undoes the previous layer's swaps."""
    return SketchTemplate(
        shape="grid-ie-relaxed-no-mod",
        iterations=Affine(0, "it", size_mult=1),
        statements=(
            CphaseLinks(),
            SwapLayer(0, Affine(0, "bt"), Affine(0, 0, size_mult=1)),
            SwapLayer(1, Affine(0, "bb"), Affine(0, 0, size_mult=1)),
        ),
        holes=("it", "bt", "bb"),
        domains={"it": (0, 1, 2), "bt": (0, 1, 2, 3), "bb": (0, 1, 2, 3)},
    )


def grid_strict_sketch() -> SketchTemplate:
    """Both rows run the triangular window; the second row holds one round."""
    return SketchTemplate(
        shape="grid-ie-strict",
        iterations=Affine(0, "it", size_mult=2),
        statements=(
            CphaseLinks(),
            SwapLayer(0, Mod2(Affine(1, "bt")), MinAffine(Affine(1, "c1"), Affine(-1, "w1"))),
            SwapLayer(1, Mod2(Affine(1, "bb")), MinAffine(Affine(1, "c2"), Affine(-1, "w2")),
                      delay=1),
        ),
        holes=("it", "bt", "c1", "w1", "bb", "c2", "w2"),
        domains={"it": (-2, -1, 0), "bt": (0, 1), "bb": (0, 1)},
    )


def grid_strict_spec(m: int) -> SynthSpec:
    return SynthSpec("grid", m, Mode.STRICT, cross_pairs(m), allow_duplicates=True)


def sycamore_relaxed_sketch() -> SketchTemplate:
    """Synchronized brick rotation under full link interaction; duplicates
    tolerated during search, same-position pairs excluded from the goal."""
    return SketchTemplate(
        shape="syc-ie-relaxed",
        iterations=Affine(0, "it", size_mult=1),      # L + it iterations
        statements=(
            CphaseLinks(),
            SwapLayer(0, Mod2(Affine("a", "b")), Affine(0, 0, size_mult=1)),
            SwapLayer(1, Mod2(Affine("a", "b")), Affine(0, 0, size_mult=1)),
        ),
        holes=("it", "a", "b"),
        domains={"it": (0, 1, 2), "b": (0, 1)},
    )


def sycamore_relaxed_spec(L: int) -> SynthSpec:
    return SynthSpec("sycamore", L, Mode.RELAXED,
                     cross_pairs(L, exclude_same_position=True),
                     allow_duplicates=True)


def sycamore_strict_sketch() -> SketchTemplate:
    """Synchronized triangular windows; meetings release in crossing order."""
    return SketchTemplate(
        shape="syc-ie-strict",
        iterations=Affine(0, "it", size_mult=2),
        statements=(
            CphaseLinks(),
            SwapLayer(0, Mod2(Affine(1, "b")), MinAffine(Affine(1, "c1"), Affine(-1, "w1"))),
            SwapLayer(1, Mod2(Affine(1, "b")), MinAffine(Affine(1, "c1"), Affine(-1, "w1"))),
        ),
        holes=("it", "b", "c1", "w1"),
        domains={"it": (-3, -2, -1, 0), "b": (0, 1)},
    )


def sycamore_strict_spec(L: int) -> SynthSpec:
    return SynthSpec("sycamore", L, Mode.STRICT,
                     cross_pairs(L, exclude_same_position=True),
                     allow_duplicates=True)


SHAPES = {
    "lnn": (lnn_sketch, lnn_spec),
    "grid-ie-relaxed": (grid_relaxed_sketch, grid_relaxed_spec),
    "grid-ie-strict": (grid_strict_sketch, grid_strict_spec),
    "syc-ie-relaxed": (sycamore_relaxed_sketch, sycamore_relaxed_spec),
    "syc-ie-strict": (sycamore_strict_sketch, sycamore_strict_spec),
}


def solve_shape(shape: str, size: int, limit: int = 1) -> list[HoleAssignment]:
    if shape not in SHAPES:
        raise SynthesisError(f"unknown sketch shape {shape!r}: pick from {sorted(SHAPES)}")
    make_sketch, make_spec = SHAPES[shape]
    return solve(make_sketch(), make_spec(size), limit=limit)
