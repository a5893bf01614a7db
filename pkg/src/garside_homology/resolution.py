"""Cells, the recursive differential, and ordering optimization.

Given a structure and a total ordering of its atoms, the n-cells are the
increasing atom tuples [a1, ..., an] with a common target such that each a_i
is the least right-divisor of lcm(a_i, ..., an).  They index a free
resolution of the trivial module; the differential is defined recursively
together with a contracting homotopy (`contracting_*`) and a reduction map
(`reduce_*`).  The differential is linear over the category, so it is cached
per cell; contraction and reduction are only additive, so the reduction is
cached on the one family of elementary chains the recursion actually hits:
complement[A] pairs coming from a cell [a, A].

Chains are plain dicts mapping (coefficient word, cell) to a nonzero integer,
with coefficient words kept canonical so that collecting terms is exact.
Treat chains as immutable values: combine them with chain_iadd into fresh
accumulators, never mutate one you were given.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .gaussian import (
    AtomOrdering,
    ConsistencyError,
    GaussianStructure,
    PreconditionError,
    Word,
)


class Cell(NamedTuple):
    """An ordered atom tuple satisfying the cell condition.

    `src` is the source object of the tuple's lcm; for the empty cell it is
    the object the cell sits at.
    """

    atoms: tuple[int, ...]
    src: int

    @property
    def dim(self) -> int:
        return len(self.atoms)


Chain = dict


def chain_iadd(acc: Chain, other: Chain, mult: int = 1) -> Chain:
    """acc += mult * other, dropping zero entries; returns acc."""
    if mult == 0:
        return acc
    for key, m in other.items():
        new = acc.get(key, 0) + mult * m
        if new:
            acc[key] = new
        else:
            del acc[key]
    return acc


def chain_sub(a: Chain, b: Chain) -> Chain:
    return chain_iadd(chain_iadd({}, a), b, -1)


class OrderResolution:
    """The free resolution attached to a structure and an atom ordering.

    All methods are deterministic functions of (structure, ordering); the
    caches only ever hold values any caller would recompute identically, so
    instances can be shared across threads for reading.  Set memo=False to
    recompute everything from scratch (for cross-validation; much slower).
    """

    def __init__(
        self,
        struct: GaussianStructure,
        ordering: Optional[AtomOrdering] = None,
        max_dim: Optional[int] = None,
        memo: bool = True,
    ):
        self.struct = struct
        self.ordering = ordering if ordering is not None else struct.default_ordering()
        if len(self.ordering.ranks) != struct.n_atoms:
            raise PreconditionError("ordering does not cover the atoms")
        self.memo = memo
        self._lcm_cache: dict[Cell, Word] = {}
        self._cell_by_atoms: dict[tuple[int, ...], Cell] = {}
        self._diff_cache: dict[Cell, Chain] = {}
        self._reduce_cache: dict[tuple[Word, Cell], Chain] = {}
        if max_dim is None:
            busiest = max((len(t) for t in struct.atoms_by_target), default=0)
            max_dim = min(busiest, 8)
        self.max_dim = max_dim
        self.cells: list[list[Cell]] = self._enumerate(max_dim)

    # -- cells ---------------------------------------------------------------

    def _canon(self, w: Word) -> Word:
        return self.struct.canonical_form(w, self.ordering)

    def zero_cell(self, obj: int) -> Cell:
        return Cell((), obj)

    def make_cell(self, atoms) -> Cell:
        """Cell object for an atom tuple (the tuple must be a genuine cell)."""
        atoms = tuple(atoms)
        cell = self._cell_by_atoms.get(atoms)
        if cell is None:
            if not atoms:
                raise PreconditionError("zero cells need an explicit object; use zero_cell")
            res = self.struct.left_lcm(atoms)
            if res is None:
                raise PreconditionError("cell atoms admit no common left-multiple")
            lcm = self._canon(res[0])
            cell = Cell(atoms, lcm.src)
            self._lcm_cache[cell] = lcm
            self._cell_by_atoms[atoms] = cell
        return cell

    def cell_lcm(self, cell: Cell) -> Word:
        w = self._lcm_cache.get(cell)
        if w is None:
            if not cell.atoms:
                w = Word(cell.src, ())
            else:
                w = self.cell_lcm(self.make_cell(cell.atoms))
            self._lcm_cache[cell] = w
        return w

    def cell_target(self, cell: Cell) -> int:
        if cell.atoms:
            return self.struct.atom_target[cell.atoms[0]]
        return cell.src

    def _try_extend(self, alpha: int, cell: Cell) -> Optional[Cell]:
        """The cell [alpha, cell] if the tuple satisfies the cell condition."""
        lcm = self.cell_lcm(cell)
        res = self.struct.lcm_with_atom(lcm, alpha)
        if res is None:
            return None
        x, _ = res
        joined = self._canon(Word(x.src if x.atoms else lcm.src, x.atoms + lcm.atoms))
        if self.struct.least_divisor(joined, self.ordering) != alpha:
            return None
        new = Cell((alpha,) + cell.atoms, joined.src)
        self._lcm_cache[new] = joined
        self._cell_by_atoms[new.atoms] = new
        return new

    def _enumerate(self, max_dim: int) -> list[list[Cell]]:
        ranks = self.ordering.ranks
        dims = [[self.zero_cell(x) for x in range(len(self.struct.object_names))]]
        for _ in range(max_dim):
            layer = []
            for cell in dims[-1]:
                tgt = self.cell_target(cell)
                bound = ranks[cell.atoms[0]] if cell.atoms else None
                for alpha in self.struct.atoms_by_target[tgt]:
                    if bound is not None and ranks[alpha] >= bound:
                        continue
                    new = self._try_extend(alpha, cell)
                    if new is not None:
                        layer.append(new)
            layer.sort(key=lambda c: tuple(ranks[a] for a in c.atoms))
            dims.append(layer)
        return dims

    def cell_counts(self) -> list[int]:
        return [len(layer) for layer in self.cells]

    def is_cell(self, atoms) -> bool:
        """Post hoc check of the cell condition on an atom tuple."""
        atoms = tuple(atoms)
        if not atoms:
            return True
        ranks = self.ordering.ranks
        tgt = self.struct.atom_target[atoms[0]]
        if any(self.struct.atom_target[a] != tgt for a in atoms):
            return False
        if any(ranks[atoms[i]] >= ranks[atoms[i + 1]] for i in range(len(atoms) - 1)):
            return False
        for i in range(len(atoms)):
            res = self.struct.left_lcm(atoms[i:])
            if res is None:
                return False
            if self.struct.least_divisor(self._canon(res[0]), self.ordering) != atoms[i]:
                return False
        return True

    # -- the recursion ---------------------------------------------------------

    def _rest_cell(self, cell: Cell) -> Cell:
        rest = cell.atoms[1:]
        if not rest:
            return self.zero_cell(self.struct.atom_target[cell.atoms[0]])
        return self.make_cell(rest)

    def act(self, g: Word, chain: Chain) -> Chain:
        """Left action of a word on a chain (the module structure)."""
        if not g.atoms:
            return chain
        out: Chain = {}
        for (w, cell), m in chain.items():
            gw = self._canon(Word(g.src, g.atoms + w.atoms))
            chain_iadd(out, {(gw, cell): 1}, m)
        return out

    def differential(self, cell: Cell) -> Chain:
        """Boundary of a cell of dimension >= 1 (cached per cell)."""
        if not cell.atoms:
            raise PreconditionError("the boundary of a zero cell is the augmentation, not a chain")
        cached = self._diff_cache.get(cell)
        if cached is not None:
            return cached
        rest = self._rest_cell(cell)
        u = self.struct.quotient_word(self.cell_lcm(cell), self.cell_lcm(rest))
        if u is None:
            raise ConsistencyError("cell lcm is not a multiple of its facet lcm")
        u = self._canon(u)
        out: Chain = {(u, rest): 1}
        chain_iadd(out, self._reduce_elem(u, rest, store=True), -1)
        if self.memo:
            self._diff_cache[cell] = out
        return out

    def boundary_chain(self, chain: Chain) -> Chain:
        """Module-linear extension of the differential to chains of dim >= 1."""
        acc: Chain = {}
        for (w, cell), m in chain.items():
            chain_iadd(acc, self.act(w, self.differential(cell)), m)
        return acc

    def augmentation(self, chain: Chain) -> int:
        """Degree-0 augmentation: every elementary 0-chain maps to 1."""
        return sum(chain.values())

    def irreducible(self, f: Word, cell: Cell) -> bool:
        if not cell.atoms:
            return not f.atoms
        lcm = self.cell_lcm(cell)
        flcm = Word(f.src if f.atoms else lcm.src, f.atoms + lcm.atoms)
        return self.struct.least_divisor(flcm, self.ordering) == cell.atoms[0]

    def _reduce_elem(self, f: Word, cell: Cell, store: bool) -> Chain:
        """Reduction of the elementary chain f[cell]; store caches the result.

        Only the complement-shaped chains reached from differentials are
        stored; arbitrary reductions (store=False) reuse but never grow the
        cache.
        """
        if not cell.atoms:
            return {(Word(f.src, ()), Cell((), f.src)): 1}
        key = (f, cell)
        cached = self._reduce_cache.get(key)
        if cached is not None:
            return cached
        val = self.contracting_chain(self.act(f, self.differential(cell)))
        if self.memo and store:
            self._reduce_cache[key] = val
        return val

    def reduce_chain(self, chain: Chain) -> Chain:
        """The reduction map, term by term (only additive, not module-linear)."""
        acc: Chain = {}
        for (w, cell), m in chain.items():
            chain_iadd(acc, self._reduce_elem(w, cell, store=False), m)
        return acc

    def contracting_chain(self, chain: Chain) -> Chain:
        """The contracting homotopy, term by term."""
        acc: Chain = {}
        for (w, cell), m in chain.items():
            chain_iadd(acc, self.contracting_elem(w, cell), m)
        return acc

    def contracting_elem(self, f: Word, cell: Cell) -> Chain:
        """Homotopy on one elementary chain: 0 if irreducible, else the
        telescoping step through the cell extended by the least divisor."""
        struct = self.struct
        if not cell.atoms:
            # degree 0: telescope f down its canonical decomposition
            acc: Chain = {}
            w = self._canon(f)
            while w.atoms:
                alpha = struct.least_divisor(w, self.ordering)
                g = self._canon(struct.quotient_atom(w, alpha))
                one_cell = Cell((alpha,), struct.atom_source[alpha])
                chain_iadd(acc, {(g, one_cell): 1})
                w = g
            return acc
        lcm = self.cell_lcm(cell)
        flcm = Word(f.src if f.atoms else lcm.src, f.atoms + lcm.atoms)
        alpha = struct.least_divisor(flcm, self.ordering)
        if alpha == cell.atoms[0]:
            return {}
        res = struct.lcm_with_atom(lcm, alpha)
        if res is None:
            raise ConsistencyError("least divisor admits no lcm with the cell")
        x = self._canon(res[0])
        if not x.atoms:
            raise ConsistencyError("least divisor already divides the cell lcm")
        g = struct.quotient_word(f, x)
        if g is None:
            raise ConsistencyError("complement does not left-divide the coefficient")
        g = self._canon(g)
        new_cell = Cell((alpha,) + cell.atoms, x.src)
        if new_cell not in self._lcm_cache:
            self._lcm_cache[new_cell] = self._canon(Word(x.src, x.atoms + lcm.atoms))
        acc: Chain = {(g, new_cell): 1}
        reduced = self._reduce_elem(x, cell, store=True)
        chain_iadd(acc, self.contracting_chain(self.act(g, reduced)))
        return acc

    # -- comparisons for the termination order (used by checks) ----------------

    def precedes(self, term1: tuple[Word, Cell], term2: tuple[Word, Cell]) -> bool:
        """The well-founded comparison on elementary chains: compare the
        composites coefficient*lcm by proper left-divisibility, then first
        atoms."""
        f, a_cell = term1
        g, b_cell = term2
        wa = self._canon(Word(f.src if f.atoms else a_cell.src, f.atoms + self.cell_lcm(a_cell).atoms))
        wb = self._canon(Word(g.src if g.atoms else b_cell.src, g.atoms + self.cell_lcm(b_cell).atoms))
        if self.struct.word_equal(wa, wb):
            if not a_cell.atoms or not b_cell.atoms:
                return False
            return self.ordering.rank(a_cell.atoms[0]) < self.ordering.rank(b_cell.atoms[0])
        return self.struct.left_divides(wa, wb)

    def check_boundary_squared(self) -> None:
        """Raise if the composite of two differentials is nonzero anywhere."""
        for n in range(2, len(self.cells)):
            for cell in self.cells[n]:
                composite = self.boundary_chain(self.differential(cell))
                if composite:
                    raise ConsistencyError(f"boundary of boundary is nonzero on {cell}")
        for cell in self.cells[1] if len(self.cells) > 1 else []:
            if self.augmentation(self.differential(cell)) != 0:
                raise ConsistencyError(f"augmented boundary is nonzero on {cell}")


@dataclass
class CellComplex:
    """Cells plus all cached differentials, ready for specialization."""

    structure: GaussianStructure
    ordering: AtomOrdering
    cells: list[list[Cell]]
    boundaries: list[dict[Cell, Chain]]
    resolution: OrderResolution

    def cell_counts(self) -> list[int]:
        return [len(layer) for layer in self.cells]


def build_complex(
    struct: GaussianStructure,
    ordering: Optional[AtomOrdering] = None,
    max_dim: Optional[int] = None,
    memo: bool = True,
) -> CellComplex:
    """Enumerate cells up to max_dim and compute every differential."""
    res = OrderResolution(struct, ordering, max_dim, memo=memo)
    boundaries: list[dict[Cell, Chain]] = [{}]
    for n in range(1, len(res.cells)):
        boundaries.append({cell: res.differential(cell) for cell in res.cells[n]})
    return CellComplex(struct, res.ordering, res.cells, boundaries, res)


# -- two-cell statistics and ordering optimization -----------------------------


@dataclass
class TwoCellBounds:
    """Lower/upper bounds on the 2-cell count over all orderings."""

    per_object: dict[int, tuple[int, int]]
    lcm_stats: list[tuple[int, Word, dict[int, int]]]  # (object, lcm, atom -> partner count)
    lower: int
    upper: int


def _pairwise_lcms(struct: GaussianStructure, atoms) -> dict[tuple[int, int], Word]:
    out = {}
    for a, b in itertools.combinations(atoms, 2):
        res = struct.left_lcm([a, b])
        if res is not None:
            out[(a, b)] = struct.canonical_form(res[0])
    return out


def _lcm_statistics(struct: GaussianStructure):
    """Per object: the distinct pairwise-lcm morphisms with their divisor
    atoms and partner counts n(a, lcm)."""
    for x, atoms in enumerate(struct.atoms_by_target):
        pair_lcm = _pairwise_lcms(struct, atoms)
        distinct: list[Word] = []
        seen = set()
        for lcm in pair_lcm.values():
            if lcm not in seen:
                seen.add(lcm)
                distinct.append(lcm)
        distinct.sort(key=lambda w: (len(w.atoms), w.atoms, w.src))
        for lcm in distinct:
            divisors = [a for a in atoms if struct.quotient_atom(lcm, a) is not None]
            counts = {a: 0 for a in divisors}
            for (a, b), val in pair_lcm.items():
                if val == lcm:
                    counts[a] += 1
                    counts[b] += 1
            yield x, lcm, counts


def two_cell_bounds(struct: GaussianStructure) -> TwoCellBounds:
    """Sum over lcm morphisms of the min (resp. max) partner count."""
    per_object: dict[int, tuple[int, int]] = {x: (0, 0) for x in range(len(struct.object_names))}
    stats = []
    for x, lcm, counts in _lcm_statistics(struct):
        stats.append((x, lcm, counts))
        lo, hi = per_object[x]
        per_object[x] = (lo + min(counts.values()), hi + max(counts.values()))
    lower = sum(lo for lo, _ in per_object.values())
    upper = sum(hi for _, hi in per_object.values())
    return TwoCellBounds(per_object, stats, lower, upper)


def _has_cycle(n_atoms: int, edges: set[tuple[int, int]]) -> bool:
    adjacency: dict[int, list[int]] = {}
    for a, b in edges:
        adjacency.setdefault(a, []).append(b)
    state = {}  # 1 = in progress, 2 = done

    def visit(v) -> bool:
        state[v] = 1
        for w in adjacency.get(v, ()):
            mark = state.get(w)
            if mark == 1:
                return True
            if mark is None and visit(w):
                return True
        state[v] = 2
        return False

    return any(state.get(v) is None and visit(v) for v in list(adjacency))


def optimize_ordering(struct: GaussianStructure) -> AtomOrdering:
    """Greedy search for an ordering with few 2-cells.

    Every candidate condition designates one divisor of one pairwise-lcm
    morphism as that morphism's least divisor (an edge set a < b for the
    other divisors b).  Conditions are added greedily, cheapest excess
    partner count first, as long as the accumulated relation stays acyclic;
    ties break on the lcm's canonical word and then the atom id.  The final
    partial order is refined to a total one by a topological sort with
    ascending atom ids.
    """
    conditions = []
    for x, lcm, counts in _lcm_statistics(struct):
        best = min(counts.values())
        for a, n in sorted(counts.items()):
            edges = frozenset((a, b) for b in counts if b != a)
            conditions.append((n - best, (lcm.src, lcm.atoms), a, edges))
    conditions.sort(key=lambda c: (c[0], c[1], c[2]))

    chosen_edges: set[tuple[int, int]] = set()
    settled: set[tuple] = set()
    while True:
        progress = False
        for defect, lkey, atom, edges in conditions:
            if lkey in settled:
                continue
            if not _has_cycle(struct.n_atoms, chosen_edges | edges):
                settled.add(lkey)
                chosen_edges |= edges
                progress = True
                break
        if not progress:
            break

    indegree = [0] * struct.n_atoms
    adjacency: dict[int, set[int]] = {a: set() for a in range(struct.n_atoms)}
    for a, b in chosen_edges:
        if b not in adjacency[a]:
            adjacency[a].add(b)
            indegree[b] += 1
    available = sorted(a for a in range(struct.n_atoms) if indegree[a] == 0)
    order = []
    while available:
        a = available.pop(0)
        order.append(a)
        changed = False
        for b in adjacency[a]:
            indegree[b] -= 1
            if indegree[b] == 0:
                available.append(b)
                changed = True
        if changed:
            available.sort()
    if len(order) != struct.n_atoms:
        raise ConsistencyError("compatible conditions formed a cycle")
    return AtomOrdering.from_sequence(order)


def resolve_ordering(struct: GaussianStructure, mode: str) -> AtomOrdering:
    """Ordering for a run: 'auto' optimizes, 'declared' uses the structure
    file's ORDER line, 'identity' is declaration order."""
    if mode == "auto":
        return optimize_ordering(struct)
    if mode == "identity":
        return struct.default_ordering()
    if mode == "declared":
        if struct.declared_order is None:
            raise PreconditionError("structure declares no ordering")
        return struct.declared_order
    raise PreconditionError(f"unknown ordering mode {mode!r}")
