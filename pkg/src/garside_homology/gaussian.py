"""Locally left-Gaussian categories presented by atoms and left-lcm tables.

A structure is a finite presentation of a right-cancellative, right-Noetherian
category with conditional left-lcms: its objects, its atoms (each with a
source, a target and a positive length), and, for every unordered pair of
atoms sharing a target, either a left-lcm witness or the fact that the pair
has no common left-multiple.

Morphisms are composable words of atoms.  Composition reads left to right:
the word (a, b) means "a then b", so target(a) = source(b).  All divisibility
below is on the right: g right-divides f when f = h*g for some h.  The word
problem is solved by reversing against the lcm table; to divide h*b by an
atom a one looks up lcm(a, b) = x*a = y*b, divides h by y atom by atom, and
appends x.  Every operation here is a pure function of immutable data, so a
structure can be shared freely across threads (the internal caches only ever
insert values that any thread would recompute identically).
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Optional, Sequence


class GaussianError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(GaussianError):
    """An operation was called on arguments violating its contract."""


class DivisionError(GaussianError):
    """A requested quotient does not exist."""


class ConsistencyError(GaussianError):
    """The structure data contradicts itself (bad lcm table or ordering)."""


class Word(NamedTuple):
    """A composable sequence of atom ids, read left to right.

    The source object is stored explicitly so that empty words (identity
    morphisms) know where they live.
    """

    src: int
    atoms: tuple[int, ...]


class AtomOrdering:
    """A total order on atom ids, given by a rank for every atom.

    Restricting the order to the atoms at one target gives the linear
    ordering that cell enumeration and least-divisor extraction use.
    """

    __slots__ = ("ranks",)

    def __init__(self, ranks: Sequence[int]):
        ranks = tuple(ranks)
        if sorted(ranks) != list(range(len(ranks))):
            raise PreconditionError("ordering ranks must be a permutation of 0..n-1")
        self.ranks = ranks

    @classmethod
    def identity(cls, n_atoms: int) -> "AtomOrdering":
        return cls(range(n_atoms))

    @classmethod
    def from_sequence(cls, atoms_in_order: Sequence[int]) -> "AtomOrdering":
        n = len(atoms_in_order)
        if sorted(atoms_in_order) != list(range(n)):
            raise PreconditionError("ordering must list every atom exactly once")
        ranks = [0] * n
        for rank, atom in enumerate(atoms_in_order):
            ranks[atom] = rank
        return cls(ranks)

    def rank(self, atom: int) -> int:
        return self.ranks[atom]

    def sorted_atoms(self, atoms) -> list[int]:
        return sorted(atoms, key=self.ranks.__getitem__)

    def __eq__(self, other):
        return isinstance(other, AtomOrdering) and self.ranks == other.ranks

    def __hash__(self):
        return hash(self.ranks)

    def __repr__(self):
        order = sorted(range(len(self.ranks)), key=self.ranks.__getitem__)
        return f"AtomOrdering({order})"


class ValidationReport:
    """Outcome of the bounded structure sanity check."""

    def __init__(self, violations: list[str]):
        self.violations = violations

    @property
    def ok(self) -> bool:
        return not self.violations

    def __repr__(self):
        status = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        return f"ValidationReport({status})"


# Safety valve for lcm folds on corrupted tables: the reversing grid is
# guaranteed to terminate only for genuinely Gaussian input.
_FOLD_STEP_LIMIT = 2_000_000


class GaussianStructure:
    """Immutable presentation data with word arithmetic on top.

    Construction takes name-based data (mirroring the interchange file
    format) and resolves it to dense integer ids.  Cheap structural checks
    (referential integrity, composability, table coverage) run here; the
    deeper semantic checks live in :meth:`validate`.
    """

    def __init__(
        self,
        objects: Sequence[str],
        atoms: Sequence[tuple[str, str, str, int]],
        lcms: Sequence[tuple],
        basepoint: Optional[str] = None,
        path_lengths: Optional[dict] = None,
        declared_order: Optional[Sequence[str]] = None,
        label: str = "",
    ):
        self.object_names = list(objects)
        if len(set(self.object_names)) != len(self.object_names):
            raise PreconditionError("duplicate object names")
        self.object_index = {name: i for i, name in enumerate(self.object_names)}

        self.atom_names: list[str] = []
        self.atom_source: list[int] = []
        self.atom_target: list[int] = []
        self.atom_length: list[int] = []
        seen_atom_names: set[str] = set()
        for name, src, tgt, length in atoms:
            if name in seen_atom_names:
                raise PreconditionError(f"duplicate atom name {name!r}")
            seen_atom_names.add(name)
            if src not in self.object_index:
                raise PreconditionError(f"atom {name!r} references unknown object {src!r}")
            if tgt not in self.object_index:
                raise PreconditionError(f"atom {name!r} references unknown object {tgt!r}")
            if length < 1:
                raise PreconditionError(f"atom {name!r} must have length >= 1")
            self.atom_names.append(name)
            self.atom_source.append(self.object_index[src])
            self.atom_target.append(self.object_index[tgt])
            self.atom_length.append(length)
        self.atom_index = {name: i for i, name in enumerate(self.atom_names)}
        self.n_atoms = len(self.atom_names)

        self.atoms_by_target: list[tuple[int, ...]] = [
            tuple(a for a in range(self.n_atoms) if self.atom_target[a] == x)
            for x in range(len(self.object_names))
        ]

        # entry[(i, j)] with i < j is None (no common left-multiple) or a
        # pair (comp_i, comp_j) of words with comp_i*i = comp_j*j = lcm.
        self._entries: dict[tuple[int, int], Optional[tuple[Word, Word]]] = {}
        for item in lcms:
            a_name, b_name, comps = item
            if a_name not in self.atom_index or b_name not in self.atom_index:
                raise PreconditionError(f"lcm entry references unknown atom ({a_name!r}, {b_name!r})")
            a, b = self.atom_index[a_name], self.atom_index[b_name]
            if a == b:
                raise PreconditionError(f"lcm entry for atom {a_name!r} with itself")
            if self.atom_target[a] != self.atom_target[b]:
                raise PreconditionError(f"lcm entry for atoms with different targets ({a_name!r}, {b_name!r})")
            key = (min(a, b), max(a, b))
            if key in self._entries:
                raise PreconditionError(f"duplicate lcm entry for ({a_name!r}, {b_name!r})")
            if comps is None:
                self._entries[key] = None
                continue
            wa_names, wb_names = comps
            wa = self._resolve_word(wa_names, endpoint=a, context=f"LCM({a_name},{b_name})")
            wb = self._resolve_word(wb_names, endpoint=b, context=f"LCM({a_name},{b_name})")
            if key == (a, b):
                self._entries[key] = (wa, wb)
            else:
                self._entries[key] = (wb, wa)

        for x in range(len(self.object_names)):
            here = self.atoms_by_target[x]
            for i in range(len(here)):
                for j in range(i + 1, len(here)):
                    if (here[i], here[j]) not in self._entries:
                        raise PreconditionError(
                            "missing lcm entry for atoms "
                            f"({self.atom_names[here[i]]!r}, {self.atom_names[here[j]]!r})"
                        )

        self.basepoint: Optional[int] = None
        if basepoint is not None:
            if basepoint not in self.object_index:
                raise PreconditionError(f"unknown basepoint object {basepoint!r}")
            self.basepoint = self.object_index[basepoint]

        self.path_lengths: Optional[tuple[int, ...]] = None
        if path_lengths is not None:
            lengths = [None] * len(self.object_names)
            for obj, val in path_lengths.items():
                if obj not in self.object_index:
                    raise PreconditionError(f"path length for unknown object {obj!r}")
                lengths[self.object_index[obj]] = val
            if any(v is None for v in lengths):
                raise PreconditionError("path lengths must cover every object")
            if self.basepoint is None:
                raise PreconditionError("path lengths require a basepoint")
            if lengths[self.basepoint] != 0:
                raise PreconditionError("basepoint must have path length 0")
            self.path_lengths = tuple(lengths)

        self.declared_order: Optional[AtomOrdering] = None
        if declared_order is not None:
            ids = []
            for name in declared_order:
                if name not in self.atom_index:
                    raise PreconditionError(f"declared order references unknown atom {name!r}")
                ids.append(self.atom_index[name])
            self.declared_order = AtomOrdering.from_sequence(ids)

        self.label = label

        self._quot_cache: dict[tuple[Word, int], Optional[Word]] = {}
        # per-ordering caches: ranks tuple -> (canonical forms, least divisors)
        self._ord_caches: dict[tuple, tuple[dict, dict]] = {}
        self._default_ordering = AtomOrdering.identity(self.n_atoms)

    def _resolve_word(self, names: Sequence[str], endpoint: int, context: str) -> Word:
        """Resolve a complement word; endpoint is the atom it gets composed with."""
        ids = []
        for name in names:
            if name not in self.atom_index:
                raise PreconditionError(f"{context}: unknown atom {name!r} in complement")
            ids.append(self.atom_index[name])
        src = self.atom_source[ids[0]] if ids else self.atom_source[endpoint]
        word = Word(src, tuple(ids))
        self._check_word(word)
        if self.word_target(word) != self.atom_source[endpoint]:
            raise PreconditionError(f"{context}: complement does not compose with its atom")
        return word

    def _check_word(self, w: Word) -> None:
        at = w.src
        for a in w.atoms:
            if self.atom_source[a] != at:
                raise PreconditionError(f"word {w} is not composable")
            at = self.atom_target[a]

    # -- basic word bookkeeping ------------------------------------------

    def identity(self, obj: int) -> Word:
        return Word(obj, ())

    def word(self, atoms: Sequence[int], src: Optional[int] = None) -> Word:
        atoms = tuple(atoms)
        if src is None:
            if not atoms:
                raise PreconditionError("empty word needs an explicit source object")
            src = self.atom_source[atoms[0]]
        w = Word(src, atoms)
        self._check_word(w)
        return w

    def word_from_names(self, names: Sequence[str], src_name: Optional[str] = None) -> Word:
        ids = [self.atom_index[n] for n in names]
        src = None if src_name is None else self.object_index[src_name]
        return self.word(ids, src)

    def word_target(self, w: Word) -> int:
        return self.atom_target[w.atoms[-1]] if w.atoms else w.src

    def word_length(self, w: Word) -> int:
        return sum(self.atom_length[a] for a in w.atoms)

    def concat(self, u: Word, v: Word) -> Word:
        if self.word_target(u) != v.src:
            raise PreconditionError("words do not compose")
        return Word(u.src, u.atoms + v.atoms)

    def word_names(self, w: Word) -> list[str]:
        return [self.atom_names[a] for a in w.atoms]

    def default_ordering(self) -> AtomOrdering:
        return self._default_ordering

    # -- division by reversing -------------------------------------------

    def _entry(self, a: int, b: int) -> Optional[tuple[Word, Word]]:
        """Complements (comp_a, comp_b) for distinct atoms a, b at one target."""
        key = (a, b) if a < b else (b, a)
        try:
            pair = self._entries[key]
        except KeyError:
            raise ConsistencyError(
                f"no lcm entry for atoms ({self.atom_names[a]!r}, {self.atom_names[b]!r})"
            ) from None
        if pair is None:
            return None
        return pair if key == (a, b) else (pair[1], pair[0])

    def quotient_atom(self, w: Word, a: int) -> Optional[Word]:
        """The word g with g*a = w, or None when a does not right-divide w.

        The result is a plain witness word, not a canonical form.
        """
        if not w.atoms:
            return None
        if self.atom_target[a] != self.word_target(w):
            return None
        key = (w, a)
        cache = self._quot_cache
        if key in cache:
            return cache[key]
        h = Word(w.src, w.atoms[:-1])
        b = w.atoms[-1]
        if a == b:
            res: Optional[Word] = h
        else:
            entry = self._entry(a, b)
            if entry is None:
                res = None
            else:
                comp_a, comp_b = entry
                y = self.quotient_word(h, comp_b)
                res = None if y is None else Word(y.src, y.atoms + comp_a.atoms)
        cache[key] = res
        return res

    def quotient_word(self, w: Word, u: Word) -> Optional[Word]:
        """The word g with g*u = w, dividing by the atoms of u from the right."""
        for a in reversed(u.atoms):
            w = self.quotient_atom(w, a)
            if w is None:
                return None
        return w

    def right_divides(self, a: int, f: Word) -> bool:
        """Whether some g satisfies g*a = f."""
        if self.atom_target[a] != self.word_target(f):
            raise PreconditionError("atom and word have different targets")
        return self.quotient_atom(f, a) is not None

    def left_quotient(self, f: Word, a: int, ordering: Optional[AtomOrdering] = None) -> Word:
        """The unique g with g*a = f, in canonical form."""
        q = self.quotient_atom(f, a)
        if q is None:
            raise DivisionError(
                f"atom {self.atom_names[a]!r} does not right-divide {self.word_names(f)}"
            )
        return self.canonical_form(q, ordering)

    # -- lcm folds ----------------------------------------------------------

    def _lcm_word_atom(self, u: Word, b: int, fuel: list) -> Optional[tuple[Word, Word]]:
        """(x, y) with x*u = y*b the left-lcm of u and the atom b."""
        fuel[0] -= 1
        if fuel[0] < 0:
            raise ConsistencyError("lcm fold did not converge; lcm table is inconsistent")
        if not u.atoms:
            if self.atom_target[b] != u.src:
                return None
            return Word(self.atom_source[b], (b,)), Word(self.atom_source[b], ())
        head = Word(u.src, u.atoms[:-1])
        a = u.atoms[-1]
        if a == b:
            return Word(u.src, ()), head
        entry = self._entry(a, b)
        if entry is None:
            return None
        comp_a, comp_b = entry
        sub = self._lcm_word_word(head, comp_a, fuel)
        if sub is None:
            return None
        x, y = sub
        return x, Word(y.src, y.atoms + comp_b.atoms)

    def _lcm_word_word(self, u: Word, v: Word, fuel: list) -> Optional[tuple[Word, Word]]:
        """(x, y) with x*u = y*v the left-lcm of the words u and v."""
        if not v.atoms:
            if self.word_target(u) != v.src:
                return None
            return Word(u.src, ()), u
        head = Word(v.src, v.atoms[:-1])
        b = v.atoms[-1]
        first = self._lcm_word_atom(u, b, fuel)
        if first is None:
            return None
        x1, y1 = first
        rest = self._lcm_word_word(y1, head, fuel)
        if rest is None:
            return None
        x2, y2 = rest
        return Word(x2.src, x2.atoms + x1.atoms), y2

    def lcm_with_atom(self, u: Word, b: int) -> Optional[tuple[Word, Word]]:
        """Public fold entry point; see _lcm_word_atom."""
        return self._lcm_word_atom(u, b, [_FOLD_STEP_LIMIT])

    def left_lcm(self, parts: Sequence[int]) -> Optional[tuple[Word, dict[int, Word]]]:
        """Left-lcm of a nonempty family of atoms sharing one target.

        Returns the lcm word together with, for each atom a, the word c_a
        with c_a*a = lcm; returns None when some required pairwise lcm is
        missing.  Folding follows the given order of the atoms.
        """
        parts = list(parts)
        if not parts:
            raise PreconditionError("left_lcm needs at least one atom")
        tgt = self.atom_target[parts[0]]
        if any(self.atom_target[a] != tgt for a in parts):
            raise PreconditionError("atoms do not share a target")
        first = parts[0]
        lcm = Word(self.atom_source[first], (first,))
        comps = {first: Word(self.atom_source[first], ())}
        fuel = [_FOLD_STEP_LIMIT]
        for b in parts[1:]:
            if b in comps:
                continue
            res = self._lcm_word_atom(lcm, b, fuel)
            if res is None:
                return None
            x, y = res
            comps = {a: Word(x.src if x.atoms else c.src, x.atoms + c.atoms) for a, c in comps.items()}
            comps[b] = y
            lcm = Word(x.src if x.atoms else lcm.src, x.atoms + lcm.atoms)
        return lcm, comps

    # -- canonical forms ----------------------------------------------------

    def _caches_for(self, ordering: AtomOrdering) -> tuple[dict, dict]:
        caches = self._ord_caches.get(ordering.ranks)
        if caches is None:
            caches = ({}, {})
            self._ord_caches[ordering.ranks] = caches
        return caches

    def least_divisor(self, f: Word, ordering: Optional[AtomOrdering] = None) -> int:
        """The least atom, in the ordering, right-dividing the nonempty word f."""
        if not f.atoms:
            raise PreconditionError("identity words have no atom divisors")
        ordering = ordering or self._default_ordering
        _, md_cache = self._caches_for(ordering)
        if f in md_cache:
            return md_cache[f]
        tgt = self.word_target(f)
        res = None
        for a in ordering.sorted_atoms(self.atoms_by_target[tgt]):
            if self.quotient_atom(f, a) is not None:
                res = a
                break
        if res is None:
            raise ConsistencyError(f"no atom right-divides {self.word_names(f)}")
        md_cache[f] = res
        return res

    def canonical_form(self, f: Word, ordering: Optional[AtomOrdering] = None) -> Word:
        """Canonical representative: repeatedly strip the least right-divisor."""
        ordering = ordering or self._default_ordering
        canon_cache, _ = self._caches_for(ordering)
        if f in canon_cache:
            return canon_cache[f]
        out = []
        w = f
        while w.atoms:
            a = self.least_divisor(w, ordering)
            w = self.quotient_atom(w, a)
            out.append(a)
        out.reverse()
        res = Word(f.src, tuple(out))
        canon_cache[f] = res
        canon_cache[res] = res
        return res

    def word_equal(self, f: Word, g: Word) -> bool:
        """Whether two words represent the same morphism."""
        if f.src != g.src or self.word_length(f) != self.word_length(g):
            return False
        return self.canonical_form(f) == self.canonical_form(g)

    def left_divides(self, u: Word, w: Word) -> bool:
        """Whether some h satisfies u*h = w.

        Decided by stripping right-divisors of w down to the length of u.
        Only the lcm table is consulted, but unlike right-division this is a
        search; it is meant for checks and small structures, not hot loops.
        """
        lu = self.word_length(u)
        if u.src != w.src or lu > self.word_length(w):
            return False
        target = self.canonical_form(u)
        seen: dict[Word, bool] = {}

        def strip(wc: Word) -> bool:
            if self.word_length(wc) == lu:
                return wc == target
            if wc in seen:
                return seen[wc]
            seen[wc] = False
            res = False
            for a in self.atoms_by_target[self.word_target(wc)]:
                q = self.quotient_atom(wc, a)
                if q is not None and strip(self.canonical_form(q)):
                    res = True
                    break
            seen[wc] = res
            return res

        return strip(self.canonical_form(w))

    # -- validation ----------------------------------------------------------

    def validate(self, depth: int = 3) -> ValidationReport:
        """Bounded sanity check of the lcm table.

        Checks entry symmetry and length homogeneity, then the consistency
        of lcm folds over all atom subsets of size up to `depth` at a common
        target (fold order must not matter, up to word equality).  A passing
        report is evidence, not proof, that the structure is Gaussian.
        """
        if depth < 1:
            raise PreconditionError("depth must be positive")
        violations: list[str] = []
        for (a, b), pair in sorted(self._entries.items()):
            names = (self.atom_names[a], self.atom_names[b])
            if pair is None:
                continue
            comp_a, comp_b = pair
            wa = Word(comp_a.src, comp_a.atoms + (a,))
            wb = Word(comp_b.src, comp_b.atoms + (b,))
            if self.word_length(wa) != self.word_length(wb):
                violations.append(f"LCM({names[0]},{names[1]}): sides have different lengths")
                continue
            try:
                if not self.word_equal(wa, wb):
                    violations.append(f"LCM({names[0]},{names[1]}): sides are not equal as morphisms")
                    continue
                if self.quotient_atom(wa, b) is None:
                    violations.append(f"LCM({names[0]},{names[1]}): {names[1]} does not divide the lcm")
            except (ConsistencyError, RecursionError):
                violations.append(f"LCM({names[0]},{names[1]}): word arithmetic failed on this entry")

        if violations:
            return ValidationReport(violations)

        for x in range(len(self.object_names)):
            here = self.atoms_by_target[x]
            for size in range(2, min(depth, len(here)) + 1):
                for subset in itertools.combinations(here, size):
                    results = []
                    for rot in range(size):
                        order = subset[rot:] + subset[:rot]
                        try:
                            results.append(self.left_lcm(order))
                        except ConsistencyError:
                            results.append("failed")
                    base = results[0]
                    for other in results[1:]:
                        if base == "failed" or other == "failed":
                            if base != other:
                                violations.append(f"lcm fold of {subset} failed for some orders only")
                            continue
                        if (base is None) != (other is None):
                            violations.append(f"lcm fold of {subset}: existence depends on fold order")
                        elif base is not None and not self.word_equal(base[0], other[0]):
                            violations.append(f"lcm fold of {subset}: value depends on fold order")
        return ValidationReport(violations)

    def __repr__(self):
        name = self.label or "structure"
        return (
            f"GaussianStructure({name}: {len(self.object_names)} object(s), "
            f"{self.n_atoms} atom(s))"
        )
