"""Canonical hyper-power set lattice over a finite frame of singletons.

The hyper-power set over a frame of n singletons is the free distributive
lattice generated by the singletons under "&" (intersection) and "|" (union).
Every element is stored canonically as an up-closed set of Venn atoms.  An
atom is a non-empty subset of singleton indices, written by concatenating its
digits ("13" is the minimal region common to singletons 1 and 3 and nothing
else), and a proposition contains an atom exactly when the atom's index set
is a superset of one of the proposition's generators.

Atom order is fixed (cardinality, then lexicographic digits) so bit
positions, printed tables and encoding matrices are reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .errors import (
    DuplicateName,
    EmptyFrame,
    FrameMismatch,
    FrameTooLarge,
    IndexOutOfRange,
    InvalidIdentifier,
)

#: Frames larger than this refuse to enumerate unless forced (the lattice
#: grows like the Dedekind numbers: 19 elements at n=3, 167 at n=4, 7580 at
#: n=5, and millions beyond).
ENUMERATION_LIMIT = 5

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Atom:
    """A Venn atom identified by the sorted tuple of singleton indices it lies in."""

    digits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(sorted(set(self.digits))))

    @property
    def label(self) -> str:
        """Digit codification, e.g. "13" for the atom inside singletons 1 and 3."""
        return "".join(str(d) for d in self.digits)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.digits), self.digits)

    def __repr__(self) -> str:
        return f"<{self.label}>"


@lru_cache(maxsize=None)
def _atoms_for(n: int) -> tuple[Atom, ...]:
    """All 2^n - 1 atoms of an n-singleton frame in canonical order."""
    out = []
    for size in range(1, n + 1):
        for combo in combinations(range(1, n + 1), size):
            out.append(Atom(combo))
    return tuple(out)


@lru_cache(maxsize=None)
def _digit_masks(n: int) -> tuple[int, ...]:
    """Entry d-1 is the bitset of atom positions whose digits include d."""
    atoms = _atoms_for(n)
    masks = [0] * n
    for pos, atom in enumerate(atoms):
        for d in atom.digits:
            masks[d - 1] |= 1 << pos
    return tuple(masks)


@lru_cache(maxsize=None)
def _up_mask(n: int, digits: tuple[int, ...]) -> int:
    """Bitset of all atoms whose digit sets contain every digit given."""
    mask = (1 << (2**n - 1)) - 1
    per_digit = _digit_masks(n)
    for d in digits:
        mask &= per_digit[d - 1]
    return mask


@lru_cache(maxsize=None)
def _generator_positions(n: int, mask: int) -> tuple[int, ...]:
    """Positions of the atoms of `mask` minimal under digit-set inclusion."""
    atoms = _atoms_for(n)
    present = [i for i in range(2**n - 1) if mask >> i & 1]
    digit_sets = {i: frozenset(atoms[i].digits) for i in present}
    out = []
    for i in present:
        di = digit_sets[i]
        if not any(digit_sets[j] < di for j in present if j != i):
            out.append(i)
    return tuple(out)


@dataclass(frozen=True)
class Frame:
    """An ordered frame of uniquely named singletons."""

    names: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def atom_count(self) -> int:
        return 2**self.n - 1

    @property
    def full_mask(self) -> int:
        return (1 << self.atom_count) - 1

    def atoms(self) -> tuple[Atom, ...]:
        return _atoms_for(self.n)

    def index(self, name: str) -> int:
        """1-based position of a singleton name."""
        try:
            return self.names.index(name) + 1
        except ValueError:
            raise IndexOutOfRange(f"{name!r} is not a singleton of this frame") from None

    def __repr__(self) -> str:
        return f"Frame({', '.join(self.names)})"


def build_frame(names: Iterable[str]) -> Frame:
    """Validate singleton names and build a Frame."""
    names = tuple(names)
    if not names:
        raise EmptyFrame("a frame needs at least one singleton name")
    seen = set()
    for name in names:
        if not isinstance(name, str) or not _IDENT_RE.match(name):
            raise InvalidIdentifier(f"{name!r} is not a valid identifier")
        if name in seen:
            raise DuplicateName(f"duplicate singleton name {name!r}")
        seen.add(name)
    return Frame(names)


@dataclass(frozen=True)
class Proposition:
    """An element of the hyper-power set: an up-closed set of atoms.

    Equality and hashing go through the atom bitset, which is the canonical
    form; the generator antichain is derived from it on demand.
    """

    frame: Frame
    mask: int

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    @property
    def atom_count(self) -> int:
        return self.mask.bit_count()

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.mask.bit_count(), self.mask)

    @property
    def generators(self) -> tuple[Atom, ...]:
        """Antichain of minimal atoms; uniquely determines (and is determined by) the mask."""
        atoms = _atoms_for(self.frame.n)
        return tuple(atoms[i] for i in _generator_positions(self.frame.n, self.mask))

    @property
    def atoms(self) -> tuple[Atom, ...]:
        all_atoms = _atoms_for(self.frame.n)
        return tuple(a for i, a in enumerate(all_atoms) if self.mask >> i & 1)

    def __and__(self, other: "Proposition") -> "Proposition":
        return conjoin(self, other)

    def __or__(self, other: "Proposition") -> "Proposition":
        return disjoin(self, other)

    def __le__(self, other: "Proposition") -> bool:
        return leq(self, other)

    def __str__(self) -> str:
        return to_expression(self)

    def __repr__(self) -> str:
        return f"Proposition({to_expression(self)})"


def _check_same_frame(p: Proposition, q: Proposition) -> None:
    if p.frame != q.frame:
        raise FrameMismatch(f"propositions live on different frames: {p.frame} vs {q.frame}")


def empty(frame: Frame) -> Proposition:
    return Proposition(frame, 0)


def from_generators(frame: Frame, digit_sets: Iterable[Iterable[int]]) -> Proposition:
    """Build the up-closure of a family of digit sets (need not be an antichain)."""
    mask = 0
    for digits in digit_sets:
        digits = tuple(sorted(set(digits)))
        if not digits:
            raise IndexOutOfRange("a generator needs at least one digit")
        if digits[0] < 1 or digits[-1] > frame.n:
            raise IndexOutOfRange(f"digits {digits} out of range 1..{frame.n}")
        mask |= _up_mask(frame.n, digits)
    return Proposition(frame, mask)


def singleton(frame: Frame, i: int) -> Proposition:
    """The i-th singleton (1-based) as a lattice element."""
    if not 1 <= i <= frame.n:
        raise IndexOutOfRange(f"singleton index {i} out of range 1..{frame.n}")
    return Proposition(frame, _up_mask(frame.n, (i,)))


def total_ignorance(frame: Frame) -> Proposition:
    """The union of all singletons (every atom)."""
    return Proposition(frame, frame.full_mask)


def atom_universe(frame: Frame) -> list[Atom]:
    """All atoms of the frame in canonical order."""
    return list(frame.atoms())


def conjoin(p: Proposition, q: Proposition) -> Proposition:
    _check_same_frame(p, q)
    return Proposition(p.frame, p.mask & q.mask)


def disjoin(p: Proposition, q: Proposition) -> Proposition:
    _check_same_frame(p, q)
    return Proposition(p.frame, p.mask | q.mask)


def leq(p: Proposition, q: Proposition) -> bool:
    """Lattice order: p below q iff every atom of p is an atom of q."""
    _check_same_frame(p, q)
    return p.mask & ~q.mask == 0


def minimal_parts(p: Proposition) -> tuple[Atom, ...]:
    """The anti-absorption residue of p: atoms minimal under digit-set inclusion.

    A part is dropped whenever another kept part's digits are all contained
    in it, so what remains is exactly the generator antichain.
    """
    return p.generators


def u_of(p: Proposition) -> Proposition:
    """Union of the singletons composing p.

    Computed from the minimal parts: every digit occurring in the
    anti-absorption residue contributes its singleton.  u(EMPTY) = EMPTY.
    """
    if p.is_empty:
        return p
    digits = sorted({d for atom in p.generators for d in atom.digits})
    mask = 0
    per_digit = _digit_masks(p.frame.n)
    for d in digits:
        mask |= per_digit[d - 1]
    return Proposition(p.frame, mask)


def enumerate_hpset(frame: Frame, force: bool = False) -> list[Proposition]:
    """Every element of the hyper-power set, EMPTY and total ignorance included.

    Deterministic order: atom count, then atom-bitset value.  Refuses frames
    beyond ENUMERATION_LIMIT unless `force` is set.
    """
    if frame.n > ENUMERATION_LIMIT and not force:
        raise FrameTooLarge(
            f"enumerating n={frame.n} exceeds the default limit "
            f"{ENUMERATION_LIMIT}; pass force=True to override"
        )
    masks = _up_closed_masks(frame.n)
    return [Proposition(frame, m) for m in masks]


def _up_closed_masks(n: int) -> tuple[int, ...]:
    # Cache only frames inside the default limit; a forced n >= 6 run is in
    # the millions of elements and should not pin that memory.
    if n <= ENUMERATION_LIMIT:
        return _up_closed_masks_cached(n)
    return _generate_up_closed_masks(n)


@lru_cache(maxsize=None)
def _up_closed_masks_cached(n: int) -> tuple[int, ...]:
    return _generate_up_closed_masks(n)


def _generate_up_closed_masks(n: int) -> tuple[int, ...]:
    """All up-closed atom bitsets, sorted by (popcount, value)."""
    atoms = _atoms_for(n)
    count = len(atoms)
    # Visit atoms from largest to smallest digit set; an atom may join only
    # when all of its proper supersets are already in, which makes every
    # leaf of the walk up-closed and reaches each up-closed set once.
    order = sorted(range(count), key=lambda i: (-len(atoms[i].digits), atoms[i].digits))
    superset_mask = []
    for i in order:
        di = set(atoms[i].digits)
        m = 0
        for j in range(count):
            if j != i and di < set(atoms[j].digits):
                m |= 1 << j
        superset_mask.append(m)

    results: list[int] = []

    def walk(step: int, current: int) -> None:
        if step == count:
            results.append(current)
            return
        walk(step + 1, current)
        need = superset_mask[step]
        if current & need == need:
            walk(step + 1, current | (1 << order[step]))

    walk(0, 0)
    return tuple(sorted(results, key=lambda m: (m.bit_count(), m)))


def to_expression(p: Proposition) -> str:
    """Canonical disjunctive expression over the generator antichain.

    Generators print largest first (then lexicographic) joined by "|", which
    reproduces the usual written shape of mixed terms such as "(t1&t2)|t3";
    a multi-digit generator is parenthesized when it is not the only one.
    EMPTY prints as "EMPTY" (which the parser deliberately rejects).
    """
    if p.is_empty:
        return "EMPTY"
    gens = sorted(p.generators, key=lambda a: (-len(a.digits), a.digits))
    names = p.frame.names
    parts = []
    for g in gens:
        term = "&".join(names[d - 1] for d in g.digits)
        if len(g.digits) >= 2 and len(gens) > 1:
            term = f"({term})"
        parts.append(term)
    return "|".join(parts)
