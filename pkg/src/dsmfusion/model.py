"""Integrity-constraint models: which lattice elements are forced empty.

A hybrid model is built by declaring some propositions empty.  Emptiness is
decided purely by atom inclusion: a proposition is empty under the model
exactly when all of its atoms are constrained away.  That single mechanism
covers exclusivity, non-existential and mixed constraints, makes the subset
implication automatic (anything inside a constrained element is constrained)
and keeps the constrained set closed under union.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import fsum
from typing import Iterable, Mapping

from .bba import MassAssignment
from .errors import FrameMismatch, MassOnEmptyClass, VacuousModel
from .lattice import (
    Atom,
    Frame,
    Proposition,
    _generator_positions,
    _up_mask,
    conjoin,
    enumerate_hpset,
    singleton,
)


@dataclass(frozen=True)
class HybridModel:
    frame: Frame
    constraints: tuple[Proposition, ...]
    empty_mask: int

    @property
    def is_free(self) -> bool:
        return self.empty_mask == 0

    def _check(self, p: Proposition) -> None:
        if p.frame != self.frame:
            raise FrameMismatch("proposition is not on the model's frame")

    def is_empty(self, p: Proposition) -> bool:
        self._check(p)
        return p.mask & ~self.empty_mask == 0

    def phi(self, p: Proposition) -> int:
        """Characteristic emptiness: 0 when p is (forced) empty, 1 otherwise."""
        return 0 if self.is_empty(p) else 1

    def reduce(self, p: Proposition) -> Proposition:
        """Canonical representative of p's equivalence class.

        Two propositions are equivalent when they keep the same atoms after
        removing the constrained ones; the representative is the smallest
        lattice element with those surviving atoms (the up-closure of their
        minimal parts), so EMPTY represents the merged-empty class.
        """
        self._check(p)
        survivor_mask = p.mask & ~self.empty_mask
        if survivor_mask == 0:
            return Proposition(self.frame, 0)
        n = self.frame.n
        rep_mask = 0
        all_atoms = self.frame.atoms()
        for pos in _generator_positions(n, survivor_mask):
            rep_mask |= _up_mask(n, all_atoms[pos].digits)
        return Proposition(self.frame, rep_mask)

    def reduced_mask(self, p: Proposition) -> int:
        """Surviving atoms of p; equal reduced masks mean model-equivalent."""
        self._check(p)
        return p.mask & ~self.empty_mask


def build_model(frame: Frame, constraints: Iterable[Proposition]) -> HybridModel:
    """Derive the set of empty atoms from the declared constraints.

    Rejects the vacuous model (all atoms constrained away: nothing left to
    reason about).  A model with a single surviving atom is legal but
    degenerate, so it is flagged with a warning.
    """
    constraints = tuple(constraints)
    empty_mask = 0
    for c in constraints:
        if c.frame != frame:
            raise FrameMismatch("constraint is not on the model's frame")
        empty_mask |= c.mask
    if empty_mask == frame.full_mask:
        raise VacuousModel("constraints empty the whole frame")
    model = HybridModel(frame, constraints, empty_mask)
    if (frame.full_mask & ~empty_mask).bit_count() == 1:
        warnings.warn(
            "trivial model: a single atom survives, so only one non-empty "
            "proposition remains",
            stacklevel=2,
        )
    return model


def free_model(frame: Frame) -> HybridModel:
    return HybridModel(frame, (), 0)


@lru_cache(maxsize=None)
def _shafer_constraint_mask(n: int) -> int:
    mask = 0
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            mask |= _up_mask(n, (i, j))
    return mask


def shafer_model(frame: Frame) -> HybridModel:
    """All pairwise exclusivity constraints; survivors form the power set."""
    if frame.n == 1:
        return free_model(frame)
    constraints = tuple(
        conjoin(singleton(frame, i), singleton(frame, j))
        for i in range(1, frame.n)
        for j in range(i + 1, frame.n + 1)
    )
    return HybridModel(frame, constraints, _shafer_constraint_mask(frame.n))


def phi(model: HybridModel, p: Proposition) -> int:
    return model.phi(p)


def reduce(model: HybridModel, p: Proposition) -> Proposition:
    return model.reduce(p)


@dataclass(frozen=True)
class EquivClass:
    representative: Proposition
    members: tuple[Proposition, ...]


def survivors(model: HybridModel) -> list[EquivClass]:
    """Partition of the whole hyper-power set into model-equivalence classes.

    The merged-empty class is included, so the class count matches the
    element counts of the reduced lattice.  Classes are ordered by their
    surviving atom sets (count, then bitset value).
    """
    groups: dict[int, list[Proposition]] = {}
    for p in enumerate_hpset(model.frame):
        groups.setdefault(model.reduced_mask(p), []).append(p)
    classes = []
    for reduced in sorted(groups, key=lambda m: (m.bit_count(), m)):
        members = tuple(sorted(groups[reduced], key=lambda p: p.sort_key))
        classes.append(EquivClass(model.reduce(members[0]), members))
    return classes


def encoding_matrix(model: HybridModel) -> tuple[list[Atom], list[list[int]]]:
    """Binary encoding of the surviving classes over the non-empty atoms.

    The basis lists the unconstrained atoms in canonical order; each row is
    one equivalence class (the merged-empty class gives the all-zero row),
    with a 1 where the basis atom belongs to the class representative.
    """
    all_atoms = model.frame.atoms()
    basis = [a for i, a in enumerate(all_atoms) if not model.empty_mask >> i & 1]
    positions = [i for i in range(model.frame.atom_count) if not model.empty_mask >> i & 1]
    matrix = []
    for cls in survivors(model):
        mask = cls.representative.mask
        matrix.append([1 if mask >> i & 1 else 0 for i in positions])
    return basis, matrix


def compress(model: HybridModel, m: MassAssignment) -> MassAssignment:
    """Sum masses over model-equivalent propositions, keyed by representatives.

    Pure re-summation: the total is preserved and nothing is normalized.
    Mass landing on the merged-empty class is an input error here (hybrid
    rule output never produces it).
    """
    if m.frame != model.frame:
        raise FrameMismatch("assignment is not on the model's frame")
    sums: dict[Proposition, list[float]] = {}
    for prop, value in m.items():
        rep = model.reduce(prop)
        if rep.is_empty and value > 0.0:
            raise MassOnEmptyClass(f"mass {value!r} on {prop}, which is empty under the model")
        sums.setdefault(rep, []).append(value)
    return MassAssignment(
        model.frame,
        {rep: fsum(vals) for rep, vals in sums.items()},
        smets_mode=m.smets_mode,
    )


def compression_report(
    model: HybridModel, masses: Mapping[Proposition, float]
) -> list[tuple[Proposition, tuple[tuple[Proposition, float], ...], float]]:
    """Per-class provenance for printing: (representative, members, total).

    Members keep the order of the input mapping; classes come out in
    canonical order of their surviving atom sets.
    """
    groups: dict[int, list[tuple[Proposition, float]]] = {}
    reps: dict[int, Proposition] = {}
    for prop, value in masses.items():
        reduced = model.reduced_mask(prop)
        groups.setdefault(reduced, []).append((prop, value))
        reps.setdefault(reduced, model.reduce(prop))
    out = []
    for reduced in sorted(groups, key=lambda m_: (m_.bit_count(), m_)):
        members = tuple(groups[reduced])
        out.append((reps[reduced], members, fsum(v for _, v in members)))
    return out
