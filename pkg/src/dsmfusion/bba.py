"""Generalized basic belief assignments over the hyper-power set."""

from __future__ import annotations

from math import fsum
from typing import Iterable, Mapping

from .errors import (
    EmptySetMass,
    FrameMismatch,
    MassSumNotOne,
    NegativeMass,
    NotPowerSetSupport,
)
from .lattice import Frame, Proposition, disjoin, empty, leq, singleton, total_ignorance

#: Absolute tolerance on the unit-sum check at validation time.  Internal
#: sums are never renormalized.
SUM_TOLERANCE = 1e-9


class MassAssignment:
    """A map from propositions to non-negative masses summing to one.

    Keys are canonical propositions on one frame; missing keys mean zero
    mass.  Mass on EMPTY is rejected unless `smets_mode` is set (open-world
    assignments keep their conflict on EMPTY).  Instances are immutable
    after construction.
    """

    __slots__ = ("frame", "_masses", "smets_mode")

    def __init__(
        self,
        frame: Frame,
        masses: Mapping[Proposition, float] | Iterable[tuple[Proposition, float]],
        smets_mode: bool = False,
        _validate: bool = True,
    ):
        if isinstance(masses, Mapping):
            masses = masses.items()
        collected: dict[Proposition, float] = {}
        for prop, value in masses:
            if prop.frame != frame:
                raise FrameMismatch(f"mass key {prop!r} is not on frame {frame!r}")
            collected[prop] = collected.get(prop, 0.0) + float(value)
        ordered = sorted(collected.items(), key=lambda kv: kv[0].sort_key)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "_masses", {p: v for p, v in ordered if v != 0.0})
        object.__setattr__(self, "smets_mode", bool(smets_mode))
        if _validate:
            self.validate()

    def __setattr__(self, name, value):
        raise AttributeError("MassAssignment is immutable")

    def validate(self) -> bool:
        """Check the invariants, raising with the offending key on failure."""
        for prop, value in self._masses.items():
            if value < 0:
                raise NegativeMass(f"m({prop}) = {value!r} is negative")
        total = fsum(self._masses.values())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise MassSumNotOne(total)
        if not self.smets_mode:
            for prop, value in self._masses.items():
                if prop.is_empty and value != 0.0:
                    raise EmptySetMass(f"m(EMPTY) = {value!r} without smets_mode")
        return True

    def __getitem__(self, prop: Proposition) -> float:
        return self._masses.get(prop, 0.0)

    def get(self, prop: Proposition, default: float = 0.0) -> float:
        return self._masses.get(prop, default)

    def items(self) -> tuple[tuple[Proposition, float], ...]:
        """Entries in canonical proposition order."""
        return tuple(self._masses.items())

    def keys(self) -> tuple[Proposition, ...]:
        return tuple(self._masses.keys())

    @property
    def focal(self) -> tuple[tuple[Proposition, float], ...]:
        """The focal sets: entries with strictly positive mass."""
        return tuple((p, v) for p, v in self._masses.items() if v > 0.0)

    @property
    def total(self) -> float:
        return fsum(self._masses.values())

    def __len__(self) -> int:
        return len(self._masses)

    def __repr__(self) -> str:
        inner = ", ".join(f"{p}: {v:.6g}" for p, v in self._masses.items())
        return f"MassAssignment({{{inner}}})"


def validate(m: MassAssignment) -> bool:
    return m.validate()


def vacuous(frame: Frame) -> MassAssignment:
    """The neutral assignment: all mass on total ignorance."""
    return MassAssignment(frame, {total_ignorance(frame): 1.0})


def is_power_set_element(p: Proposition) -> bool:
    """True when p is EMPTY or a union of singletons."""
    return all(len(a.digits) == 1 for a in p.generators)


def require_power_set(m: MassAssignment) -> None:
    for prop, _ in m.focal:
        if not is_power_set_element(prop):
            raise NotPowerSetSupport(f"focal set {prop} is not a union of singletons")


def complement(p: Proposition) -> Proposition:
    """Power-set complement: union of the singletons absent from p."""
    if not is_power_set_element(p):
        raise NotPowerSetSupport(f"{p} is not a union of singletons")
    present = {a.digits[0] for a in p.generators}
    out = empty(p.frame)
    for i in range(1, p.frame.n + 1):
        if i not in present:
            out = disjoin(out, singleton(p.frame, i))
    return out


def bel(m: MassAssignment, a: Proposition) -> float:
    """Belief of a: total mass of focal sets below a (power-set support only)."""
    require_power_set(m)
    if a.frame != m.frame:
        raise FrameMismatch("proposition is not on the assignment's frame")
    if not is_power_set_element(a):
        raise NotPowerSetSupport(f"{a} is not a union of singletons")
    return fsum(v for p, v in m.focal if leq(p, a))


def pl(m: MassAssignment, a: Proposition) -> float:
    """Plausibility of a: total mass of focal sets meeting a within the power set."""
    require_power_set(m)
    if a.frame != m.frame:
        raise FrameMismatch("proposition is not on the assignment's frame")
    if not is_power_set_element(a):
        raise NotPowerSetSupport(f"{a} is not a union of singletons")
    digits_a = {atom.digits[0] for atom in a.generators}
    out = []
    for p, v in m.focal:
        digits_p = {atom.digits[0] for atom in p.generators}
        if digits_p & digits_a:
            out.append(v)
    return fsum(out)
