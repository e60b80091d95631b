"""Dynamic fusion: frame growth, staged sources and constraint changes.

A session keeps the list of factor assignments rather than only the running
combination, because a constraint arriving later must re-run the hybrid
transfer over the factors' products.  When a new source arrives in a later
stage, the factors accumulated so far are first collapsed into their classic
combination (one factor), so the transfer afterwards works on the products
of that sealed combination with the newcomers; constraint-only stages leave
the factor list untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bba import MassAssignment
from .errors import FrameMismatch, MissingName, RuleNotApplicable
from .exprparse import parse
from .lattice import Frame, Proposition, build_frame, from_generators, to_expression
from .model import build_model, compress, free_model
from .rules import dsm_classic, dsm_hybrid


def embed_proposition(p: Proposition, new: Frame) -> Proposition:
    """Reinterpret a lattice term over a larger frame via its generators."""
    old = p.frame
    for name in old.names:
        if name not in new.names:
            raise MissingName(f"singleton {name!r} missing from the target frame")
    digit_sets = []
    for atom in p.generators:
        digit_sets.append(tuple(new.index(old.names[d - 1]) for d in atom.digits))
    return from_generators(new, digit_sets)


def embed(m: MassAssignment, old: Frame, new: Frame) -> MassAssignment:
    """Carry an assignment onto an enlarged frame, term by term.

    Masses are unchanged and each proposition keeps its generator antichain,
    so the vacuous assignment on the old frame stays on the old singletons'
    union rather than becoming the new total ignorance.
    """
    if m.frame != old:
        raise FrameMismatch("assignment is not on the declared old frame")
    remapped = {embed_proposition(p, new): v for p, v in m.items()}
    return MassAssignment(new, remapped, smets_mode=m.smets_mode)


@dataclass(frozen=True)
class Stage:
    """One dated event: enlarge the frame, add a source, or swap constraints.

    `set_constraints` replaces the active constraint set entirely (None means
    leave it alone); persisting constraints must be re-listed.
    """

    at: str
    add_elements: tuple[str, ...] = ()
    add_source: MassAssignment | None = None
    set_constraints: tuple[str, ...] | None = None


@dataclass
class SessionResult:
    label: str
    frame: Frame
    result: MassAssignment  # compressed for reporting

    def by_expression(self) -> dict[str, float]:
        return {to_expression(p): v for p, v in self.result.items()}


@dataclass
class FusionSession:
    frame: Frame
    factors: list[MassAssignment]
    constraint_exprs: tuple[str, ...] = ()
    rule: str = "dsmh"
    history: list[SessionResult] = field(default_factory=list)
    breakdowns: list = field(default_factory=list)

    @classmethod
    def start(
        cls,
        frame: Frame,
        sources: list[MassAssignment],
        constraints: tuple[str, ...] = (),
        rule: str = "dsmh",
        label: str = "t0",
    ) -> "FusionSession":
        session = cls(frame, [], tuple(constraints), rule)
        for src in sources:
            session.factors.append(embed(src, src.frame, frame))
        session._combine(label)
        return session

    def _active_model(self):
        if not self.constraint_exprs:
            return free_model(self.frame)
        props = [parse(self.frame, text) for text in self.constraint_exprs]
        return build_model(self.frame, props)

    def _combine(self, label: str) -> SessionResult:
        model = self._active_model()
        if self.rule == "dsmh":
            breakdown = dsm_hybrid(self.factors, model)
            result = compress(model, breakdown.result)
            self.breakdowns.append(breakdown)
        elif self.rule == "dsmc":
            if not model.is_free:
                raise RuleNotApplicable("rule 'dsmc' ignores constraints; use 'dsmh'")
            result = dsm_classic(self.factors)
        else:
            raise RuleNotApplicable(f"rule {self.rule!r} cannot drive a session")
        record = SessionResult(label, self.frame, result)
        self.history.append(record)
        return record

    def apply(self, stage: Stage) -> SessionResult:
        """Process one stage and record the recombined (compressed) result."""
        if stage.add_elements:
            grown = build_frame(self.frame.names + tuple(stage.add_elements))
            self.factors = [embed(f, self.frame, grown) for f in self.factors]
            self.frame = grown
        if stage.add_source is not None:
            if self.history and len(self.factors) >= 2:
                # Seal the previous epoch: later transfers work on the
                # products of its combined mass with the new sources.
                self.factors = [dsm_classic(self.factors)]
            src = stage.add_source
            self.factors.append(embed(src, src.frame, self.frame))
        if stage.set_constraints is not None:
            self.constraint_exprs = tuple(stage.set_constraints)
        return self._combine(stage.at)

    @property
    def current(self) -> SessionResult:
        return self.history[-1]


def run_session(
    frame: Frame,
    sources: list[MassAssignment],
    stages: list[Stage],
    rule: str = "dsmh",
    constraints: tuple[str, ...] = (),
    initial_label: str = "t0",
) -> FusionSession:
    """Start a session from the initial block and apply every stage in order."""
    session = FusionSession.start(frame, sources, constraints, rule, initial_label)
    for stage in stages:
        session.apply(stage)
    return session


@dataclass(frozen=True)
class RestoreReport:
    """Comparison of the post-constraint result against earlier results."""

    label: str
    deviations: tuple[tuple[str, float], ...]  # (earlier label, max abs deviation)
    matches: tuple[str, ...]

    @property
    def restored(self) -> bool:
        return bool(self.matches)


def _max_deviation(a: dict[str, float], b: dict[str, float]) -> float:
    keys = set(a) | set(b)
    return max((abs(a.get(k, 0.0) - b.get(k, 0.0)) for k in keys), default=0.0)


def restore_check(
    session: FusionSession,
    constraints: tuple[str, ...],
    label: str = "restore",
    tolerance: float = 1e-9,
) -> RestoreReport:
    """Apply constraints and report which earlier result, if any, comes back.

    Results on different frames compare by expression, which embedding
    preserves.  Either the new sources carried no mass touching the original
    singletons and an earlier result returns exactly, or residual mass keeps
    the outcome different.
    """
    earlier = [(rec.label, rec.by_expression()) for rec in session.history]
    new = session.apply(Stage(at=label, set_constraints=tuple(constraints)))
    new_map = new.by_expression()
    deviations = tuple((lbl, _max_deviation(new_map, old)) for lbl, old in earlier)
    matches = tuple(lbl for lbl, dev in deviations if dev <= tolerance)
    return RestoreReport(label, deviations, matches)
