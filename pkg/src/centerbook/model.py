"""Centered-world betting experiments.

An experiment is a finite set of uncentered worlds with exact rational
priors, a shared ordered list of time slots, and a set of centers: the
awakening events, each a (world, slot, agent) triple tagged with the
observation the agent makes there. An information state is what an agent
can actually tell apart: an observation plus her own identity. Alikeness
classes group observations that the scenario declares symmetric, and
``verify_alikeness`` checks such a declaration against the structure
rather than taking it on faith.

All types are immutable after construction and validate their invariants
as they are built, so an Experiment in hand is always a consistent one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from .docio import list_field, read_document, require_keys, string_field
from .errors import DocumentError, InvariantError, UnknownLabelError
from .rationals import format_rational, parse_rational

DEFAULT_AGENT = "beauty"


@dataclass(frozen=True)
class World:
    id: str
    prior: Fraction


@dataclass(frozen=True)
class Center:
    """One awakening event: where, when, who, and what she observes."""

    world: str
    slot: str
    agent: str
    observation: str


@dataclass(frozen=True)
class InformationState:
    """What an awakened agent can condition on: her observation and identity."""

    observation: str
    agent: str = DEFAULT_AGENT


@dataclass(frozen=True)
class Experiment:
    worlds: tuple[World, ...]
    slots: tuple[str, ...]
    agents: tuple[str, ...]
    centers: tuple[Center, ...]
    alikeness: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        _validate(self)

    # Lookups below are linear scans; experiments are desk-sized by design.

    def world(self, world_id: str) -> World:
        for world in self.worlds:
            if world.id == world_id:
                return world
        raise UnknownLabelError(f"unknown world {world_id!r}")

    @property
    def world_ids(self) -> tuple[str, ...]:
        return tuple(world.id for world in self.worlds)

    @property
    def observations(self) -> frozenset[str]:
        return frozenset(center.observation for center in self.centers)

    def centers_in(self, world_id: str) -> tuple[Center, ...]:
        return tuple(c for c in self.centers if c.world == world_id)

    def center_at(self, world_id: str, slot: str, agent: str) -> Center | None:
        for center in self.centers:
            if (center.world, center.slot, center.agent) == (world_id, slot, agent):
                return center
        return None

    def alikeness_class_of(self, observation: str) -> frozenset[str]:
        for cls in self.alikeness:
            if observation in cls:
                return cls
        raise UnknownLabelError(f"unknown observation label {observation!r}")

    def information_states(self) -> tuple[InformationState, ...]:
        """Every realizable (observation, agent) pair, in first-occurrence order."""
        seen: list[InformationState] = []
        for center in self.centers:
            state = InformationState(center.observation, center.agent)
            if state not in seen:
                seen.append(state)
        return tuple(seen)


@dataclass(frozen=True)
class AlikenessCheck:
    justified: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.justified


def _validate(e: Experiment) -> None:
    if not e.worlds:
        raise InvariantError("worlds: at least one world is required")
    seen_worlds: set[str] = set()
    for world in e.worlds:
        if world.id in seen_worlds:
            raise InvariantError(f"worlds: duplicate id {world.id!r}")
        seen_worlds.add(world.id)
        if world.prior <= 0:
            raise InvariantError(
                f"worlds: prior of {world.id!r} must be > 0, got "
                f"{format_rational(world.prior)}"
            )
    total = sum((world.prior for world in e.worlds), Fraction(0))
    if total != 1:
        raise InvariantError(f"worlds: priors sum to {format_rational(total)}, expected 1")

    for name, labels in (("slots", e.slots), ("agents", e.agents)):
        if not labels:
            raise InvariantError(f"{name}: at least one label is required")
        if len(set(labels)) != len(labels):
            raise InvariantError(f"{name}: duplicate labels in {list(labels)}")

    seen_triples: set[tuple[str, str, str]] = set()
    for center in e.centers:
        if center.world not in seen_worlds:
            raise InvariantError(f"centers: unknown world {center.world!r}")
        if center.slot not in e.slots:
            raise InvariantError(f"centers: unknown slot {center.slot!r}")
        if center.agent not in e.agents:
            raise InvariantError(f"centers: unknown agent {center.agent!r}")
        triple = (center.world, center.slot, center.agent)
        if triple in seen_triples:
            raise InvariantError(f"centers: duplicate (world, slot, agent) {triple}")
        seen_triples.add(triple)

    used = {center.observation for center in e.centers}
    declared: set[str] = set()
    for cls in e.alikeness:
        if not cls:
            raise InvariantError("alikeness: empty class")
        overlap = declared & cls
        if overlap:
            raise InvariantError(
                f"alikeness: observation(s) {sorted(overlap)} appear in more than one class"
            )
        declared |= cls
    if declared != used:
        extra = declared - used
        missing = used - declared
        if extra:
            raise InvariantError(
                f"alikeness: class label(s) {sorted(extra)} are used by no center"
            )
        raise InvariantError(
            f"alikeness: observation(s) {sorted(missing)} belong to no class"
        )


def consistent_centers(e: Experiment, i: InformationState) -> tuple[Center, ...]:
    """The centers an agent in state ``i`` cannot tell apart, in declaration order."""
    if i.observation not in e.observations:
        raise UnknownLabelError(f"unknown observation label {i.observation!r}")
    if i.agent not in e.agents:
        raise UnknownLabelError(f"unknown agent label {i.agent!r}")
    return tuple(
        c for c in e.centers if c.observation == i.observation and c.agent == i.agent
    )


def count_centers(
    e: Experiment, world_id: str, i: InformationState | None = None
) -> int:
    """Centers in a world, optionally restricted to those consistent with ``i``."""
    e.world(world_id)
    if i is None:
        return sum(1 for c in e.centers if c.world == world_id)
    if i.observation not in e.observations:
        raise UnknownLabelError(f"unknown observation label {i.observation!r}")
    if i.agent not in e.agents:
        raise UnknownLabelError(f"unknown agent label {i.agent!r}")
    return sum(
        1
        for c in e.centers
        if c.world == world_id
        and c.observation == i.observation
        and c.agent == i.agent
    )


def verify_alikeness(e: Experiment, observation_class) -> AlikenessCheck:
    """Check that a class of observations really is symmetric in the experiment.

    The class is justified when every swap of two labels inside it extends
    to an automorphism of the center structure: a prior-preserving
    relabeling of worlds (and, for multi-agent experiments, of agents)
    that maps the center set onto itself while fixing slots and all
    observations outside the class. Swaps generate every permutation of
    the class and automorphisms compose, so checking swaps suffices.
    Singleton classes are justified by the identity.
    """
    cls = frozenset(observation_class)
    unknown = cls - e.observations
    if unknown:
        raise UnknownLabelError(f"unknown observation label(s) {sorted(unknown)}")
    for first, second in combinations(sorted(cls), 2):
        if not _swap_extends(e, first, second):
            return AlikenessCheck(False, _swap_failure_reason(e, first, second))
    return AlikenessCheck(True)


def _swap_extends(e: Experiment, first: str, second: str) -> bool:
    center_set = set(e.centers)
    swap = {first: second, second: first}
    for world_map in _prior_preserving_bijections(e):
        for agent_map in _agent_bijections(e):
            mapped = {
                Center(
                    world_map[c.world],
                    c.slot,
                    agent_map[c.agent],
                    swap.get(c.observation, c.observation),
                )
                for c in e.centers
            }
            if mapped == center_set:
                return True
    return False


def _prior_preserving_bijections(e: Experiment):
    """All world bijections that map each world to one of equal prior."""
    groups: dict[Fraction, list[str]] = {}
    for world in e.worlds:
        groups.setdefault(world.prior, []).append(world.id)
    group_list = list(groups.values())
    for perms in product(*(permutations(group) for group in group_list)):
        mapping: dict[str, str] = {}
        for group, perm in zip(group_list, perms):
            mapping.update(zip(group, perm))
        yield mapping


def _agent_bijections(e: Experiment):
    for perm in permutations(e.agents):
        yield dict(zip(e.agents, perm))


def _swap_failure_reason(e: Experiment, first: str, second: str) -> str:
    slots_first = {c.slot for c in e.centers if c.observation == first}
    slots_second = {c.slot for c in e.centers if c.observation == second}
    if slots_first != slots_second:
        def fmt(slots: set[str]) -> str:
            return "{" + ", ".join(s for s in e.slots if s in slots) + "}"

        return (
            f"cannot treat {first!r} and {second!r} alike: {first!r} occurs at "
            f"slots {fmt(slots_first)} but {second!r} occurs at slots {fmt(slots_second)}"
        )
    return (
        f"cannot treat {first!r} and {second!r} alike: no prior-preserving "
        f"relabeling of worlds and agents maps the centers onto themselves "
        f"when the two observations are swapped"
    )


def load_experiment(source) -> Experiment:
    """Build a validated Experiment from a scenario document (mapping or path)."""
    doc, where = read_document(source)
    require_keys(
        doc, where, required={"worlds", "slots", "centers"}, optional={"agents", "alikeness"}
    )

    worlds = []
    for index, entry in enumerate(list_field(doc, "worlds", where)):
        sub = f"{where}.worlds[{index}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{sub}: expected an object")
        require_keys(entry, sub, required={"id", "prior"})
        worlds.append(
            World(string_field(entry, "id", sub), parse_rational(entry["prior"], f"{sub}.prior"))
        )

    slots = _label_list(doc, "slots", where)
    agents = (
        _label_list(doc, "agents", where) if "agents" in doc else [DEFAULT_AGENT]
    )

    centers = []
    for index, entry in enumerate(list_field(doc, "centers", where)):
        sub = f"{where}.centers[{index}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{sub}: expected an object")
        require_keys(entry, sub, required={"world", "slot", "observation"}, optional={"agent"})
        if "agent" in entry:
            agent = string_field(entry, "agent", sub)
        elif len(agents) == 1:
            agent = agents[0]
        else:
            raise DocumentError(
                f"{sub}: agent is required when the experiment declares several agents"
            )
        centers.append(
            Center(
                string_field(entry, "world", sub),
                string_field(entry, "slot", sub),
                agent,
                string_field(entry, "observation", sub),
            )
        )

    if "alikeness" in doc:
        alikeness = []
        for index, entry in enumerate(list_field(doc, "alikeness", where)):
            sub = f"{where}.alikeness[{index}]"
            if not isinstance(entry, list) or not all(isinstance(x, str) for x in entry):
                raise DocumentError(f"{sub}: expected a list of observation labels")
            alikeness.append(frozenset(entry))
    else:
        seen: list[str] = []
        for center in centers:
            if center.observation not in seen:
                seen.append(center.observation)
        alikeness = [frozenset([obs]) for obs in seen]

    return Experiment(
        worlds=tuple(worlds),
        slots=tuple(slots),
        agents=tuple(agents),
        centers=tuple(centers),
        alikeness=tuple(alikeness),
    )


def _label_list(doc: dict, key: str, where: str) -> list[str]:
    entries = list_field(doc, key, where)
    if not all(isinstance(x, str) and x for x in entries):
        raise DocumentError(f"{where}.{key}: expected a list of non-empty strings")
    return entries


def experiment_to_document(e: Experiment) -> dict:
    """Serialize back to the scenario format; loading the result round-trips."""
    return {
        "worlds": [{"id": w.id, "prior": format_rational(w.prior)} for w in e.worlds],
        "slots": list(e.slots),
        "agents": list(e.agents),
        "centers": [
            {"world": c.world, "slot": c.slot, "agent": c.agent, "observation": c.observation}
            for c in e.centers
        ],
        "alikeness": [sorted(cls) for cls in e.alikeness],
    }
