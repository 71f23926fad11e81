"""Books of bets: legitimacy checking, world-by-world simulation, verdicts.

A book is Dutch against an agent exactly when she accepts every offer it
makes and still comes out strictly behind in every world. Simulation walks
each world slot by slot, querying the agent once per distinguishable
situation: decisions are memoized per (information state, bet), since an
agent with the same information and the same bet in front of her decides
the same way every time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .decision import (
    AgentSpec,
    Bet,
    Decision,
    OnObservation,
    PreExperiment,
    evaluate_offer,
    evaluate_pre_experiment,
    offered_at_center,
)
from .docio import list_field, read_document, require_keys, string_field
from .errors import DocumentError, InvariantError, LegitimacyError, UnknownLabelError
from .model import Experiment, InformationState
from .rationals import parse_rational

PRE_SLOT = "pre"


@dataclass(frozen=True)
class Book:
    bets: tuple[Bet, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        in_experiment_seen = False
        for bet in self.bets:
            if bet.id in seen:
                raise InvariantError(f"book: duplicate bet id {bet.id!r}")
            seen.add(bet.id)
            if isinstance(bet.offer, PreExperiment):
                if in_experiment_seen:
                    raise InvariantError(
                        f"book: pre-experiment bet {bet.id!r} must come before "
                        f"in-experiment bets"
                    )
            else:
                in_experiment_seen = True

    @property
    def pre_bets(self) -> tuple[Bet, ...]:
        return tuple(b for b in self.bets if isinstance(b.offer, PreExperiment))

    @property
    def in_experiment_bets(self) -> tuple[Bet, ...]:
        return tuple(b for b in self.bets if isinstance(b.offer, OnObservation))


@dataclass(frozen=True)
class LedgerEntry:
    bet_id: str
    slot: str  # a slot label, or "pre"
    agent: str
    net: Fraction


@dataclass(frozen=True)
class Ledger:
    """Accepted-bet nets per world, in offer order."""

    entries: Mapping[str, tuple[LedgerEntry, ...]]

    def total(self, world_id: str) -> Fraction:
        return sum((entry.net for entry in self.entries[world_id]), Fraction(0))

    def totals(self) -> dict[str, Fraction]:
        return {world_id: self.total(world_id) for world_id in self.entries}


@dataclass(frozen=True)
class DutchBookVerdict:
    is_dutch_book: bool
    all_accepted: bool
    worst_loss: Fraction  # minimum world total; the agent's worst case
    per_world_totals: Mapping[str, Fraction]


@dataclass(frozen=True)
class LegitimacyCheck:
    legitimate: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.legitimate


def validate_book(e: Experiment, book: Book) -> None:
    """Check that every label a book references exists in the experiment."""
    for bet in book.bets:
        unknown_worlds = bet.payoff_event - set(e.world_ids)
        if unknown_worlds:
            raise UnknownLabelError(
                f"bet {bet.id!r}: unknown world(s) {sorted(unknown_worlds)} in payoff event"
            )
        offer = bet.offer
        if isinstance(offer, PreExperiment):
            if offer.agent is not None and offer.agent not in e.agents:
                raise UnknownLabelError(f"bet {bet.id!r}: unknown agent {offer.agent!r}")
            continue
        unknown_obs = offer.observations - e.observations
        if unknown_obs:
            raise UnknownLabelError(
                f"bet {bet.id!r}: unknown observation(s) {sorted(unknown_obs)} in offer rule"
            )
        if offer.agent is not None and offer.agent not in e.agents:
            raise UnknownLabelError(f"bet {bet.id!r}: unknown agent {offer.agent!r}")
        if offer.slots is not None:
            unknown_slots = offer.slots - set(e.slots)
            if unknown_slots:
                raise UnknownLabelError(
                    f"bet {bet.id!r}: unknown slot(s) {sorted(unknown_slots)} in offer rule"
                )


def check_legitimacy(e: Experiment, book: Book) -> LegitimacyCheck:
    """Verify that offers are a function of the agent's information alone.

    Concretely: for any two centers an agent cannot tell apart (same
    observation, same agent), a bet must be offered at both or at neither.
    Pre-experiment offers are always legitimate.
    """
    validate_book(e, book)
    for bet in book.in_experiment_bets:
        by_state: dict[tuple[str, str], list] = {}
        for center in e.centers:
            by_state.setdefault((center.observation, center.agent), []).append(center)
        for (observation, agent), centers in by_state.items():
            offered = [c for c in centers if offered_at_center(bet.offer, c)]
            unoffered = [c for c in centers if not offered_at_center(bet.offer, c)]
            if offered and unoffered:
                skipped = unoffered[0]
                same_world = [c for c in offered if c.world == skipped.world]
                shown = same_world[0] if same_world else offered[0]
                return LegitimacyCheck(
                    False,
                    f"bet {bet.id!r} is offered at center ({shown.world}, {shown.slot}, "
                    f"agent {shown.agent}) but not at ({skipped.world}, {skipped.slot}, "
                    f"agent {skipped.agent}); both carry observation {observation!r}, "
                    f"so the offer process uses information the agent does not have",
                )
    return LegitimacyCheck(True)


def simulate_book(
    agent: AgentSpec, e: Experiment, book: Book, allow_illegitimate: bool = False
) -> tuple[Ledger, DutchBookVerdict]:
    """Run the book against the agent in every world and judge the outcome."""
    validate_book(e, book)
    if not allow_illegitimate:
        check = check_legitimacy(e, book)
        if not check:
            raise LegitimacyError(check.reason)

    decisions: dict[object, Decision] = {}

    def decide_pre(bet: Bet) -> Decision:
        key = (PRE_SLOT, bet.id)
        if key not in decisions:
            decisions[key] = evaluate_pre_experiment(agent, e, bet)
        return decisions[key]

    def decide_at(state: InformationState, bet: Bet) -> Decision:
        key = (state.observation, state.agent, bet.id)
        if key not in decisions:
            decisions[key] = evaluate_offer(agent, e, state, bet)
        return decisions[key]

    entries: dict[str, tuple[LedgerEntry, ...]] = {}
    for world in e.worlds:
        world_entries: list[LedgerEntry] = []
        for bet in book.pre_bets:
            if decide_pre(bet).accept:
                holder = bet.offer.agent or e.agents[0]
                world_entries.append(
                    LedgerEntry(bet.id, PRE_SLOT, holder, bet.net(world.id))
                )
        for slot in e.slots:
            for agent_label in e.agents:
                center = e.center_at(world.id, slot, agent_label)
                if center is None:
                    continue
                state = InformationState(center.observation, center.agent)
                for bet in book.in_experiment_bets:
                    if not offered_at_center(bet.offer, center):
                        continue
                    if decide_at(state, bet).accept:
                        world_entries.append(
                            LedgerEntry(bet.id, slot, agent_label, bet.net(world.id))
                        )
        entries[world.id] = tuple(world_entries)

    ledger = Ledger(entries)
    totals = ledger.totals()
    all_accepted = all(decision.accept for decision in decisions.values())
    verdict = DutchBookVerdict(
        is_dutch_book=all_accepted and all(total < 0 for total in totals.values()),
        all_accepted=all_accepted,
        worst_loss=min(totals.values()),
        per_world_totals=totals,
    )
    return ledger, verdict


def load_book(source) -> Book:
    """Build a Book from a book document (mapping or path)."""
    doc, where = read_document(source)
    require_keys(doc, where, required={"bets"})
    bets = []
    for index, entry in enumerate(list_field(doc, "bets", where)):
        sub = f"{where}.bets[{index}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{sub}: expected an object")
        require_keys(entry, sub, required={"id", "cost", "payout", "payoff_event", "offer"})
        event = entry["payoff_event"]
        if not isinstance(event, list) or not all(isinstance(x, str) for x in event):
            raise DocumentError(f"{sub}.payoff_event: expected a list of world ids")
        bets.append(
            Bet(
                id=string_field(entry, "id", sub),
                cost=parse_rational(entry["cost"], f"{sub}.cost"),
                payout=parse_rational(entry["payout"], f"{sub}.payout"),
                payoff_event=frozenset(event),
                offer=parse_offer(entry["offer"], sub),
            )
        )
    return Book(tuple(bets))


def parse_offer(value, where: str):
    """Parse "pre" | {"pre": true, ...} | {"observations": [...], ...}."""
    if value == PRE_SLOT:
        return PreExperiment()
    if not isinstance(value, dict):
        raise DocumentError(f'{where}.offer: expected "pre" or an object')
    if value.get(PRE_SLOT):
        require_keys(value, f"{where}.offer", required={PRE_SLOT}, optional={"agent"})
        agent = value.get("agent")
        if agent is not None and not isinstance(agent, str):
            raise DocumentError(f"{where}.offer.agent: expected a string")
        return PreExperiment(agent)
    require_keys(
        value, f"{where}.offer", required={"observations"}, optional={"agent", "slots"}
    )
    observations = value["observations"]
    if not isinstance(observations, list) or not all(
        isinstance(x, str) for x in observations
    ):
        raise DocumentError(f"{where}.offer.observations: expected a list of labels")
    agent = value.get("agent")
    if agent is not None and not isinstance(agent, str):
        raise DocumentError(f"{where}.offer.agent: expected a string")
    slots = value.get("slots")
    if slots is not None:
        if not isinstance(slots, list) or not all(isinstance(x, str) for x in slots):
            raise DocumentError(f"{where}.offer.slots: expected a list of labels")
        slots = frozenset(slots)
    return OnObservation(frozenset(observations), agent, slots)
