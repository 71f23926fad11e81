"""Accept-or-reject evaluation of bets under causal or evidential reasoning.

A causal reasoner scores only the acceptance in front of her: her delta is
the credence-weighted net payout of one acceptance. An evidential reasoner
treats her choice as evidence about linked choices elsewhere. Linked means:
other centers in the same information state (always, with full confidence),
and, under alike-class linkage, centers whose observation falls in the same
validated alikeness class, matched with confidence rho. The delta reported
is EU(accept) minus EU(reject), where rejecting is symmetric evidence of
linked rejection; centers outside the class contribute the same unknown
amount to both branches and cancel. With n same-state acceptances and m
class-linked ones in a world, the per-world multiplier on the bet's net
payout works out to n + (2*rho - 1)*m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .credence import CredenceRule, credence
from .errors import InvariantError, OfferError, UnjustifiedClassError
from .model import (
    Center,
    Experiment,
    InformationState,
    consistent_centers,
    verify_alikeness,
)


@dataclass(frozen=True)
class PreExperiment:
    """Offered once, before the experiment starts; agent tag is for bookkeeping."""

    agent: str | None = None


@dataclass(frozen=True)
class OnObservation:
    """Offered at every center matching the given observations (and agent, if set).

    A slot restriction makes the offer depend on something the agent cannot
    see; it exists so the engine can represent and study illegitimate books,
    and check_legitimacy flags it.
    """

    observations: frozenset[str]
    agent: str | None = None
    slots: frozenset[str] | None = None


OfferRule = Union[PreExperiment, OnObservation]


@dataclass(frozen=True)
class Bet:
    id: str
    cost: Fraction
    payout: Fraction
    payoff_event: frozenset[str]
    offer: OfferRule

    def __post_init__(self) -> None:
        if self.cost < 0:
            raise InvariantError(f"bet {self.id!r}: cost must be >= 0")
        if self.payout < 0:
            raise InvariantError(f"bet {self.id!r}: payout must be >= 0")

    def net(self, world_id: str) -> Fraction:
        """Net gain of one acceptance in the given world, cost included."""
        won = self.payout if world_id in self.payoff_event else Fraction(0)
        return won - self.cost


@dataclass(frozen=True)
class SameInfoOnly:
    """A decision is evidence only about decisions in the very same state."""


@dataclass(frozen=True)
class AlikeClasses:
    """A decision is evidence about decisions across an alikeness class.

    rho is the agent's confidence that her choice is matched at a linked
    center; inside one information state the match is always total.
    """

    rho: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if not 0 <= self.rho <= 1:
            raise InvariantError(f"rho must lie in [0, 1], got {self.rho}")


LinkageModel = Union[SameInfoOnly, AlikeClasses]


@dataclass(frozen=True)
class CDT:
    pass


@dataclass(frozen=True)
class EDT:
    linkage: LinkageModel = AlikeClasses()


DecisionTheory = Union[CDT, EDT]


class TieRule:
    REJECT_AT_ZERO = "reject"
    ACCEPT_AT_ZERO = "accept"


@dataclass(frozen=True)
class AgentSpec:
    rule: CredenceRule
    theory: DecisionTheory
    tie_rule: str = TieRule.REJECT_AT_ZERO


@dataclass(frozen=True)
class Decision:
    accept: bool
    delta: Fraction


def offered_at_center(offer: OfferRule, center: Center) -> bool:
    if isinstance(offer, PreExperiment):
        return False
    if center.observation not in offer.observations:
        return False
    if offer.agent is not None and center.agent != offer.agent:
        return False
    if offer.slots is not None and center.slot not in offer.slots:
        return False
    return True


def offered_at_state(e: Experiment, offer: OfferRule, i: InformationState) -> bool:
    return any(offered_at_center(offer, c) for c in consistent_centers(e, i))


@lru_cache(maxsize=None)
def _class_check(e: Experiment, cls: frozenset[str]):
    return verify_alikeness(e, cls)


def _acceptance_multiplier(
    e: Experiment,
    i: InformationState,
    offer: OfferRule,
    linkage: LinkageModel,
    world_id: str,
) -> Fraction:
    """Net acceptances the choice controls in a world: same-state plus linked."""
    own = sum(
        1
        for c in e.centers
        if c.world == world_id
        and c.observation == i.observation
        and c.agent == i.agent
        and offered_at_center(offer, c)
    )
    if isinstance(linkage, SameInfoOnly):
        return Fraction(own)
    cls = e.alikeness_class_of(i.observation)
    if len(cls) > 1:
        check = _class_check(e, cls)
        if not check.justified:
            raise UnjustifiedClassError(
                f"alikeness class {sorted(cls)} is not justified: {check.reason}"
            )
    linked = sum(
        1
        for c in e.centers
        if c.world == world_id
        and c.observation in cls
        and (c.observation, c.agent) != (i.observation, i.agent)
        and offered_at_center(offer, c)
    )
    return own + (2 * linkage.rho - 1) * linked


def decision_weights(
    agent: AgentSpec, e: Experiment, i: InformationState, offer: OfferRule
) -> dict[str, Fraction]:
    """Per-world weight on the bet's net payout: credence times multiplier.

    The delta of any bet with this offer rule is the weight-sum of its
    per-world nets, which keeps evaluation and synthesis on one formula.
    """
    dist = credence(agent.rule, e, i)
    weights: dict[str, Fraction] = {}
    for world in e.worlds:
        world_credence = dist.world(world.id)
        if world_credence == 0:
            continue
        if isinstance(agent.theory, CDT):
            multiplier = Fraction(1)
        else:
            multiplier = _acceptance_multiplier(e, i, offer, agent.theory.linkage, world.id)
        weights[world.id] = world_credence * multiplier
    return weights


def _decide(tie_rule: str, delta: Fraction) -> Decision:
    accept = delta > 0 or (delta == 0 and tie_rule == TieRule.ACCEPT_AT_ZERO)
    return Decision(accept, delta)


def evaluate_offer(
    agent: AgentSpec, e: Experiment, i: InformationState, b: Bet
) -> Decision:
    """Decide a bet offered in-experiment at information state ``i``."""
    if isinstance(b.offer, PreExperiment):
        raise OfferError(
            f"bet {b.id!r} is a pre-experiment bet; use evaluate_pre_experiment"
        )
    if not offered_at_state(e, b.offer, i):
        raise OfferError(
            f"bet {b.id!r} is not offered at observation {i.observation!r} "
            f"for agent {i.agent!r}"
        )
    weights = decision_weights(agent, e, i, b.offer)
    delta = sum((weight * b.net(world_id) for world_id, weight in weights.items()), Fraction(0))
    return _decide(agent.tie_rule, delta)


def evaluate_pre_experiment(agent: AgentSpec, e: Experiment, b: Bet) -> Decision:
    """Decide a bet offered once before the experiment; theories agree here."""
    if not isinstance(b.offer, PreExperiment):
        raise OfferError(f"bet {b.id!r} is offered in-experiment, not before it")
    delta = sum((world.prior * b.net(world.id) for world in e.worlds), Fraction(0))
    return _decide(agent.tie_rule, delta)


def briggs_condition(e: Experiment, b: Bet, i: InformationState) -> Fraction:
    """Prior-weighted, consistent-center-counted net payout of the bet.

    Positive means accept under the betting rule that multiplies each
    surviving world's renormalized prior by its consistent-center count.
    On experiments where every awakening carries the same information this
    agrees in sign with both the causal thirder and the evidential halfer.
    """
    if isinstance(b.offer, PreExperiment):
        raise OfferError(
            f"bet {b.id!r} is a pre-experiment bet; use evaluate_pre_experiment"
        )
    if not offered_at_state(e, b.offer, i):
        raise OfferError(
            f"bet {b.id!r} is not offered at observation {i.observation!r} "
            f"for agent {i.agent!r}"
        )
    counts = {
        world.id: sum(
            1
            for c in e.centers
            if c.world == world.id
            and c.observation == i.observation
            and c.agent == i.agent
        )
        for world in e.worlds
    }
    surviving = [world for world in e.worlds if counts[world.id] > 0]
    normalizer = sum((world.prior for world in surviving), Fraction(0))
    return sum(
        (world.prior / normalizer * counts[world.id] * b.net(world.id) for world in surviving),
        Fraction(0),
    )


def rho_threshold(
    rule: CredenceRule, e: Experiment, i: InformationState, b: Bet
) -> Fraction | None:
    """Confidence at which the evidential delta crosses zero, if it does.

    The delta is affine in rho, so two evaluations pin it down. Returns
    None when the delta does not depend on rho; a root outside [0, 1]
    means no crossing at any admissible confidence.
    """
    deltas = []
    for rho in (Fraction(0), Fraction(1)):
        agent = AgentSpec(rule, EDT(AlikeClasses(rho)))
        deltas.append(evaluate_offer(agent, e, i, b).delta)
    at_zero, at_one = deltas
    if at_one == at_zero:
        return None
    return at_zero / (at_zero - at_one)
