"""Shared fixtures-in-spirit: agent builders, random case generators, and
independent oracles that recompute engine results from first principles."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from centerbook import (
    CDT,
    EDT,
    AgentSpec,
    AlikeClasses,
    Bet,
    Center,
    CredenceRule,
    Experiment,
    InformationState,
    OnObservation,
    SameInfoOnly,
    TieRule,
    credence,
    load_experiment,
)
from centerbook.decision import offered_at_center

F = Fraction


def thirder_cdt(tie: str = TieRule.REJECT_AT_ZERO) -> AgentSpec:
    return AgentSpec(CredenceRule.THIRDER, CDT(), tie)


def halfer_cdt(tie: str = TieRule.REJECT_AT_ZERO) -> AgentSpec:
    return AgentSpec(CredenceRule.HALFER_STANDARD, CDT(), tie)


def halfer_edt(rho: Fraction = F(1), tie: str = TieRule.REJECT_AT_ZERO) -> AgentSpec:
    return AgentSpec(CredenceRule.HALFER_STANDARD, EDT(AlikeClasses(rho)), tie)


def halfer_edt_same_info(tie: str = TieRule.REJECT_AT_ZERO) -> AgentSpec:
    return AgentSpec(CredenceRule.HALFER_STANDARD, EDT(SameInfoOnly()), tie)


def awake_bet(cost: int, payout: int, event: set[str], bet_id: str = "bet") -> Bet:
    return Bet(
        bet_id,
        F(cost),
        F(payout),
        frozenset(event),
        OnObservation(frozenset(["awake"])),
    )


def random_uniform_info_experiment(rng: random.Random) -> Experiment:
    """A small experiment where every awakening carries the same information."""
    n_worlds = rng.randint(1, 4)
    n_slots = rng.randint(1, 3)
    denominator = rng.randint(n_worlds, 12)
    cuts = sorted(rng.sample(range(1, denominator), n_worlds - 1)) if n_worlds > 1 else []
    weights = [b - a for a, b in zip([0] + cuts, cuts + [denominator])]
    world_ids = [f"w{k}" for k in range(n_worlds)]
    slots = [f"s{k}" for k in range(n_slots)]
    centers = []
    for world_id in world_ids:
        for slot in slots:
            if rng.random() < 0.5:
                centers.append({"world": world_id, "slot": slot, "observation": "awake"})
    if not centers:
        centers.append(
            {"world": rng.choice(world_ids), "slot": rng.choice(slots), "observation": "awake"}
        )
    return load_experiment(
        {
            "worlds": [
                {"id": wid, "prior": f"{w}/{denominator}"}
                for wid, w in zip(world_ids, weights)
            ],
            "slots": slots,
            "centers": centers,
        }
    )


def random_bet(rng: random.Random, e: Experiment, bet_id: str = "bet") -> Bet:
    event = frozenset(wid for wid in e.world_ids if rng.random() < 0.5)
    return Bet(
        bet_id,
        F(rng.randint(0, 50)),
        F(rng.randint(0, 50)),
        event,
        OnObservation(frozenset(["awake"])),
    )


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def edt_delta_by_profile_enumeration(
    rule: CredenceRule,
    e: Experiment,
    i: InformationState,
    bet: Bet,
    rho: Fraction,
) -> Fraction:
    """EU(accept) - EU(reject) via explicit expectation over linked decisions.

    For each world, enumerate every accept/reject profile of the class-linked
    centers, weight it by rho-per-match, and sum the resulting acceptance
    counts. Bets outside the class would add the same constant to both
    branches, so they are omitted. This is the closed formula's slow twin.
    """
    dist = credence(rule, e, i)
    cls = e.alikeness_class_of(i.observation)
    total = F(0)
    for world in e.worlds:
        world_credence = dist.world(world.id)
        if world_credence == 0:
            continue
        net = bet.net(world.id)
        own = [
            c
            for c in e.centers
            if c.world == world.id
            and (c.observation, c.agent) == (i.observation, i.agent)
            and offered_at_center(bet.offer, c)
        ]
        linked = [
            c
            for c in e.centers
            if c.world == world.id
            and c.observation in cls
            and (c.observation, c.agent) != (i.observation, i.agent)
            and offered_at_center(bet.offer, c)
        ]
        expected = {}
        for action in (1, 0):
            eu = F(0)
            for profile in itertools.product((1, 0), repeat=len(linked)):
                probability = F(1)
                for choice in profile:
                    probability *= rho if choice == action else 1 - rho
                acceptances = action * len(own) + sum(profile)
                eu += probability * acceptances * net
            expected[action] = eu
        total += world_credence * (expected[1] - expected[0])
    return total


def alikeness_by_exhaustive_search(e: Experiment, cls: set[str]) -> bool:
    """Single-agent oracle: try every world permutation for every in-class swap."""
    assert len(e.agents) == 1
    center_set = set(e.centers)
    ids = list(e.world_ids)
    priors = {w.id: w.prior for w in e.worlds}
    for a, b in itertools.combinations(sorted(cls), 2):
        swap = {a: b, b: a}
        extended = False
        for perm in itertools.permutations(ids):
            mapping = dict(zip(ids, perm))
            if any(priors[wid] != priors[mapping[wid]] for wid in ids):
                continue
            mapped = {
                Center(mapping[c.world], c.slot, c.agent, swap.get(c.observation, c.observation))
                for c in e.centers
            }
            if mapped == center_set:
                extended = True
                break
        if not extended:
            return False
    return True
