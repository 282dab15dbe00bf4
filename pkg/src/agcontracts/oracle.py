"""Conformance checking of the contract algebra against its metatheory.

Every law the operators are supposed to satisfy is registered here as a
named theorem with two tiers: an exhaustive tier that enumerates every
instance over small boolean state spaces, and a randomized tier that
samples instances over larger spaces and richer theories from a seeded
generator. A check aborts at the first counterexample and reports it in
a serialized, replayable form.

Checks call the operators through an :class:`AlgebraOps` bundle so a test
can swap in a deliberately corrupted operator and confirm the oracle
catches it; the default bundle is exactly the public contract API.

Two runs with equal configuration produce identical reports: each trial
seeds its own generator from (seed, trial index), and no report field
depends on time or identity.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from agcontracts.core import (
    BOOL,
    DEFAULT_STATE_CAP,
    Assertion,
    EnumerationCapError,
    State,
    Theory,
    VarSet,
    state_space_size,
)
from agcontracts.contracts import Contract
from agcontracts.alphabet import (
    Inclusion,
    extend_assertion,
    extend_contract,
    project_assertion_exists,
    project_assertion_forall,
)
from agcontracts.formulas import (
    TRUE,
    And,
    Atom,
    Formula,
    FormulaContract,
    Not,
    assertion_to_formula,
    format_formula,
    parse_formula,
)

UNIT = Theory(values=(0,), name="unit")
TERNARY = Theory(values=(0, 1, 2), name="ternary")

_THEORY_FAMILY = (UNIT, BOOL, TERNARY)
_VAR_POOL = ("x", "y", "z")

# enumerate an inner quantifier when the subset space is at most this
# large; fall back to the maximal witnesses beyond (sound because
# implementation and provision are downward closed)
_INNER_SUBSET_LIMIT = 16
_INNER_TRIPLE_LIMIT = 4


@dataclass(frozen=True, slots=True)
class OracleConfig:
    """Knobs for one oracle run; equal configs give identical reports."""

    seed: int = 0
    trials: int = 10_000
    exhaustive_cap: int = 4
    randomized_cap: int = 64

    def __post_init__(self) -> None:
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        if self.exhaustive_cap < 1 or self.randomized_cap < 1:
            raise ValueError("state-space caps must be positive")


@dataclass(frozen=True)
class CheckReport:
    """Outcome of checking one theorem at one tier."""

    theorem: str
    tier: str
    instances: int
    verdict: str
    counterexample: dict | None = None

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "tier": self.tier,
            "instances": self.instances,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class AlgebraOps:
    """The operators under test, swappable for mutation experiments."""

    saturate: Callable[[Contract], Contract]
    refines: Callable[[Contract, Contract], bool]
    conjoin: Callable[[Contract, Contract], Contract]
    compose: Callable[[Contract, Contract], Contract]

    @classmethod
    def standard(cls) -> "AlgebraOps":
        return cls(
            saturate=Contract.saturate,
            refines=Contract.refines,
            conjoin=Contract.conjoin,
            compose=Contract.compose,
        )

    def equivalent(self, c1: Contract, c2: Contract) -> bool:
        return self.refines(c1, c2) and self.refines(c2, c1)


DEFAULT_OPS = AlgebraOps.standard()


# -- enumeration ---------------------------------------------------------------


def enumerate_assertions(
    theory: Theory, varset: VarSet, limit: int | None = None
) -> Iterator[Assertion]:
    """All assertions over the space, in bit-vector numeric order."""
    count = 1 << state_space_size(theory, varset)
    effective = DEFAULT_STATE_CAP if limit is None else limit
    if count > effective:
        raise EnumerationCapError(count, effective)
    for bits in range(count):
        yield Assertion(theory, varset, bits)


def enumerate_contracts(
    theory: Theory, varset: VarSet, limit: int | None = None
) -> Iterator[Contract]:
    """All contracts over the space: the cartesian square of the
    assertion enumeration, assumption varying slowest."""
    count = (1 << state_space_size(theory, varset)) ** 2
    effective = DEFAULT_STATE_CAP if limit is None else limit
    if count > effective:
        raise EnumerationCapError(count, effective)
    pool = list(enumerate_assertions(theory, varset, limit))
    for a in pool:
        for g in pool:
            yield Contract(a, g)


# -- randomized generation --------------------------------------------------------


def random_theory(rng: random.Random) -> Theory:
    """One of the one-, two-, or three-valued stock theories."""
    return rng.choice(_THEORY_FAMILY)


def random_varset(rng: random.Random, theory: Theory, cap: int) -> VarSet:
    """A variable set whose state space fits under ``cap``."""
    width = 0
    while width < len(_VAR_POOL) and len(theory.values) ** (width + 1) <= cap:
        width += 1
    size = rng.randint(1, width) if width else 0
    return VarSet(tuple(rng.sample(_VAR_POOL, size)))


def random_assertion(rng: random.Random, theory: Theory, varset: VarSet) -> Assertion:
    """Uniform over all assertions of the space."""
    return Assertion(theory, varset, rng.getrandbits(state_space_size(theory, varset)))


def random_contract(rng: random.Random, theory: Theory, varset: VarSet) -> Contract:
    """Uniform over all contracts of the space."""
    a = random_assertion(rng, theory, varset)
    g = random_assertion(rng, theory, varset)
    return Contract(a, g)


def random_inclusion(rng: random.Random, theory: Theory, cap: int) -> Inclusion:
    """A random variable set with a random subset of it."""
    large = random_varset(rng, theory, cap)
    small = VarSet(tuple(v for v in large.vars if rng.random() < 0.5))
    return Inclusion(small, large)


def _random_subset(rng: random.Random, a: Assertion) -> Assertion:
    bits = a.bits & rng.getrandbits(state_space_size(a.theory, a.varset))
    return Assertion(a.theory, a.varset, bits)


def _random_refining(rng: random.Random, c: Contract) -> Contract:
    # grow the assumption, shrink the guarantee: always refines c
    grow = random_assertion(rng, c.theory, c.varset)
    shrink = random_assertion(rng, c.theory, c.varset)
    return Contract(c.A | grow, c.G & shrink)


def _random_state(rng: random.Random, theory: Theory, varset: VarSet) -> State:
    return State.from_index(theory, varset, rng.randrange(state_space_size(theory, varset)))


def _random_formula(
    rng: random.Random, theory: Theory, varset: VarSet, depth: int
) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.2 or not len(varset):
            return TRUE
        return Atom(rng.choice(varset.vars), rng.choice(theory.values))
    if rng.random() < 0.4:
        return Not(_random_formula(rng, theory, varset, depth - 1))
    return And(
        _random_formula(rng, theory, varset, depth - 1),
        _random_formula(rng, theory, varset, depth - 1),
    )


# -- instance serialization ----------------------------------------------------------


def _theory_to_json(t: Theory) -> dict:
    return {"name": t.name, "values": list(t.values)}


def _theory_from_json(data: dict) -> Theory:
    return Theory(tuple(data["values"]), data["name"])


def _assertion_to_json(a: Assertion) -> list[int]:
    return sorted(a.indices())


def _assertion_from_json(data: list[int], theory: Theory, varset: VarSet) -> Assertion:
    return Assertion.from_indices(theory, varset, data)


def _contract_to_json(c: Contract) -> dict:
    return {"A": _assertion_to_json(c.A), "G": _assertion_to_json(c.G)}


def _contract_from_json(data: dict, theory: Theory, varset: VarSet) -> Contract:
    return Contract(
        _assertion_from_json(data["A"], theory, varset),
        _assertion_from_json(data["G"], theory, varset),
    )


def _space_to_json(theory: Theory, varset: VarSet) -> dict:
    return {"theory": _theory_to_json(theory), "varset": list(varset.vars)}


def _space_from_json(data: dict) -> tuple[Theory, VarSet]:
    return _theory_from_json(data["theory"]), VarSet(tuple(data["varset"]))


# -- theorem registry -----------------------------------------------------------------


@dataclass(frozen=True)
class _Theorem:
    name: str
    prop: Callable[..., bool]
    cases: Callable[[OracleConfig], Iterator[tuple]]
    sample: Callable[[random.Random, OracleConfig], tuple]
    serialize: Callable[..., dict]
    deserialize: Callable[[dict], tuple]


def _boolean_spaces(config: OracleConfig, most_states: int | None = None) -> list[VarSet]:
    cap = config.exhaustive_cap if most_states is None else min(config.exhaustive_cap, most_states)
    return [
        VarSet(_VAR_POOL[:k])
        for k in range(1, len(_VAR_POOL) + 1)
        if 2**k <= cap
    ]


def _all_assertions(varset: VarSet) -> list[Assertion]:
    return list(enumerate_assertions(BOOL, varset))


def _all_contracts(varset: VarSet) -> list[Contract]:
    return list(enumerate_contracts(BOOL, varset))


def _sample_space(rng: random.Random, config: OracleConfig) -> tuple[Theory, VarSet]:
    theory = random_theory(rng)
    return theory, random_varset(rng, theory, config.randomized_cap)


# saturate_sound: satisfaction is invariant under saturation


def _prop_saturate_sound(ops: AlgebraOps, s: State, c: Contract) -> bool:
    return c.satisfied_by(s) == ops.saturate(c).satisfied_by(s)


def _cases_saturate_sound(config: OracleConfig) -> Iterator[tuple]:
    for varset in _boolean_spaces(config):
        states = [State.from_index(BOOL, varset, i) for i in range(state_space_size(BOOL, varset))]
        for c in _all_contracts(varset):
            for s in states:
                yield (s, c)


def _sample_saturate_sound(rng: random.Random, config: OracleConfig) -> tuple:
    theory, varset = _sample_space(rng, config)
    return (_random_state(rng, theory, varset), random_contract(rng, theory, varset))


def _ser_saturate_sound(s: State, c: Contract) -> dict:
    return _space_to_json(s.theory, s.varset) | {
        "state": s.as_dict(),
        "c": _contract_to_json(c),
    }


def _de_saturate_sound(data: dict) -> tuple:
    theory, varset = _space_from_json(data)
    return (
        State.from_mapping(theory, varset, data["state"]),
        _contract_from_json(data["c"], theory, varset),
    )


# saturation_idempotent: saturate . saturate = saturate


def _prop_saturation_idempotent(ops: AlgebraOps, c: Contract) -> bool:
    once = ops.saturate(c)
    return ops.saturate(once) == once


def _cases_contracts(config: OracleConfig) -> Iterator[tuple]:
    for varset in _boolean_spaces(config):
        for c in _all_contracts(varset):
            yield (c,)


def _sample_contract(rng: random.Random, config: OracleConfig) -> tuple:
    theory, varset = _sample_space(rng, config)
    return (random_contract(rng, theory, varset),)


def _ser_contract(c: Contract) -> dict:
    return _space_to_json(c.theory, c.varset) | {"c": _contract_to_json(c)}


def _de_contract(data: dict) -> tuple:
    theory, varset = _space_from_json(data)
    return (_contract_from_json(data["c"], theory, varset),)


# refinement_order_laws: reflexive, transitive, antisymmetric up to
# saturated equality


def _prop_order_laws(ops: AlgebraOps, c1: Contract, c2: Contract, c3: Contract) -> bool:
    if not ops.refines(c1, c1):
        return False
    r12, r21 = ops.refines(c1, c2), ops.refines(c2, c1)
    if r12 and r21 and ops.saturate(c1) != ops.saturate(c2):
        return False
    if r12 and ops.refines(c2, c3) and not ops.refines(c1, c3):
        return False
    return True


def _cases_contract_triples(most_states: int) -> Callable[[OracleConfig], Iterator[tuple]]:
    def cases(config: OracleConfig) -> Iterator[tuple]:
        for varset in _boolean_spaces(config, most_states):
            pool = _all_contracts(varset)
            for c1 in pool:
                for c2 in pool:
                    for c3 in pool:
                        yield (c1, c2, c3)

    return cases


def _sample_contract_chain(rng: random.Random, config: OracleConfig) -> tuple:
    theory, varset = _sample_space(rng, config)
    c1 = random_contract(rng, theory, varset)
    if rng.random() < 0.5:
        c2 = _random_refining(rng, c1)
        c3 = _random_refining(rng, c2)
    else:
        c2 = random_contract(rng, theory, varset)
        c3 = random_contract(rng, theory, varset)
    return (c1, c2, c3)


def _ser_contract_triple(c1: Contract, c2: Contract, c3: Contract) -> dict:
    return _space_to_json(c1.theory, c1.varset) | {
        "c1": _contract_to_json(c1),
        "c2": _contract_to_json(c2),
        "c3": _contract_to_json(c3),
    }


def _de_contract_triple(data: dict) -> tuple:
    theory, varset = _space_from_json(data)
    return tuple(
        _contract_from_json(data[key], theory, varset) for key in ("c1", "c2", "c3")
    )


# refines_correct: refinement holds iff implementations transfer forward
# and environments transfer backward


@lru_cache(maxsize=None)
def _assertion_pool(theory: Theory, varset: VarSet) -> tuple[Assertion, ...]:
    return tuple(enumerate_assertions(theory, varset))


@lru_cache(maxsize=8192)
def _behaviour_profile(c: Contract) -> tuple[frozenset[int], frozenset[int]]:
    # which assertions implement and which provide for c, by the public
    # predicates, memoized so pair sweeps stay quadratic
    pool = _assertion_pool(c.theory, c.varset)
    implementations = frozenset(a.bits for a in pool if c.implemented_by(a))
    environments = frozenset(a.bits for a in pool if c.provided_by(a))
    return implementations, environments


def _transfer_semantics(c1: Contract, c2: Contract) -> bool:
    size = state_space_size(c1.theory, c1.varset)
    if (1 << size) <= _INNER_SUBSET_LIMIT:
        impls1, envs1 = _behaviour_profile(c1)
        impls2, envs2 = _behaviour_profile(c2)
        return impls1 <= impls2 and envs2 <= envs1
    # the largest implementation and environment are the hardest cases
    return c2.implemented_by(c1.max_implementation()) and c1.provided_by(
        c2.max_environment()
    )


def _prop_refines_correct(ops: AlgebraOps, c1: Contract, c2: Contract) -> bool:
    return ops.refines(c1, c2) == _transfer_semantics(c1, c2)


def _cases_contract_pairs(most_states: int | None = None) -> Callable[[OracleConfig], Iterator[tuple]]:
    def cases(config: OracleConfig) -> Iterator[tuple]:
        for varset in _boolean_spaces(config, most_states):
            pool = _all_contracts(varset)
            for c1 in pool:
                for c2 in pool:
                    yield (c1, c2)

    return cases


def _sample_refining_pair(rng: random.Random, config: OracleConfig) -> tuple:
    theory, varset = _sample_space(rng, config)
    c1 = random_contract(rng, theory, varset)
    if rng.random() < 0.5:
        return (_random_refining(rng, c1), c1)
    return (c1, random_contract(rng, theory, varset))


def _ser_contract_pair(c1: Contract, c2: Contract) -> dict:
    return _space_to_json(c1.theory, c1.varset) | {
        "c1": _contract_to_json(c1),
        "c2": _contract_to_json(c2),
    }


def _de_contract_pair(data: dict) -> tuple:
    theory, varset = _space_from_json(data)
    return (
        _contract_from_json(data["c1"], theory, varset),
        _contract_from_json(data["c2"], theory, varset),
    )


# glb_correct: the conjunction is a lower bound and above every lower bound


def _prop_glb_correct(ops: AlgebraOps, c1: Contract, c2: Contract, c: Contract) -> bool:
    meet = ops.conjoin(c1, c2)
    if not (ops.refines(meet, c1) and ops.refines(meet, c2)):
        return False
    if ops.refines(c, c1) and ops.refines(c, c2) and not ops.refines(c, meet):
        return False
    return True


def _sample_glb(rng: random.Random, config: OracleConfig) -> tuple:
    theory, varset = _sample_space(rng, config)
    c1 = random_contract(rng, theory, varset)
    c2 = random_contract(rng, theory, varset)
    if rng.random() < 0.5:
        c = _random_refining(rng, c1.conjoin(c2))
    else:
        c = random_contract(rng, theory, varset)
    return (c1, c2, c)


# compose_correct: intersections of implementations implement the
# composite, and its environments combine with either implementation
# into an environment for the other operand


def _prop_compose_correct(
    ops: AlgebraOps,
    c1: Contract,
    c2: Contract,
    sigma1: Assertion,
    sigma2: Assertion,
    e: Assertion,
) -> bool:
    if not (c1.implemented_by(sigma1) and c2.implemented_by(sigma2)):
        return True
    composed = ops.compose(c1, c2)
    if not composed.implemented_by(sigma1 & sigma2):
        return False
    if not composed.provided_by(e):
        return True
    return c1.provided_by(e & sigma2) and c2.provided_by(e & sigma1)


def _cases_compose_correct(config: OracleConfig) -> Iterator[tuple]:
    for varset in _boolean_spaces(config, 2):
        assertions = _all_assertions(varset)
        pool = _all_contracts(varset)
        for c1 in pool:
            for c2 in pool:
                for sigma1 in assertions:
                    for sigma2 in assertions:
                        for e in assertions:
                            yield (c1, c2, sigma1, sigma2, e)


def _sample_compose_correct(rng: random.Random, config: OracleConfig) -> tuple:
    theory, varset = _sample_space(rng, config)
    c1 = random_contract(rng, theory, varset)
    c2 = random_contract(rng, theory, varset)
    sigma1 = _random_subset(rng, c1.max_implementation())
    sigma2 = _random_subset(rng, c2.max_implementation())
    e = _random_subset(rng, c1.compose(c2).max_environment())
    return (c1, c2, sigma1, sigma2, e)


def _ser_compose_correct(c1, c2, sigma1, sigma2, e) -> dict:
    return _space_to_json(c1.theory, c1.varset) | {
        "c1": _contract_to_json(c1),
        "c2": _contract_to_json(c2),
        "sigma1": _assertion_to_json(sigma1),
        "sigma2": _assertion_to_json(sigma2),
        "e": _assertion_to_json(e),
    }


def _de_compose_correct(data: dict) -> tuple:
    theory, varset = _space_from_json(data)
    return (
        _contract_from_json(data["c1"], theory, varset),
        _contract_from_json(data["c2"], theory, varset),
        _assertion_from_json(data["sigma1"], theory, varset),
        _assertion_from_json(data["sigma2"], theory, varset),
        _assertion_from_json(data["e"], theory, varset),
    )


# compose_lowest: composition refines every contract admitting the
# composed behaviour


def _admits_composed_behaviour(c: Contract, c1: Contract, c2: Contract) -> bool:
    size = state_space_size(c.theory, c.varset)
    if (1 << size) <= _INNER_TRIPLE_LIMIT:
        pool = _assertion_pool(c.theory, c.varset)
        impls1 = [s for s in pool if c1.implemented_by(s)]
        impls2 = [s for s in pool if c2.implemented_by(s)]
        envs = [e for e in pool if c.provided_by(e)]
        return all(
            c.implemented_by(s1 & s2) for s1 in impls1 for s2 in impls2
        ) and all(
            c1.provided_by(e & s2) and c2.provided_by(e & s1)
            for e in envs
            for s1 in impls1
            for s2 in impls2
        )
    m1, m2 = c1.max_implementation(), c2.max_implementation()
    e = c.max_environment()
    return (
        c.implemented_by(m1 & m2)
        and c1.provided_by(e & m2)
        and c2.provided_by(e & m1)
    )


def _prop_compose_lowest(ops: AlgebraOps, c1: Contract, c2: Contract, c: Contract) -> bool:
    if not _admits_composed_behaviour(c, c1, c2):
        return True
    return ops.refines(ops.compose(c1, c2), c)


def _sample_compose_lowest(rng: random.Random, config: OracleConfig) -> tuple:
    theory, varset = _sample_space(rng, config)
    c1 = random_contract(rng, theory, varset)
    c2 = random_contract(rng, theory, varset)
    if rng.random() < 0.5:
        # loosen the true composite; such contracts usually admit it
        base = c1.compose(c2)
        c = Contract(base.A & random_assertion(rng, theory, varset),
                     base.G | random_assertion(rng, theory, varset))
    else:
        c = random_contract(rng, theory, varset)
    return (c1, c2, c)


# composition_commutes


def _prop_composition_commutes(ops: AlgebraOps, c1: Contract, c2: Contract) -> bool:
    return ops.equivalent(ops.compose(c1, c2), ops.compose(c2, c1))


def _sample_contract_pair(rng: random.Random, config: OracleConfig) -> tuple:
    theory, varset = _sample_space(rng, config)
    return (random_contract(rng, theory, varset), random_contract(rng, theory, varset))


# extended_compose_correct: both the union form and the intersection
# form of combining extended implementations


def _prop_extended_compose(union: bool):
    def prop(
        ops: AlgebraOps,
        inc1: Inclusion,
        inc2: Inclusion,
        c1: Contract,
        c2: Contract,
        sigma1: Assertion,
        sigma2: Assertion,
    ) -> bool:
        if not (c1.implemented_by(sigma1) and c2.implemented_by(sigma2)):
            return True
        composed = ops.compose(extend_contract(c1, inc1), extend_contract(c2, inc2))
        lifted1 = extend_assertion(sigma1, inc1)
        lifted2 = extend_assertion(sigma2, inc2)
        combined = lifted1 | lifted2 if union else lifted1 & lifted2
        return composed.implemented_by(combined)

    return prop


def _exhaustive_inclusion_pairs(config: OracleConfig) -> list[tuple[Inclusion, Inclusion]]:
    x, y, xy = VarSet.of("x"), VarSet.of("y"), VarSet.of("x", "y")
    pairs = [(Inclusion(x, x), Inclusion(x, x))]
    if state_space_size(BOOL, xy) <= config.exhaustive_cap:
        pairs.append((Inclusion(x, xy), Inclusion(y, xy)))
    return pairs


def _cases_extended_compose(config: OracleConfig) -> Iterator[tuple]:
    for inc1, inc2 in _exhaustive_inclusion_pairs(config):
        contracts1 = _all_contracts(inc1.small)
        contracts2 = _all_contracts(inc2.small)
        sigmas1 = _all_assertions(inc1.small)
        sigmas2 = _all_assertions(inc2.small)
        for c1 in contracts1:
            for c2 in contracts2:
                for sigma1 in sigmas1:
                    for sigma2 in sigmas2:
                        yield (inc1, inc2, c1, c2, sigma1, sigma2)


def _sample_extended_compose(rng: random.Random, config: OracleConfig) -> tuple:
    theory = random_theory(rng)
    target = random_varset(rng, theory, config.randomized_cap)
    small1 = VarSet(tuple(v for v in target.vars if rng.random() < 0.7))
    small2 = VarSet(tuple(v for v in target.vars if rng.random() < 0.7))
    inc1, inc2 = Inclusion(small1, target), Inclusion(small2, target)
    c1 = random_contract(rng, theory, small1)
    c2 = random_contract(rng, theory, small2)
    sigma1 = _random_subset(rng, c1.max_implementation())
    sigma2 = _random_subset(rng, c2.max_implementation())
    return (inc1, inc2, c1, c2, sigma1, sigma2)


def _ser_extended_compose(inc1, inc2, c1, c2, sigma1, sigma2) -> dict:
    return {
        "theory": _theory_to_json(c1.theory),
        "d1": list(inc1.small.vars),
        "d2": list(inc2.small.vars),
        "target": list(inc1.large.vars),
        "c1": _contract_to_json(c1),
        "c2": _contract_to_json(c2),
        "sigma1": _assertion_to_json(sigma1),
        "sigma2": _assertion_to_json(sigma2),
    }


def _de_extended_compose(data: dict) -> tuple:
    theory = _theory_from_json(data["theory"])
    d1, d2 = VarSet(tuple(data["d1"])), VarSet(tuple(data["d2"]))
    target = VarSet(tuple(data["target"]))
    inc1, inc2 = Inclusion(d1, target), Inclusion(d2, target)
    return (
        inc1,
        inc2,
        _contract_from_json(data["c1"], theory, d1),
        _contract_from_json(data["c2"], theory, d2),
        _assertion_from_json(data["sigma1"], theory, d1),
        _assertion_from_json(data["sigma2"], theory, d2),
    )


# adjunctions: exists-projection is left adjoint to extension, which is
# left adjoint to forall-projection


def _prop_adjunction_exists(
    ops: AlgebraOps, inc: Inclusion, a_small: Assertion, a_large: Assertion
) -> bool:
    return (project_assertion_exists(a_large, inc) <= a_small) == (
        a_large <= extend_assertion(a_small, inc)
    )


def _prop_adjunction_forall(
    ops: AlgebraOps, inc: Inclusion, a_small: Assertion, a_large: Assertion
) -> bool:
    return (extend_assertion(a_small, inc) <= a_large) == (
        a_small <= project_assertion_forall(a_large, inc)
    )


def _exhaustive_inclusions(config: OracleConfig) -> list[Inclusion]:
    x, y, xy = VarSet.of("x"), VarSet.of("y"), VarSet.of("x", "y")
    inclusions = [Inclusion(VarSet(()), x), Inclusion(x, x)]
    if state_space_size(BOOL, xy) <= config.exhaustive_cap:
        inclusions.append(Inclusion(y, xy))
    return inclusions


def _cases_adjunction(config: OracleConfig) -> Iterator[tuple]:
    for inc in _exhaustive_inclusions(config):
        for a_small in _all_assertions(inc.small):
            for a_large in _all_assertions(inc.large):
                yield (inc, a_small, a_large)


def _sample_adjunction(rng: random.Random, config: OracleConfig) -> tuple:
    theory = random_theory(rng)
    inc = random_inclusion(rng, theory, config.randomized_cap)
    return (
        inc,
        random_assertion(rng, theory, inc.small),
        random_assertion(rng, theory, inc.large),
    )


def _ser_adjunction(inc: Inclusion, a_small: Assertion, a_large: Assertion) -> dict:
    return {
        "theory": _theory_to_json(a_small.theory),
        "small": list(inc.small.vars),
        "large": list(inc.large.vars),
        "a_small": _assertion_to_json(a_small),
        "a_large": _assertion_to_json(a_large),
    }


def _de_adjunction(data: dict) -> tuple:
    theory = _theory_from_json(data["theory"])
    small, large = VarSet(tuple(data["small"])), VarSet(tuple(data["large"]))
    inc = Inclusion(small, large)
    return (
        inc,
        _assertion_from_json(data["a_small"], theory, small),
        _assertion_from_json(data["a_large"], theory, large),
    )


# formula-level theorems: the syntactic operators agree with the
# set-level ones through the denotation


def _prop_refinesF(ops: AlgebraOps, cf1: FormulaContract, cf2: FormulaContract) -> bool:
    return cf1.refines(cf2) == ops.refines(cf1.to_contract(), cf2.to_contract())


def _prop_composeF(ops: AlgebraOps, cf1: FormulaContract, cf2: FormulaContract) -> bool:
    syntactic = cf1.compose(cf2).to_contract()
    return ops.equivalent(syntactic, ops.compose(cf1.to_contract(), cf2.to_contract()))


def _prop_glbF(ops: AlgebraOps, cf1: FormulaContract, cf2: FormulaContract) -> bool:
    syntactic = cf1.conjoin(cf2).to_contract()
    return ops.equivalent(syntactic, ops.conjoin(cf1.to_contract(), cf2.to_contract()))


def _cases_formula_pairs(config: OracleConfig) -> Iterator[tuple]:
    # representatives of every denotation class: the synthesized normal
    # form of each assertion (formula operators factor through denotations)
    for varset in _boolean_spaces(config, 2):
        reps = [
            FormulaContract(BOOL, varset, assertion_to_formula(a), assertion_to_formula(g))
            for a in _all_assertions(varset)
            for g in _all_assertions(varset)
        ]
        for cf1 in reps:
            for cf2 in reps:
                yield (cf1, cf2)


def _sample_formula_pair(rng: random.Random, config: OracleConfig) -> tuple:
    theory, varset = _sample_space(rng, config)
    if not len(varset):
        varset = VarSet.of("x")
    contracts = tuple(
        FormulaContract(
            theory,
            varset,
            _random_formula(rng, theory, varset, 3),
            _random_formula(rng, theory, varset, 3),
        )
        for _ in range(2)
    )
    return contracts


def _ser_formula_pair(cf1: FormulaContract, cf2: FormulaContract) -> dict:
    return _space_to_json(cf1.theory, cf1.varset) | {
        "cf1": {"A": format_formula(cf1.A), "G": format_formula(cf1.G)},
        "cf2": {"A": format_formula(cf2.A), "G": format_formula(cf2.G)},
    }


def _de_formula_pair(data: dict) -> tuple:
    theory, varset = _space_from_json(data)

    def decode(part: dict) -> FormulaContract:
        return FormulaContract(
            theory,
            varset,
            parse_formula(part["A"], theory, varset),
            parse_formula(part["G"], theory, varset),
        )

    return (decode(data["cf1"]), decode(data["cf2"]))


_REGISTRY: dict[str, _Theorem] = {
    t.name: t
    for t in [
        _Theorem(
            "saturate_sound",
            _prop_saturate_sound,
            _cases_saturate_sound,
            _sample_saturate_sound,
            _ser_saturate_sound,
            _de_saturate_sound,
        ),
        _Theorem(
            "refines_correct",
            _prop_refines_correct,
            _cases_contract_pairs(),
            _sample_refining_pair,
            _ser_contract_pair,
            _de_contract_pair,
        ),
        _Theorem(
            "glb_correct",
            _prop_glb_correct,
            _cases_contract_triples(2),
            _sample_glb,
            _ser_contract_triple,
            _de_contract_triple,
        ),
        _Theorem(
            "compose_correct",
            _prop_compose_correct,
            _cases_compose_correct,
            _sample_compose_correct,
            _ser_compose_correct,
            _de_compose_correct,
        ),
        _Theorem(
            "compose_lowest",
            _prop_compose_lowest,
            _cases_contract_triples(2),
            _sample_compose_lowest,
            _ser_contract_triple,
            _de_contract_triple,
        ),
        _Theorem(
            "extended_compose_correct_union",
            _prop_extended_compose(union=True),
            _cases_extended_compose,
            _sample_extended_compose,
            _ser_extended_compose,
            _de_extended_compose,
        ),
        _Theorem(
            "extended_compose_correct_intersection",
            _prop_extended_compose(union=False),
            _cases_extended_compose,
            _sample_extended_compose,
            _ser_extended_compose,
            _de_extended_compose,
        ),
        _Theorem(
            "adjunction_exists",
            _prop_adjunction_exists,
            _cases_adjunction,
            _sample_adjunction,
            _ser_adjunction,
            _de_adjunction,
        ),
        _Theorem(
            "adjunction_forall",
            _prop_adjunction_forall,
            _cases_adjunction,
            _sample_adjunction,
            _ser_adjunction,
            _de_adjunction,
        ),
        _Theorem(
            "refinesF_correct",
            _prop_refinesF,
            _cases_formula_pairs,
            _sample_formula_pair,
            _ser_formula_pair,
            _de_formula_pair,
        ),
        _Theorem(
            "composeF_correct",
            _prop_composeF,
            _cases_formula_pairs,
            _sample_formula_pair,
            _ser_formula_pair,
            _de_formula_pair,
        ),
        _Theorem(
            "glbF_correct",
            _prop_glbF,
            _cases_formula_pairs,
            _sample_formula_pair,
            _ser_formula_pair,
            _de_formula_pair,
        ),
        _Theorem(
            "refinement_order_laws",
            _prop_order_laws,
            _cases_contract_triples(2),
            _sample_contract_chain,
            _ser_contract_triple,
            _de_contract_triple,
        ),
        _Theorem(
            "composition_commutes",
            _prop_composition_commutes,
            _cases_contract_pairs(),
            _sample_contract_pair,
            _ser_contract_pair,
            _de_contract_pair,
        ),
        _Theorem(
            "saturation_idempotent",
            _prop_saturation_idempotent,
            _cases_contracts,
            _sample_contract,
            _ser_contract,
            _de_contract,
        ),
    ]
}

THEOREM_NAMES: tuple[str, ...] = tuple(_REGISTRY)

#: Theorems checked for the record but not required to hold; the union
#: variant of alphabet-equalizing composition genuinely fails.
INFORMATIONAL_THEOREMS: frozenset[str] = frozenset({"extended_compose_correct_union"})


# -- checking --------------------------------------------------------------------------


def _trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def check_theorem(
    name: str, config: OracleConfig, ops: AlgebraOps = DEFAULT_OPS
) -> CheckReport:
    """Check one named theorem and report the outcome.

    With ``trials == 0`` the check is exhaustive over every instance
    within the configured state-space cap (some theorems confine
    themselves further, see the registry); otherwise it runs seeded
    randomized trials. The sweep stops at the first counterexample.
    """
    try:
        theorem = _REGISTRY[name]
    except KeyError:
        known = ", ".join(THEOREM_NAMES)
        raise KeyError(f"unknown theorem {name!r} (known: {known})") from None

    if config.trials == 0:
        tier = "exhaustive"
        checked = 0
        counterexample = None
        for objs in theorem.cases(config):
            checked += 1
            if not theorem.prop(ops, *objs):
                counterexample = theorem.serialize(*objs)
                break
    else:
        tier = "randomized"
        checked = 0
        counterexample = None
        for index in range(config.trials):
            rng = _trial_rng(config.seed, index)
            objs = theorem.sample(rng, config)
            checked += 1
            if not theorem.prop(ops, *objs):
                counterexample = theorem.serialize(*objs)
                break

    verdict = "pass" if counterexample is None else "fail"
    return CheckReport(name, tier, checked, verdict, counterexample)


def run_all_checks(
    config: OracleConfig,
    ops: AlgebraOps = DEFAULT_OPS,
    names: Iterable[str] | None = None,
) -> list[CheckReport]:
    """Check every registered theorem (or a selection) in registry order."""
    selected = THEOREM_NAMES if names is None else tuple(names)
    return [check_theorem(name, config, ops) for name in selected]


def replay_counterexample(report: CheckReport, ops: AlgebraOps = DEFAULT_OPS) -> bool:
    """Re-evaluate a reported counterexample; a reproduced failure
    returns False (the property still does not hold)."""
    if report.counterexample is None:
        raise ValueError(f"report for {report.theorem!r} has no counterexample")
    theorem = _REGISTRY[report.theorem]
    objs = theorem.deserialize(report.counterexample)
    return theorem.prop(ops, *objs)


# -- rendering ---------------------------------------------------------------------------


def reports_to_json(reports: list[CheckReport]) -> str:
    """Deterministic JSON, one record per theorem."""
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True)


def reports_to_table(reports: list[CheckReport]) -> str:
    """Fixed-width text table, one line per theorem."""
    name_width = max(len(r.theorem) for r in reports)
    lines = [f"{'theorem':<{name_width}}  {'tier':<10}  {'instances':>9}  verdict"]
    for r in reports:
        lines.append(
            f"{r.theorem:<{name_width}}  {r.tier:<10}  {r.instances:>9}  {r.verdict}"
        )
    return "\n".join(lines)
