"""Language-agnostic engine: derivation enumeration, specification-aware
inference, and the validity / verification checkers.

A language plugs in by enumerating, for a configuration, the semantic rule
instances whose conclusion starts at that configuration.  Everything here is
pure: identical inputs and budgets give identical outputs, including the
order of results and counterexamples.
"""

from __future__ import annotations

import hashlib
import random
import sys
from dataclasses import dataclass
from typing import Any, Callable, Optional

# Derivation trees are walked recursively; deep (but bounded) derivations
# such as long loop runs need more headroom than the default stack limit.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))

Config = Any
ResultConfig = Any


# ---------------------------------------------------------------------------
# Rule applications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Conclude:
    """A rule instance with no remaining premises; carries the conclusion."""

    result: ResultConfig


@dataclass(frozen=True)
class Need:
    """A rule instance waiting on one premise.

    `rest` consumes the premise's result and yields the continuation for the
    remaining premises, or None when a side condition on that premise result
    rules the instance out (e.g. an if-rule expecting the guard premise to
    evaluate to true).
    """

    premise: Config
    rest: Callable[[ResultConfig], Optional["RuleApplication"]]


RuleApplication = Conclude | Need


@dataclass(frozen=True)
class LanguagePlugin:
    """A language: rule enumeration plus concrete-syntax adapters.

    `rules(gamma)` returns every rule instance whose conclusion configuration
    is `gamma`, in a fixed order; an empty list means `gamma` is stuck.
    """

    name: str
    rules: Callable[[Config], list]
    parse_config: Callable[[str], Config]
    parse_result: Callable[[str], ResultConfig]
    pretty: Callable[[Any], str]


# ---------------------------------------------------------------------------
# Specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampleBudget:
    max_depth: int = 64
    max_samples: int = 8
    seed: int = 0

    def __post_init__(self):
        if self.max_depth < 0 or self.max_samples < 0 or self.seed < 0:
            raise ValueError("budget fields must be non-negative")


class _Universe:
    """The distinguished 'no information' set: contains every result."""

    describe = "any result configuration"

    def contains(self, rho: ResultConfig) -> bool:
        return True

    def __repr__(self):
        return "Universe"


UNIVERSE = _Universe()


@dataclass
class Constrained:
    """A proper result set: membership predicate plus a sampler.

    Every element returned by `sample` must satisfy `contains`; the engine
    re-checks and drops offenders so inferred results are never spurious.
    """

    contains: Callable[[ResultConfig], bool]
    sample: Callable[[SampleBudget], list]
    describe: str


SpecSet = Any  # _Universe | Constrained


@dataclass
class Specification:
    """Parameterized map from configurations to result sets.

    `param_domain` is the finite domain of the global parameter; checks
    quantify over it.  Configurations the spec says nothing about map to
    UNIVERSE.
    """

    param_domain: tuple
    at: Callable[[Any, Config], SpecSet]


def trivial_spec() -> Specification:
    """The everywhere-Universe specification."""
    return Specification((None,), lambda param, gamma: UNIVERSE)


def seeded_rng(seed: int, *key: object) -> random.Random:
    """Deterministic RNG derived from a seed and a structural key.

    Avoids Python's salted str hash so runs are reproducible across
    processes.
    """
    digest = hashlib.sha256(repr((seed,) + key).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


# ---------------------------------------------------------------------------
# Derivation enumeration
# ---------------------------------------------------------------------------

_DERIVE_CACHE: dict[tuple, tuple[tuple, bool]] = {}


def derive_all(plugin: LanguagePlugin, gamma: Config, budget: SampleBudget,
               visit: Callable[[Config], None] | None = None):
    """All results derivable from `gamma` within the depth budget.

    Returns (results, exhausted).  Depth counts nested rule applications
    (tree height).  `exhausted` is set iff some branch was cut by the depth
    bound, so an empty result with exhausted=False certifies that `gamma`
    has no derivation at all.  `visit`, when given, is called on every
    configuration the enumeration touches (used for corpus harvesting).
    """
    return _derive(plugin, gamma, budget.max_depth, visit)


def _derive(plugin, gamma, depth, visit):
    key = (plugin.name, gamma, depth)
    if visit is None:
        hit = _DERIVE_CACHE.get(key)
        if hit is not None:
            return hit
    else:
        visit(gamma)
    apps = plugin.rules(gamma)
    if depth <= 0:
        out = ((), bool(apps))
        if visit is None:
            _DERIVE_CACHE[key] = out
        return out

    results: list = []
    seen: set = set()
    exhausted = False

    def walk(app):
        nonlocal exhausted
        if isinstance(app, Conclude):
            if app.result not in seen:
                seen.add(app.result)
                results.append(app.result)
            return
        sub, ex = _derive(plugin, app.premise, depth - 1, visit)
        exhausted = exhausted or ex
        for r in sub:
            cont = app.rest(r)
            if cont is not None:
                walk(cont)

    for app in apps:
        walk(app)
    out = (tuple(results), exhausted)
    if visit is None:
        _DERIVE_CACHE[key] = out
    return out


def derive_one(plugin: LanguagePlugin, gamma: Config,
               budget: SampleBudget) -> Optional[ResultConfig]:
    """First derivable result, or None (stuck or budget cut).

    Fast path for deterministic languages; any value returned is a member of
    derive_all's set for the same budget.
    """

    def go(g, depth):
        if depth <= 0:
            return None
        for app in plugin.rules(g):
            r = walk(app, depth)
            if r is not None:
                return r
        return None

    def walk(app, depth):
        if isinstance(app, Conclude):
            return app.result
        sub = go(app.premise, depth - 1)
        if sub is None:
            return None
        cont = app.rest(sub)
        if cont is None:
            return None
        return walk(cont, depth)

    return go(gamma, budget.max_depth)


# ---------------------------------------------------------------------------
# Specification-aware inference
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PremiseStep:
    """One premise of an applied rule instance, and how its result arose."""

    config: Config
    result: ResultConfig
    via: str  # "inferred" | "sampled"
    sub: Optional["InferTrace"]


@dataclass(frozen=True)
class InferTrace:
    """A completed rule instance: enough to replay the inferred result."""

    config: Config
    result: ResultConfig
    rule_index: int
    premises: tuple[PremiseStep, ...]


def infer_results(plugin, spec, param, gamma, budget, extra_sampler=None):
    """Results inferable from `gamma` with the specification's help.

    Symbolic execution: premises whose spec entry is Universe are inferred
    recursively; premises with a constrained entry draw candidate results
    from the entry's sampler instead (recursion cut off).  Sampled
    candidates failing the membership predicate are dropped, so every
    returned result genuinely satisfies the inference relation.

    `extra_sampler(config)` optionally contributes additional candidates at
    constrained premises (still membership-filtered); the soundness
    cross-check uses it to feed actual derived results back in.

    Returns (results, exhausted).
    """
    traced, exhausted = infer_results_traced(
        plugin, spec, param, gamma, budget, extra_sampler)
    return tuple(traced), exhausted


def infer_results_traced(plugin, spec, param, gamma, budget,
                         extra_sampler=None):
    """Like infer_results but returns {result: InferTrace} (first trace wins)."""
    return _infer(plugin, spec, param, gamma, budget, budget.max_depth,
                  extra_sampler)


def _infer(plugin, spec, param, gamma, budget, depth, extra):
    apps = plugin.rules(gamma)
    if depth <= 0:
        return {}, bool(apps)

    out: dict = {}
    exhausted = False

    def candidates(premise):
        nonlocal exhausted
        sset = spec.at(param, premise)
        if isinstance(sset, Constrained):
            cands, seen = [], set()
            for c in sset.sample(budget):
                if c not in seen and sset.contains(c):
                    seen.add(c)
                    cands.append((c, "sampled", None))
            if extra is not None:
                for c in extra(premise):
                    if c not in seen and sset.contains(c):
                        seen.add(c)
                        cands.append((c, "sampled", None))
            return cands
        sub, ex = _infer(plugin, spec, param, premise, budget, depth - 1, extra)
        exhausted = exhausted or ex
        return [(r, "inferred", t) for r, t in sub.items()]

    def walk(app, steps, idx):
        if isinstance(app, Conclude):
            if app.result not in out:
                out[app.result] = InferTrace(gamma, app.result, idx,
                                             tuple(steps))
            return
        for r, via, sub in candidates(app.premise):
            cont = app.rest(r)
            if cont is not None:
                walk(cont, steps + [PremiseStep(app.premise, r, via, sub)],
                     idx)

    for i, app in enumerate(apps):
        walk(app, [], i)
    return out, exhausted


def replay_trace(plugin: LanguagePlugin,
                 trace: InferTrace) -> Optional[ResultConfig]:
    """Re-run a trace through the plugin's rules; None if it does not replay.

    Sampled premise results are taken at face value; inferred ones are
    replayed recursively.
    """
    apps = plugin.rules(trace.config)
    if trace.rule_index >= len(apps):
        return None
    app = apps[trace.rule_index]
    for step in trace.premises:
        if not isinstance(app, Need) or app.premise != step.config:
            return None
        if step.via == "inferred":
            if step.sub is None or replay_trace(plugin, step.sub) != step.result:
                return None
        app = app.rest(step.result)
        if app is None:
            return None
    if not isinstance(app, Conclude):
        return None
    return app.result


# ---------------------------------------------------------------------------
# Check reports
# ---------------------------------------------------------------------------

PASS = "pass"
FAIL = "fail"
BUDGET_EXHAUSTED = "budget_exhausted"
PRECONDITION_FAILED = "precondition_failed"


@dataclass(frozen=True)
class Counterexample:
    param: Any
    config: Config
    result: ResultConfig
    expected: str
    trace: Optional[InferTrace]


@dataclass
class CheckReport:
    status: str
    counterexamples: list
    stats: dict

    def to_dict(self, plugin: LanguagePlugin) -> dict:
        return {
            "status": self.status,
            "counterexamples": [
                {
                    "param": repr(cx.param),
                    "config": plugin.pretty(cx.config),
                    "result": plugin.pretty(cx.result),
                    "expected": cx.expected,
                    "trace": _trace_dict(plugin, cx.trace),
                }
                for cx in self.counterexamples
            ],
            "stats": self.stats,
        }


def _trace_dict(plugin, trace):
    if trace is None:
        return None
    return {
        "config": plugin.pretty(trace.config),
        "result": plugin.pretty(trace.result),
        "rule_index": trace.rule_index,
        "premises": [
            {
                "config": plugin.pretty(s.config),
                "result": plugin.pretty(s.result),
                "via": s.via,
                "sub": _trace_dict(plugin, s.sub),
            }
            for s in trace.premises
        ],
    }


def _report(counterexamples, exhausted, stats) -> CheckReport:
    if counterexamples:
        status = FAIL
    elif exhausted:
        status = BUDGET_EXHAUSTED
    else:
        status = PASS
    return CheckReport(status, counterexamples, stats)


def _reachable(plugin, corpus, budget) -> list:
    """Configurations touched while deriving the corpus, in visit order."""
    visited: dict = {}
    for gamma in corpus:
        _derive(plugin, gamma, budget.max_depth,
                lambda g: visited.setdefault(g, None))
    return list(visited)


def _targets(plugin, spec, param, corpus, reachable):
    """Corpus configs plus harvested sub-configs with a constrained entry."""
    seen: set = set()
    out = []
    for gamma in list(corpus) + reachable:
        if gamma in seen:
            continue
        seen.add(gamma)
        sset = spec.at(param, gamma)
        if isinstance(sset, Constrained):
            out.append((gamma, sset))
    return out


# ---------------------------------------------------------------------------
# Checkers
# ---------------------------------------------------------------------------

def check_verif(plugin, spec, corpus, budget,
                extra_sampler=None) -> CheckReport:
    """Empirical check of the verification condition.

    For every parameter value and every constrained configuration reachable
    from the corpus, asserts that each inferred result is a member of the
    spec's set there.  A fail is a real violation (counterexamples replay);
    a pass is evidence within the budget, not proof.
    """
    corpus = list(corpus)
    reachable = _reachable(plugin, corpus, budget)
    cexs: list = []
    exhausted = False
    checked = inferred_total = 0
    for param in spec.param_domain:
        for gamma, sset in _targets(plugin, spec, param, corpus, reachable):
            traced, ex = infer_results_traced(plugin, spec, param, gamma,
                                              budget, extra_sampler)
            exhausted = exhausted or ex
            checked += 1
            inferred_total += len(traced)
            for rho, trace in traced.items():
                if not sset.contains(rho):
                    cexs.append(Counterexample(param, gamma, rho,
                                               sset.describe, trace))
    stats = {"configs_checked": checked, "results_inferred": inferred_total,
             "depth_hit": exhausted}
    return _report(cexs, exhausted, stats)


def check_valid(plugin, spec, corpus, budget) -> CheckReport:
    """Empirical check of validity: derived results are members throughout."""
    corpus = list(corpus)
    triv = trivial_spec()
    cexs: list = []
    exhausted = False
    checked = derived_total = 0
    for param in spec.param_domain:
        for gamma in corpus:
            results, ex = derive_all(plugin, gamma, budget)
            exhausted = exhausted or ex
            checked += 1
            derived_total += len(results)
            sset = spec.at(param, gamma)
            bad = [r for r in results if not sset.contains(r)]
            if bad:
                # Traces come from inference under the trivial spec, which
                # coincides with derivation.
                traced, _ = infer_results_traced(plugin, triv, None, gamma,
                                                 budget)
                for r in bad:
                    cexs.append(Counterexample(
                        param, gamma, r,
                        getattr(sset, "describe", UNIVERSE.describe),
                        traced.get(r)))
    stats = {"configs_checked": checked, "results_inferred": derived_total,
             "depth_hit": exhausted}
    return _report(cexs, exhausted, stats)


def check_soundness_crosscheck(plugin, spec, corpus, budget) -> CheckReport:
    """Self-test of the engine against the soundness metatheory.

    Requires check_verif to pass on the corpus first.  Then (a) re-checks
    validity, and (b) checks instance-wise that every derived (config,
    result) pair is reproduced by inference when the sampler is extended
    with the actual derived intermediate results.  A failure here points at
    an engine bug, not a spec bug.
    """
    pre = check_verif(plugin, spec, corpus, budget)
    if pre.status == FAIL:
        return CheckReport(PRECONDITION_FAILED, pre.counterexamples, pre.stats)

    corpus = list(corpus)
    reachable = _reachable(plugin, corpus, budget)
    cexs: list = []
    exhausted = False
    checked = 0

    valid_rep = check_valid(plugin, spec, corpus, budget)
    cexs.extend(valid_rep.counterexamples)
    exhausted = exhausted or valid_rep.stats["depth_hit"]

    def extra(g):
        return derive_all(plugin, g, budget)[0]

    for param in spec.param_domain:
        targets = [g for g, _ in _targets(plugin, spec, param, corpus,
                                          reachable)]
        seen = set(targets)
        targets = targets + [g for g in corpus if g not in seen]
        for gamma in targets:
            derived, ex = derive_all(plugin, gamma, budget)
            exhausted = exhausted or ex
            checked += 1
            inferred, _ = infer_results(plugin, spec, param, gamma, budget,
                                        extra_sampler=extra)
            missing = [r for r in derived if r not in set(inferred)]
            for r in missing:
                cexs.append(Counterexample(
                    param, gamma, r,
                    "reproducible by inference with derivation-informed "
                    "sampling", None))
    stats = {"configs_checked": checked,
             "results_inferred": valid_rep.stats["results_inferred"],
             "depth_hit": exhausted}
    return _report(cexs, exhausted, stats)


def star_spec(plugin, budget, param_domain=(None,)) -> Specification:
    """The most informative specification, bounded by the budget.

    Maps every configuration to the set of its derivable results at the
    budget's depth.  The parameter is ignored; `param_domain` exists so the
    result can be compared against parameterized specs.
    """

    def at(param, gamma):
        results, _ = derive_all(plugin, gamma, budget)
        members = frozenset(results)
        return Constrained(
            contains=lambda r, _m=members: r in _m,
            sample=lambda b, _r=results: list(_r),
            describe="all derivable results (depth <= %d)" % budget.max_depth,
        )

    return Specification(tuple(param_domain), at)


def spec_refines(s1: Specification, s2: Specification, corpus,
                 budget) -> CheckReport:
    """Sampled check that s2 is at least as informative as s1.

    Samples s2's sets over the corpus and asserts containment in s1's sets.
    Configurations where s2 is Universe cannot be sampled and are skipped.
    """
    if tuple(s1.param_domain) != tuple(s2.param_domain):
        raise ValueError("specifications must share a parameter domain")
    cexs: list = []
    checked = sampled_total = 0
    for param in s1.param_domain:
        for gamma in corpus:
            set2 = s2.at(param, gamma)
            if not isinstance(set2, Constrained):
                continue
            set1 = s1.at(param, gamma)
            checked += 1
            for c in set2.sample(budget):
                if not set2.contains(c):
                    continue
                sampled_total += 1
                if not set1.contains(c):
                    cexs.append(Counterexample(
                        param, gamma, c,
                        getattr(set1, "describe", UNIVERSE.describe), None))
    stats = {"configs_checked": checked, "results_inferred": sampled_total,
             "depth_hit": False}
    return _report(cexs, False, stats)
