"""Independent reference implementations used to check the engine.

Both oracles work on plain triple sets of (Term, Term, Node) tuples with
no indexing and no cleverness, so they share nothing with the code paths
they check.
"""

from __future__ import annotations

from geofault import Query, TriplePattern, Var
from geofault.query import BindingSet

Triple = tuple


def _unify_part(part, value, env):
    if isinstance(part, Var):
        bound = env.get(part.name)
        if bound is None:
            env = dict(env)
            env[part.name] = value
            return env
        return env if bound == value else None
    return env if part == value else None


def _unify(pattern: TriplePattern, triple: Triple, env: dict):
    for part, value in zip((pattern.subject, pattern.predicate, pattern.object), triple):
        env = _unify_part(part, value, env)
        if env is None:
            return None
    return env


def _substitute(pattern: TriplePattern, env: dict) -> Triple:
    out = []
    for part in (pattern.subject, pattern.predicate, pattern.object):
        out.append(env[part.name] if isinstance(part, Var) else part)
    return tuple(out)


def naive_materialize(triples: set[Triple], rules) -> set[Triple]:
    """Apply every rule to saturation by brute force: iterate until no
    rule adds anything, re-scanning all triples each pass."""
    closed = set(triples)
    changed = True
    while changed:
        changed = False
        for rule in rules:
            envs = [{}]
            for pattern in rule.body:
                next_envs = []
                for env in envs:
                    for triple in closed:
                        extended = _unify(pattern, triple, env)
                        if extended is not None:
                            next_envs.append(extended)
                envs = next_envs
            for env in envs:
                conclusion = _substitute(rule.head, env)
                if conclusion not in closed:
                    closed.add(conclusion)
                    changed = True
    return closed


def brute_force_evaluate(triples: set[Triple], q: Query) -> set[BindingSet]:
    """Enumerate variable assignments pattern by pattern, scanning the
    whole triple set at every step."""
    answers: set[BindingSet] = set()

    def recurse(idx: int, env: dict):
        if idx == len(q.patterns):
            answers.add(BindingSet.of({v: env[v] for v in q.projection}))
            return
        for triple in triples:
            extended = _unify(q.patterns[idx], triple, env)
            if extended is not None:
                recurse(idx + 1, extended)

    recurse(0, {})
    return answers


def graph_triples(g) -> set[Triple]:
    return {a.triple for a in g.assertions()}
