"""Execution engine: environments, goals, tactic rules, command effects.

exec_vernac is a pure function of (env, ps, v): identical inputs produce
identical outputs, which is what lets the document layer replay and snapshot
states freely. Environments are treated as immutable; every change builds a
new one (copy-on-write, sharing what did not change).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Optional

from .prop import FALSE, TRUE, And, Imp, Or, Prop, pretty
from .vernac import (
    Apply, Assumption, Check, Contradiction, Destruct, Exact, Exfalso,
    Intro, Left, Lemma, Parameter, ProofMarker, Qed, RequireImport, Right,
    Split, Tactic, TacticCmd, Vernac,
)

__all__ = [
    "OPTION_DEFAULTS", "default_options", "option_kind",
    "ProofEnv", "Goal", "ProofState",
    "ExecError", "TacticError",
    "fresh_name", "apply_tactic", "exec_vernac",
    "GOAL_SEPARATOR", "pretty_goal", "pretty_proof_state",
]

# The exhaustive option registry: path -> (wire kind, default).
OPTION_DEFAULTS: dict[tuple[str, ...], tuple[str, object]] = {
    ("Printing", "Compact"): ("Bool", False),
    ("Silent",): ("Bool", False),
    ("Proof", "StepLimit"): ("Int", 1000),
}


def default_options() -> dict[tuple[str, ...], object]:
    return {path: default for path, (_kind, default) in OPTION_DEFAULTS.items()}


def option_kind(path: tuple[str, ...]) -> Optional[str]:
    spec = OPTION_DEFAULTS.get(tuple(path))
    return spec[0] if spec else None


@dataclass(frozen=True)
class ProofEnv:
    """Global proof environment: named statements plus the option table."""

    lemmas: dict[str, Prop] = field(default_factory=dict)
    options: dict[tuple[str, ...], object] = field(default_factory=default_options)
    required: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Goal:
    hyps: tuple[tuple[str, Prop], ...]
    concl: Prop


@dataclass(frozen=True)
class ProofState:
    lemma_name: str
    lemma_statement: Prop
    goals: tuple[Goal, ...]


class ExecError(Exception):
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class TacticError(ExecError):
    pass


def fresh_name(taken: set[str]) -> str:
    """First of H, H0, H1, ... not already taken."""
    if "H" not in taken:
        return "H"
    i = 0
    while f"H{i}" in taken:
        i += 1
    return f"H{i}"


def apply_tactic(
    goal: Goal,
    rest: tuple[Goal, ...],
    tactic: Tactic,
    lemmas: Optional[Mapping[str, Prop]] = None,
) -> tuple[Goal, ...]:
    """Apply one tactic to the focused goal.

    Returns the full new goal list: replacement goals first, then ``rest``
    untouched. ``lemmas`` is the fallback namespace for exact/apply.
    """
    new = _refine(goal, tactic, lemmas or {})
    return tuple(new) + tuple(rest)


def _lookup(goal: Goal, name: str, lemmas: Mapping[str, Prop]) -> Optional[Prop]:
    for n, stmt in goal.hyps:
        if n == name:
            return stmt
    return lemmas.get(name)


def _refine(goal: Goal, t: Tactic, lemmas: Mapping[str, Prop]) -> list[Goal]:
    if isinstance(t, Intro):
        c = goal.concl
        if not isinstance(c, Imp):
            raise TacticError("intro expects an implication")
        taken = {n for n, _ in goal.hyps}
        name = t.name or fresh_name(taken)
        if name in taken:
            raise TacticError(f"{name} already used")
        return [Goal(goal.hyps + ((name, c.left),), c.right)]

    if isinstance(t, Exact):
        hyp = dict(goal.hyps).get(t.name)
        if hyp is not None:
            if hyp == goal.concl:
                return []
            raise TacticError(
                f"{t.name} : {pretty(hyp)} does not match the goal {pretty(goal.concl)}"
            )
        if t.name == "I":
            if goal.concl == TRUE:
                return []
            raise TacticError(f"I proves True, not {pretty(goal.concl)}")
        lem = lemmas.get(t.name)
        if lem is not None:
            if lem == goal.concl:
                return []
            raise TacticError(
                f"{t.name} : {pretty(lem)} does not match the goal {pretty(goal.concl)}"
            )
        raise TacticError(f"No such hypothesis or lemma: {t.name}")

    if isinstance(t, Assumption):
        for _n, stmt in goal.hyps:
            if stmt == goal.concl:
                return []
        raise TacticError("no matching assumption")

    if isinstance(t, Split):
        c = goal.concl
        if not isinstance(c, And):
            raise TacticError("split expects a conjunction")
        return [Goal(goal.hyps, c.left), Goal(goal.hyps, c.right)]

    if isinstance(t, (Left, Right)):
        c = goal.concl
        word = "left" if isinstance(t, Left) else "right"
        if not isinstance(c, Or):
            raise TacticError(f"{word} expects a disjunction")
        return [Goal(goal.hyps, c.left if isinstance(t, Left) else c.right)]

    if isinstance(t, Apply):
        stmt = _lookup(goal, t.name, lemmas)
        if stmt is None:
            raise TacticError(f"No such hypothesis or lemma: {t.name}")
        premises: list[Prop] = []
        cur = stmt
        while True:
            if cur == goal.concl:
                return [Goal(goal.hyps, p) for p in premises]
            if isinstance(cur, Imp):
                premises.append(cur.left)
                cur = cur.right
            else:
                raise TacticError("no matching premise chain for apply")

    if isinstance(t, Destruct):
        idx = next((i for i, (n, _) in enumerate(goal.hyps) if n == t.name), None)
        if idx is None:
            raise TacticError(f"No such hypothesis: {t.name}")
        stmt = goal.hyps[idx][1]
        before, after = goal.hyps[:idx], goal.hyps[idx + 1:]
        taken = {n for n, _ in before} | {n for n, _ in after}
        if isinstance(stmt, And):
            n1 = fresh_name(taken)
            n2 = fresh_name(taken | {n1})
            hyps = before + ((n1, stmt.left), (n2, stmt.right)) + after
            return [Goal(hyps, goal.concl)]
        if isinstance(stmt, Or):
            n1 = fresh_name(taken)
            return [
                Goal(before + ((n1, stmt.left),) + after, goal.concl),
                Goal(before + ((n1, stmt.right),) + after, goal.concl),
            ]
        raise TacticError("destruct expects a conjunction or disjunction")

    if isinstance(t, Exfalso):
        return [Goal(goal.hyps, FALSE)]

    if isinstance(t, Contradiction):
        for _n, stmt in goal.hyps:
            if stmt == FALSE:
                return []
        raise TacticError("no False hypothesis")

    raise TacticError(f"unsupported tactic: {t!r}")


Resolver = Callable[[tuple[str, ...]], Optional[Mapping[str, Prop]]]


def exec_vernac(
    env: ProofEnv,
    ps: Optional[ProofState],
    v: Vernac,
    resolve: Optional[Resolver] = None,
) -> tuple[ProofEnv, Optional[ProofState], list[str]]:
    """Execute one command; returns (env, proof state, display messages).

    ``resolve`` maps a logical module path to its lemma map (or None when
    unknown); it backs Require Import and is the only outward dependency.
    """
    if isinstance(v, Lemma):
        if ps is not None:
            raise ExecError("already in a proof")
        if v.name in env.lemmas:
            raise ExecError(f"{v.name} already defined")
        return env, ProofState(v.name, v.statement, (Goal((), v.statement),)), []

    if isinstance(v, Parameter):
        if ps is not None:
            raise ExecError("already in a proof")
        if v.name in env.lemmas:
            raise ExecError(f"{v.name} already defined")
        lemmas = dict(env.lemmas)
        lemmas[v.name] = v.statement
        return replace(env, lemmas=lemmas), None, []

    if isinstance(v, ProofMarker):
        if ps is None:
            raise ExecError("Not in proof mode")
        return env, ps, []

    if isinstance(v, Qed):
        if ps is None:
            raise ExecError("Not in proof mode")
        if ps.goals:
            raise ExecError("Proof not finished")
        if ps.lemma_name in env.lemmas:
            raise ExecError(f"{ps.lemma_name} already defined")
        lemmas = dict(env.lemmas)
        lemmas[ps.lemma_name] = ps.lemma_statement
        return replace(env, lemmas=lemmas), None, []

    if isinstance(v, Check):
        stmt = env.lemmas.get(v.name)
        if stmt is None:
            raise ExecError(f"No such lemma: {v.name}")
        return env, ps, [f"{v.name} : {pretty(stmt)}"]

    if isinstance(v, RequireImport):
        dotted = ".".join(v.path)
        if dotted in env.required:
            return env, ps, []
        mod = resolve(v.path) if resolve is not None else None
        if mod is None:
            raise ExecError(f"cannot find module {dotted}")
        lemmas = dict(env.lemmas)
        for name, stmt in mod.items():
            if name in lemmas:
                raise ExecError(f"{name} already defined")
            lemmas[name] = stmt
        return replace(env, lemmas=lemmas, required=env.required | {dotted}), ps, []

    if isinstance(v, TacticCmd):
        if ps is None:
            raise ExecError("Not in proof mode")
        if not ps.goals:
            raise ExecError("Not in proof mode: no goals remaining")
        limit = env.options.get(("Proof", "StepLimit"), 1000)
        if not isinstance(limit, int) or limit < 1:
            raise ExecError("tactic step limit exceeded")
        goals = apply_tactic(ps.goals[0], ps.goals[1:], v.tactic, env.lemmas)
        return env, replace(ps, goals=tuple(goals)), []

    raise ExecError(f"unsupported command: {v!r}")


GOAL_SEPARATOR = "============"


def pretty_goal(goal: Goal, compact: bool = False) -> str:
    """Render one goal: hypothesis lines over a separator, or one line."""
    if compact:
        hyps = ", ".join(f"{n}:{pretty(s)}" for n, s in goal.hyps)
        concl = pretty(goal.concl)
        return f"{hyps} ⊢ {concl}" if hyps else f"⊢ {concl}"
    lines = [f"{n} : {pretty(s)}" for n, s in goal.hyps]
    lines.append(GOAL_SEPARATOR)
    lines.append(pretty(goal.concl))
    return "\n".join(lines)


def pretty_proof_state(ps: Optional[ProofState], compact: bool = False) -> str:
    """Render a whole proof state; "" outside proof mode."""
    if ps is None:
        return ""
    goals = ps.goals
    if not goals:
        return "No more goals."
    total = len(goals)
    if compact:
        if total == 1:
            return pretty_goal(goals[0], compact=True)
        return "; ".join(
            f"{i}/{total}: {pretty_goal(g, compact=True)}"
            for i, g in enumerate(goals, start=1)
        )
    parts = [pretty_goal(goals[0])]
    for i, g in enumerate(goals[1:], start=2):
        parts.append(f"goal {i}/{total}: {pretty_goal(g, compact=True)}")
    return "\n\n".join(parts)
