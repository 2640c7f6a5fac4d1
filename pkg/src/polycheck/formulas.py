"""Core logic formulas and macro expansion.

The core syntax is truth, atoms, negation, conjunction, disjunction, the
interior modality ``box`` and binary reachability ``through``.  Disjunction
is kept as a first-class node so task counts stay comparable across
equivalent specifications.  Everything else in the surface language (user
lets and the built-in derived operators) expands to this core.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ArityMismatchError,
    RecursionDetectedError,
    RedefinedNameError,
    SpecSyntaxError,
    UnknownIdentifierError,
)
from .parser import AndE, App, Ident, Let, Load, NotE, OrE, Program, Save, StrLit


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    operand: Formula


@dataclass(frozen=True)
class Through(Formula):
    """Reachability: a path through ``via``-cells ends at a ``goal``-cell."""

    via: Formula
    goal: Formula


TOP = Top()


def children(formula: Formula) -> tuple[Formula, ...]:
    if isinstance(formula, (Top, Atom)):
        return ()
    if isinstance(formula, (Not, Box)):
        return (formula.operand,)
    if isinstance(formula, And) or isinstance(formula, Or):
        return (formula.left, formula.right)
    if isinstance(formula, Through):
        return (formula.via, formula.goal)
    raise TypeError(f"not a formula: {formula!r}")


def print_formula(formula: Formula) -> str:
    """Concrete syntax for a core formula (parses back to the same tree)."""
    return _print(formula, 0)


def _print(f: Formula, level: int) -> str:
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Atom):
        escaped = f.name.replace("\\", "\\\\").replace('"', '\\"')
        return f'ap("{escaped}")'
    if isinstance(f, Not):
        return f"!{_print(f.operand, 2)}"
    if isinstance(f, Box):
        return f"box({_print(f.operand, 0)})"
    if isinstance(f, Through):
        return f"through({_print(f.via, 0)}, {_print(f.goal, 0)})"
    if isinstance(f, And):
        text = f"{_print(f.left, 1)} & {_print(f.right, 2)}"
        return f"({text})" if level > 1 else text
    if isinstance(f, Or):
        text = f"{_print(f.left, 0)} | {_print(f.right, 1)}"
        return f"({text})" if level > 0 else text
    raise TypeError(f"not a formula: {f!r}")


def reach_or_stay(goal: Formula, via: Formula) -> Formula:
    """goal holds here, or is reachable through via-cells."""
    return Or(goal, Through(via, goal))


def surrounded(inside: Formula, border: Formula) -> Formula:
    """inside-cells that cannot be left without crossing border-cells."""
    outside = Not(Or(inside, border))
    return And(inside, Not(Or(outside, Through(Not(border), outside))))


def grow(seed: Formula, soil: Formula) -> Formula:
    """seed, extended through soil as far as soil-connectivity allows."""
    return Or(seed, And(soil, reach_or_stay(seed, soil)))


def _expand_ap(args):
    (arg,) = args
    if not isinstance(arg, StrLit):
        raise SpecSyntaxError(
            'ap takes a quoted atom name, e.g. ap("G")',
            getattr(arg, "line", 0),
            getattr(arg, "column", 0),
        )
    return Atom(arg.value)


# name -> (arity, builder over core arguments); ap is special-cased
_BUILTINS = {
    "top": (0, lambda args: TOP),
    "bot": (0, lambda args: Not(TOP)),
    "not": (1, lambda args: Not(args[0])),
    "through": (2, lambda args: Through(args[0], args[1])),
    "box": (1, lambda args: Box(args[0])),
    "diamond": (1, lambda args: Not(Box(Not(args[0])))),
    "rho": (2, lambda args: reach_or_stay(args[0], args[1])),
    "reach": (2, lambda args: Or(args[0], Through(args[1], args[0]))),
    "sur": (2, lambda args: surrounded(args[0], args[1])),
    "grow": (2, lambda args: grow(args[0], args[1])),
}


def desugar(
    expr,
    definitions: dict[str, Let],
    _params: dict[str, Formula] | None = None,
    _stack: tuple[str, ...] = (),
) -> Formula:
    """Expand a surface expression to a core formula.

    User lets expand by substitution: arguments are elaborated first, then
    bound to the parameters, so parameters shadow outer names and capture
    cannot occur.  Lets may shadow built-ins; expanding a let from inside
    itself (directly or mutually) is an error.
    """
    params = _params or {}

    if isinstance(expr, StrLit):
        raise SpecSyntaxError(
            "a string literal is not a formula", expr.line, expr.column
        )
    if isinstance(expr, NotE):
        return Not(desugar(expr.operand, definitions, params, _stack))
    if isinstance(expr, AndE):
        return And(
            desugar(expr.left, definitions, params, _stack),
            desugar(expr.right, definitions, params, _stack),
        )
    if isinstance(expr, OrE):
        return Or(
            desugar(expr.left, definitions, params, _stack),
            desugar(expr.right, definitions, params, _stack),
        )

    if isinstance(expr, Ident):
        name = expr.name
        if name in params:
            return params[name]
        if name in definitions:
            return _expand_let(definitions[name], (), params, definitions, _stack)
        if name in _BUILTINS:
            arity, build = _BUILTINS[name]
            if arity != 0:
                raise ArityMismatchError(
                    f"{name} expects {arity} argument(s), got 0"
                )
            return build(())
        raise UnknownIdentifierError(f"unknown name {name!r}")

    if isinstance(expr, App):
        name = expr.name
        if name in params:
            raise ArityMismatchError(f"parameter {name!r} cannot be applied")
        if name in definitions:
            return _expand_let(definitions[name], expr.args, params, definitions, _stack)
        if name in _BUILTINS:
            arity, build = _BUILTINS[name]
            if len(expr.args) != arity:
                raise ArityMismatchError(
                    f"{name} expects {arity} argument(s), got {len(expr.args)}"
                )
            if name == "ap":
                return _expand_ap(expr.args)
            core_args = tuple(
                desugar(a, definitions, params, _stack) for a in expr.args
            )
            return build(core_args)
        raise UnknownIdentifierError(f"unknown name {name!r}")

    raise TypeError(f"not an expression: {expr!r}")


_BUILTINS["ap"] = (1, _expand_ap)


def _expand_let(definition: Let, args, caller_params, definitions, stack) -> Formula:
    name = definition.name
    if name in stack:
        chain = " -> ".join(stack + (name,))
        raise RecursionDetectedError(f"recursive definition: {chain}")
    if len(args) != len(definition.params):
        raise ArityMismatchError(
            f"{name} expects {len(definition.params)} argument(s), got {len(args)}"
        )
    # arguments are elaborated in the caller's scope; the body then sees only
    # its own parameters plus the file's definitions
    bound = {
        p: desugar(a, definitions, caller_params, stack)
        for p, a in zip(definition.params, args)
    }
    return desugar(definition.body, definitions, bound, stack + (name,))


def elaborate(program: Program):
    """Expand a program into its model path and the labelled core formulas.

    Returns ``(model_path, [(label, formula), ...])`` in save order.  Names
    must be defined before use, let names and save labels are unique, and at
    most one load command is allowed.
    """
    definitions: dict[str, Let] = {}
    saves: list[tuple[str, Formula]] = []
    labels: set[str] = set()
    model_path: str | None = None
    for cmd in program.commands:
        if isinstance(cmd, Load):
            if model_path is not None:
                raise RedefinedNameError("more than one load command")
            model_path = cmd.path
        elif isinstance(cmd, Let):
            if cmd.name in definitions:
                raise RedefinedNameError(f"{cmd.name!r} is defined twice")
            # expand eagerly so errors (including self-recursion) surface at
            # the definition site; later lets still cannot be referenced
            definitions[cmd.name] = cmd
            probe = dict.fromkeys(cmd.params, TOP)
            desugar(cmd.body, definitions, probe)
        elif isinstance(cmd, Save):
            if cmd.label in labels:
                raise RedefinedNameError(f"label {cmd.label!r} is saved twice")
            labels.add(cmd.label)
            saves.append((cmd.label, desugar(cmd.body, definitions)))
    return model_path, saves
