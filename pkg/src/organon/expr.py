"""Expression syntax shared by comprehension, the evaluators and the script language."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class SetLit:
    """Literal set of atoms, ``{a, b}``."""
    names: Tuple[str, ...] = ()


@dataclass(frozen=True)
class App:
    fn: "Expr"
    arg: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Not:
    body: "Expr"


# A seed is None (the empty set), the string "ext", or a closed expression.
Seed = Union[None, str, "Expr"]


@dataclass(frozen=True)
class Eps:
    """Some-x binder.  ``kw`` only records whether it was written eps or exists."""
    var: str
    body: "Expr"
    seed: Seed = None
    sort: Optional[str] = None
    kw: str = "eps"


@dataclass(frozen=True)
class Alpha:
    """All-x binder (written ``all`` or ``forall``)."""
    var: str
    body: "Expr"
    sort: Optional[str] = None
    kw: str = "all"


@dataclass(frozen=True)
class Rec:
    var: str
    body: "Expr"
    seed: Seed = None


@dataclass(frozen=True)
class Comb:
    """The combinators S and K inside applicative terms."""
    name: str


Expr = Union[Var, Const, SetLit, App, And, Or, Not, Eps, Alpha, Rec, Comb]

S = Comb("S")
K = Comb("K")


def app(fn, *args):
    for a in args:
        fn = App(fn, a)
    return fn


def spine(e):
    """Split ``f a1 .. an`` into ``(f, [a1, .., an])``."""
    args = []
    while isinstance(e, App):
        args.append(e.arg)
        e = e.fn
    return e, args[::-1]


def free_vars(e) -> frozenset:
    if isinstance(e, Var):
        return frozenset([e.name])
    if isinstance(e, (Const, SetLit, Comb)):
        return frozenset()
    if isinstance(e, App):
        return free_vars(e.fn) | free_vars(e.arg)
    if isinstance(e, (And, Or)):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, Not):
        return free_vars(e.body)
    if isinstance(e, (Eps, Rec)):
        out = free_vars(e.body) - {e.var}
        if e.seed is not None and not isinstance(e.seed, str):
            out |= free_vars(e.seed)
        return out
    if isinstance(e, Alpha):
        return free_vars(e.body) - {e.var}
    raise TypeError(f"not an expression: {e!r}")


def constants(e) -> frozenset:
    if isinstance(e, Const):
        return frozenset([e.name])
    if isinstance(e, (Var, SetLit, Comb)):
        return frozenset()
    if isinstance(e, App):
        return constants(e.fn) | constants(e.arg)
    if isinstance(e, (And, Or)):
        return constants(e.left) | constants(e.right)
    if isinstance(e, Not):
        return constants(e.body)
    out = constants(e.body)
    if isinstance(e, (Eps, Rec)) and e.seed is not None and not isinstance(e.seed, str):
        out |= constants(e.seed)
    if isinstance(e, (Eps, Alpha)) and e.sort:
        out |= {e.sort}
    return out


def is_applicative(e) -> bool:
    if isinstance(e, (Var, Const, SetLit, Comb)):
        return True
    if isinstance(e, App):
        return is_applicative(e.fn) and is_applicative(e.arg)
    return False


def contains_not(e) -> bool:
    if isinstance(e, Not):
        return True
    if isinstance(e, App):
        return contains_not(e.fn) or contains_not(e.arg)
    if isinstance(e, (And, Or)):
        return contains_not(e.left) or contains_not(e.right)
    if isinstance(e, (Eps, Alpha, Rec)):
        return contains_not(e.body)
    return False


def not_wraps(e, name: str) -> bool:
    """True when some Not has the variable ``name`` free beneath it."""
    if isinstance(e, Not):
        return name in free_vars(e.body) or not_wraps(e.body, name)
    if isinstance(e, App):
        return not_wraps(e.fn, name) or not_wraps(e.arg, name)
    if isinstance(e, (And, Or)):
        return not_wraps(e.left, name) or not_wraps(e.right, name)
    if isinstance(e, (Eps, Alpha, Rec)):
        return e.var != name and not_wraps(e.body, name)
    return False


# precedence levels for printing
_BINDER, _OR, _AND, _NOT, _APP, _ATOM = range(6)


def _seed_text(seed):
    if seed is None:
        return ""
    if seed == "ext":
        return " seed ext"
    return " seed " + to_text(seed, _ATOM)


def to_text(e, prec: int = _BINDER) -> str:
    """Concrete syntax for ``e``; parses back to an equal expression."""
    if isinstance(e, (Var, Const)):
        return e.name
    if isinstance(e, Comb):
        return e.name
    if isinstance(e, SetLit):
        return "{" + ", ".join(e.names) + "}"
    if isinstance(e, App):
        s = to_text(e.fn, _APP) + " " + to_text(e.arg, _ATOM)
        return s if prec <= _APP else f"({s})"
    if isinstance(e, Not):
        s = "!" + to_text(e.body, _NOT)
        return s if prec <= _NOT else f"({s})"
    if isinstance(e, And):
        s = to_text(e.left, _AND) + " & " + to_text(e.right, _NOT)
        return s if prec <= _AND else f"({s})"
    if isinstance(e, Or):
        s = to_text(e.left, _OR) + " | " + to_text(e.right, _AND)
        return s if prec <= _OR else f"({s})"
    if isinstance(e, Eps):
        sort = f" : {e.sort}" if e.sort else ""
        s = f"{e.kw} {e.var}{sort}{_seed_text(e.seed)} . {to_text(e.body)}"
    elif isinstance(e, Alpha):
        sort = f" : {e.sort}" if e.sort else ""
        s = f"{e.kw} {e.var}{sort} . {to_text(e.body)}"
    elif isinstance(e, Rec):
        s = f"rec {e.var}{_seed_text(e.seed)} . {to_text(e.body)}"
    else:
        raise TypeError(f"not an expression: {e!r}")
    return s if prec <= _BINDER else f"({s})"
