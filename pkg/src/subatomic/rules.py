"""The subatomic rule scheme and the trusted instance checker.

Every non-equality inference instantiates one of two shapes, for connectives
alpha, beta drawn from {|, &} and the atoms:

    up(alpha,beta):   (A beta B) alpha (C stronger(beta) D)
                      ---------------------------------------
                          (A alpha C) beta (B alpha D)

    down(beta,alpha): (A beta B) alpha (C beta D)
                      ---------------------------------------
                          (A alpha C) beta (B weaker(alpha) D)

A ``~`` suffix names the mirror image of a rule.  ``eq`` steps relate
formulae equal under the unit equations.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .formula import (
    AND,
    OR,
    Formula,
    FormulaError,
    Node,
    check_atom_name,
    dual,
    equal_mod_units,
    is_atom,
    is_unit_value,
    negate,
    stronger,
    weaker,
)

UP = "up"
DOWN = "down"
EQ = "eq"


def conn_name(conn: str) -> str:
    return {OR: "or", AND: "and"}.get(conn, conn)


def conn_from_name(name: str) -> str:
    if name == "or":
        return OR
    if name == "and":
        return AND
    return check_atom_name(name)


@dataclass(frozen=True)
class RuleName:
    """``kind`` is ``up``, ``down`` or ``eq``.

    For ``up`` the connectives are ``(alpha, beta)`` with alpha outermost in
    the premiss; for ``down`` they are ``(beta, alpha)``, again in the order
    they are written.
    """

    kind: str
    first: Optional[str] = None
    second: Optional[str] = None
    mirrored: bool = False

    def __post_init__(self):
        if self.kind == EQ:
            if self.first is not None or self.second is not None or self.mirrored:
                raise FormulaError("equality rule carries no connectives")
        elif self.kind in (UP, DOWN):
            if self.first is None or self.second is None:
                raise FormulaError(f"{self.kind} rule needs two connectives")
        else:
            raise FormulaError(f"unknown rule kind {self.kind!r}")

    @property
    def is_eq(self) -> bool:
        return self.kind == EQ

    def dual(self) -> "RuleName":
        if self.kind == EQ:
            return self
        kind = DOWN if self.kind == UP else UP
        return RuleName(kind, dual(self.first), dual(self.second), self.mirrored)

    def toggle_mirror(self) -> "RuleName":
        if self.kind == EQ:
            return self
        return RuleName(self.kind, self.first, self.second, not self.mirrored)

    def atoms(self) -> frozenset:
        if self.kind == EQ:
            return frozenset()
        return frozenset(c for c in (self.first, self.second) if is_atom(c))

    def __str__(self) -> str:
        if self.kind == EQ:
            return "eq"
        text = f"{self.kind}({conn_name(self.first)},{conn_name(self.second)})"
        return text + "~" if self.mirrored else text


EQUALITY = RuleName(EQ)


def up(alpha: str, beta: str, mirrored: bool = False) -> RuleName:
    return RuleName(UP, alpha, beta, mirrored)


def down(beta: str, alpha: str, mirrored: bool = False) -> RuleName:
    return RuleName(DOWN, beta, alpha, mirrored)


_RULE_RE = re.compile(r"\s*(?:(eq)|(up|down)\s*\(\s*([a-z][a-z0-9_]*)\s*,\s*([a-z][a-z0-9_]*)\s*\)\s*(~)?)\s*\Z")


def parse_rule_name(text: str) -> RuleName:
    m = _RULE_RE.match(text)
    if not m:
        raise FormulaError(f"invalid rule name {text!r}")
    if m.group(1):
        return EQUALITY
    return RuleName(m.group(2), conn_from_name(m.group(3)), conn_from_name(m.group(4)), bool(m.group(5)))


def enumerate_rule_names(atom_names: Iterable[str] = ()) -> list[RuleName]:
    """All up/down names over {|, &} and the given atoms, then ``eq``.

    A rule reachable under two names keeps both."""
    conns = [OR, AND] + sorted(set(atom_names))
    names = [RuleName(kind, x, y) for kind in (UP, DOWN) for x in conns for y in conns]
    names.append(EQUALITY)
    return names


# -- matching ----------------------------------------------------------------

def _swap(f: Formula) -> Optional[Formula]:
    if not isinstance(f, Node):
        return None
    return Node(f.conn, f.right, f.left)


def swap2(f: Formula) -> Optional[Formula]:
    """Swap the children of the root and of both its children: the mirror
    image as far as the rule scheme can see."""
    if not isinstance(f, Node):
        return None
    l, r = _swap(f.right), _swap(f.left)
    if l is None or r is None:
        return None
    return Node(f.conn, l, r)


def _split(f: Formula, outer: str, left: str, right: str):
    if not isinstance(f, Node) or f.conn != outer:
        return None
    l, r = f.left, f.right
    if not isinstance(l, Node) or l.conn != left or not isinstance(r, Node) or r.conn != right:
        return None
    return l.left, l.right, r.left, r.right


def match_quadruple(name: RuleName, premiss: Formula, conclusion: Formula):
    """Return the matched ``(A, B, C, D)`` of an up/down instance, or None.

    For mirrored names the quadruple is read off the child-swapped formulae.
    """
    if name.kind == EQ:
        return None
    if name.mirrored:
        premiss, conclusion = swap2(premiss), swap2(conclusion)
        if premiss is None or conclusion is None:
            return None
    if name.kind == UP:
        alpha, beta = name.first, name.second
        top = _split(premiss, alpha, beta, stronger(beta))
        if top is None:
            return None
        bottom = _split(conclusion, beta, alpha, alpha)
    else:
        beta, alpha = name.first, name.second
        top = _split(premiss, alpha, beta, beta)
        if top is None:
            return None
        bottom = _split(conclusion, beta, alpha, weaker(alpha))
    if bottom is None:
        return None
    a, b, c, d = top
    # conclusion reads (A alpha C) beta (B . D)
    if bottom[0] == a and bottom[1] == c and bottom[2] == b and bottom[3] == d:
        return top
    return None


def valid_instance(name: RuleName, premiss: Formula, conclusion: Formula) -> bool:
    if name.kind == EQ:
        return equal_mod_units(premiss, conclusion)
    return match_quadruple(name, premiss, conclusion) is not None


def instantiate(name: RuleName, a: Formula, b: Formula, c: Formula, d: Formula):
    """Premiss and conclusion of ``name`` on the quadruple (unmirrored
    reading; for mirrored names the quadruple is given as matched)."""
    if name.kind == UP:
        alpha, beta = name.first, name.second
        p = Node(alpha, Node(beta, a, b), Node(stronger(beta), c, d))
        q = Node(beta, Node(alpha, a, c), Node(alpha, b, d))
    elif name.kind == DOWN:
        beta, alpha = name.first, name.second
        p = Node(alpha, Node(beta, a, b), Node(beta, c, d))
        q = Node(beta, Node(alpha, a, c), Node(weaker(alpha), b, d))
    else:
        raise FormulaError("equality has no quadruple")
    if name.mirrored:
        p, q = swap2(p), swap2(q)
    return p, q


def apply_rule(name: RuleName, premiss: Formula) -> Optional[Formula]:
    """The conclusion of ``name`` applied at the root of ``premiss``, if the
    premiss has the rule's shape."""
    if name.kind == EQ:
        return None
    p = swap2(premiss) if name.mirrored else premiss
    if p is None:
        return None
    if name.kind == UP:
        quad = _split(p, name.first, name.second, stronger(name.second))
    else:
        quad = _split(p, name.second, name.first, name.first)
    if quad is None:
        return None
    return instantiate(name, *quad)[1]


# -- cuts and identities -------------------------------------------------------

def _is_cut_quadruple(a, b, c, d) -> bool:
    zero = lambda x: is_unit_value(x, 0)
    one = lambda x: is_unit_value(x, 1)
    return (zero(a) and zero(d) and one(b) and one(c)) or (one(a) and one(d) and zero(b) and zero(c))


def is_cut(name: RuleName, premiss: Formula, conclusion: Formula) -> bool:
    """An ``up(and,a)`` instance whose quadruple is (0,1,1,0) or (1,0,0,1)
    modulo units.  Mirrored instances count too (see ``is_mirrored_cut``)."""
    if name.kind != UP or name.first != AND or not is_atom(name.second):
        return False
    quad = match_quadruple(name, premiss, conclusion)
    return quad is not None and _is_cut_quadruple(*quad)


def is_mirrored_cut(name: RuleName, premiss: Formula, conclusion: Formula) -> bool:
    return name.mirrored and is_cut(name, premiss, conclusion)


def dual_instance(name: RuleName, premiss: Formula, conclusion: Formula):
    return name.dual(), negate(conclusion), negate(premiss)


def is_identity(name: RuleName, premiss: Formula, conclusion: Formula) -> bool:
    """The dual of a cut: a ``down(or,a)`` instance with quadruple
    (1,0,0,1) or (0,1,1,0)."""
    if name.kind != DOWN or name.first != OR or not is_atom(name.second):
        return False
    return is_cut(*dual_instance(name, premiss, conclusion))
