"""Open-deduction derivations.

A derivation is a formula leaf, a horizontal composition of two derivations
by a connective, or a vertical composition of two derivations through one
rule instance.  Premiss and conclusion are computed once, at construction.
Vertical chains are kept right-nested: the upper part of a :class:`Step` is
never itself a :class:`Step` when built through :func:`step`/:func:`chain`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import formula as fm
from . import rules as rl
from ._deep import deep_recursion
from .formula import Formula, FormulaError, Node, ParseError, TokenStream, read_formula
from .rules import EQUALITY, RuleName


class DerivationError(FormulaError):
    """Malformed derivation: mismatched interfaces or bad syntax."""


class Derivation:
    __slots__ = ()

    premiss: Formula
    conclusion: Formula

    def __str__(self) -> str:
        return print_derivation(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, Derivation) and same_derivation(self, other)

    def __hash__(self) -> int:
        return hash((self.premiss, self.conclusion))


class Leaf(Derivation):
    __slots__ = ("formula",)

    def __init__(self, formula: Formula):
        self.formula = formula

    @property
    def premiss(self) -> Formula:
        return self.formula

    @property
    def conclusion(self) -> Formula:
        return self.formula

    def __repr__(self):
        return f"Leaf({self.formula})"


class Horiz(Derivation):
    __slots__ = ("conn", "left", "right", "premiss", "conclusion")

    def __init__(self, conn: str, left: Derivation, right: Derivation):
        self.conn = conn
        self.left = left
        self.right = right
        self.premiss = Node(conn, left.premiss, right.premiss)
        self.conclusion = Node(conn, left.conclusion, right.conclusion)

    def __repr__(self):
        return f"Horiz({self.conn!r}, {self.left!r}, {self.right!r})"


class Step(Derivation):
    """``upper`` then the rule ``name`` then ``lower``; the rule instance is
    conclusion(upper) over premiss(lower).  Validity is not enforced here;
    use :func:`check`."""

    __slots__ = ("name", "upper", "lower", "premiss", "conclusion")

    def __init__(self, name: RuleName, upper: Derivation, lower: Derivation):
        self.name = name
        self.upper = upper
        self.lower = lower
        self.premiss = upper.premiss
        self.conclusion = lower.conclusion

    def __repr__(self):
        return f"Step({str(self.name)!r}, {self.upper!r}, {self.lower!r})"


# -- smart constructors ----------------------------------------------------

def leaf(f: Formula) -> Leaf:
    return Leaf(f)


def horiz(conn: str, left: Derivation, right: Derivation) -> Derivation:
    """Horizontal composition; two leaves fuse into one leaf."""
    if isinstance(left, Leaf) and isinstance(right, Leaf):
        return Leaf(Node(conn, left.formula, right.formula))
    return Horiz(conn, left, right)


def step(upper: Derivation, name: RuleName, lower: Derivation) -> Step:
    """Vertical composition, re-associated so Steps nest to the right."""
    spine = []
    while isinstance(upper, Step):
        spine.append(upper)
        upper = upper.lower
    out = Step(name, upper, lower)
    for s in reversed(spine):
        out = Step(s.name, s.upper, out)
    return out


def rule_step(name: RuleName, premiss: Formula, conclusion: Formula) -> Step:
    return Step(name, Leaf(premiss), Leaf(conclusion))


def eq_step(premiss: Formula, conclusion: Formula) -> Derivation:
    """A single equality step (a leaf when the two formulae coincide)."""
    if premiss == conclusion:
        return Leaf(premiss)
    return Step(EQUALITY, Leaf(premiss), Leaf(conclusion))


def chain(*parts: Derivation) -> Derivation:
    """Synchronally compose a sequence of derivations top to bottom."""
    out = parts[0]
    for p in parts[1:]:
        out = compose_seq(out, p)
    return out


def then_eq(d: Derivation, target: Formula) -> Derivation:
    """Append an equality step from the conclusion of ``d`` to ``target``."""
    if d.conclusion == target:
        return d
    return step(d, EQUALITY, Leaf(target))


def eq_then(source: Formula, d: Derivation) -> Derivation:
    """Prefix ``d`` with an equality step from ``source``."""
    if source == d.premiss:
        return d
    return step(Leaf(source), EQUALITY, d)


# -- synchronal composition ------------------------------------------------

@deep_recursion
def compose_seq(d1: Derivation, d2: Derivation) -> Derivation:
    """Compose ``d1`` above ``d2``; their interface must coincide exactly."""
    if d1.conclusion != d2.premiss:
        raise DerivationError(
            f"cannot compose: conclusion {d1.conclusion} differs from premiss {d2.premiss}")
    return _compose(d1, d2)


def _compose(d1: Derivation, d2: Derivation) -> Derivation:
    if isinstance(d1, Leaf):
        return d2
    if isinstance(d2, Leaf):
        return d1
    if isinstance(d1, Step):
        # walk the right spine of d1 iteratively
        spine = []
        while isinstance(d1, Step):
            spine.append(d1)
            d1 = d1.lower
        out = _compose(d1, d2)
        for s in reversed(spine):
            out = Step(s.name, s.upper, out)
        return out
    if isinstance(d2, Step):
        return Step(d2.name, _compose(d1, d2.upper), d2.lower)
    # both horizontal by the same connective
    return horiz(d1.conn, _compose(d1.left, d2.left), _compose(d1.right, d2.right))


# -- metrics ---------------------------------------------------------------

@dataclass(frozen=True)
class Metrics:
    width: int
    height: int
    size: int


def _postorder(d: Derivation, visit) -> dict:
    """Evaluate ``visit(node, results)`` bottom-up, memoized by identity."""
    memo: dict[int, object] = {}
    stack = [(d, False)]
    while stack:
        x, expanded = stack.pop()
        if id(x) in memo:
            continue
        if isinstance(x, Leaf) or expanded:
            memo[id(x)] = visit(x, memo)
            continue
        stack.append((x, True))
        if isinstance(x, Horiz):
            stack.append((x.right, False))
            stack.append((x.left, False))
        else:
            stack.append((x.lower, False))
            stack.append((x.upper, False))
    return memo


def metrics(d: Derivation) -> Metrics:
    def visit(x, memo):
        if isinstance(x, Leaf):
            return (x.formula.size, 0, x.formula.size)
        if isinstance(x, Horiz):
            l, r = memo[id(x.left)], memo[id(x.right)]
            return (l[0] + r[0], max(l[1], r[1]), l[2] + r[2])
        u, w = memo[id(x.upper)], memo[id(x.lower)]
        return (max(u[0], w[0]), u[1] + w[1] + 1, u[2] + w[2])

    width, height, size = _postorder(d, visit)[id(d)]
    return Metrics(width, height, size)


def width(d: Derivation) -> int:
    return metrics(d).width


def height(d: Derivation) -> int:
    return metrics(d).height


def size(d: Derivation) -> int:
    return metrics(d).size


def _iter_steps_raw(d: Derivation):
    """Like :func:`iter_steps` but paths are cons cells ``(index, parent)``,
    so deep derivations do not pay for materializing every path."""
    stack = [(None, d)]
    while stack:
        path, x = stack.pop()
        if isinstance(x, Leaf):
            continue
        if isinstance(x, Step):
            yield path, x
            stack.append(((1, path), x.lower))
            stack.append(((0, path), x.upper))
        else:
            stack.append(((1, path), x.right))
            stack.append(((0, path), x.left))


def path_tuple(cell) -> tuple:
    out = []
    while cell is not None:
        out.append(cell[0])
        cell = cell[1]
    return tuple(reversed(out))


def iter_steps(d: Derivation):
    """Yield ``(path, step)`` for every Step, in pre-order.  Paths are tuples
    of child indices (0 = left/upper, 1 = right/lower)."""
    for cell, s in _iter_steps_raw(d):
        yield path_tuple(cell), s


def iter_formulas(d: Derivation):
    """Every formula shown at a leaf of ``d``."""
    stack = [d]
    while stack:
        x = stack.pop()
        if isinstance(x, Leaf):
            yield x.formula
        elif isinstance(x, Horiz):
            stack.append(x.right)
            stack.append(x.left)
        else:
            stack.append(x.lower)
            stack.append(x.upper)


def rule_names(d: Derivation) -> list[RuleName]:
    return [s.name for _, s in _iter_steps_raw(d)]


def atoms(d: Derivation) -> frozenset:
    out = set()
    for f in iter_formulas(d):
        out |= fm.atoms(f)
    for name in rule_names(d):
        out |= name.atoms()
    stack = [d]
    while stack:  # connectives of horizontal compositions
        x = stack.pop()
        if isinstance(x, Horiz):
            if fm.is_atom(x.conn):
                out.add(x.conn)
            stack.extend((x.left, x.right))
        elif isinstance(x, Step):
            stack.extend((x.upper, x.lower))
    return frozenset(out)


# -- checking --------------------------------------------------------------

@dataclass(frozen=True)
class CutSite:
    path: tuple
    atom: str
    mirrored: bool = False


@dataclass
class CheckReport:
    valid: bool
    failures: list = field(default_factory=list)   # (path, reason)
    cuts: list = field(default_factory=list)       # CutSite
    identities: list = field(default_factory=list)  # CutSite

    @property
    def cut_count(self) -> int:
        return len(self.cuts)

    def cut_atoms(self) -> set:
        return {c.atom for c in self.cuts}

    def to_text(self) -> str:
        lines = ["VALID" if self.valid else "INVALID"]
        for c in self.cuts:
            lines.append(f"CUT {format_path(c.path)}" + (" mirrored" if c.mirrored else ""))
        for c in self.identities:
            lines.append(f"IDENTITY {format_path(c.path)}" + (" mirrored" if c.mirrored else ""))
        for path, reason in self.failures:
            lines.append(f"FAIL {format_path(path)} {reason}")
        return "\n".join(lines) + "\n"


def format_path(path: Sequence[int]) -> str:
    return "/".join(map(str, path)) if path else "."


def check(d: Derivation) -> CheckReport:
    """Check every rule instance and locate cuts and identities."""
    report = CheckReport(valid=True)
    verdicts: dict[int, tuple] = {}
    for cell, s in _iter_steps_raw(d):
        v = verdicts.get(id(s))
        if v is None:
            v = _judge(s)
            verdicts[id(s)] = v
        ok, cut, ident = v
        if not ok:
            report.valid = False
            report.failures.append((path_tuple(cell), f"not an instance of {s.name}"))
            continue
        if cut:
            report.cuts.append(CutSite(path_tuple(cell), s.name.second, s.name.mirrored))
        if ident:
            report.identities.append(CutSite(path_tuple(cell), s.name.second, s.name.mirrored))
    return report


def _judge(s: Step):
    p, q = s.upper.conclusion, s.lower.premiss
    if not rl.valid_instance(s.name, p, q):
        return (False, False, False)
    return (True, rl.is_cut(s.name, p, q), rl.is_identity(s.name, p, q))


def is_valid(d: Derivation) -> bool:
    return all(rl.valid_instance(s.name, s.upper.conclusion, s.lower.premiss)
               for _, s in _iter_steps_raw(d))


def cut_count(d: Derivation) -> int:
    return len(check(d).cuts)


def is_proof(d: Derivation) -> bool:
    return d.premiss == fm.ONE


# -- duality and mirror images -----------------------------------------------

@deep_recursion
def dualize(d: Derivation) -> Derivation:
    """Invert ``d``, negate every formula and rename each rule by its dual."""
    memo: dict[int, Derivation] = {}

    def go(x):
        got = memo.get(id(x))
        if got is not None:
            return got
        if isinstance(x, Leaf):
            out = Leaf(fm.negate(x.formula))
        elif isinstance(x, Horiz):
            out = Horiz(fm.dual(x.conn), go(x.left), go(x.right))
        else:
            # right-nested chain u0 r0 u1 r1 ... un  becomes  ~un ... r0 ~u0
            parts, names = [], []
            y = x
            while isinstance(y, Step):
                parts.append(y.upper)
                names.append(y.name)
                y = y.lower
            parts.append(y)
            out = go(parts[0])
            for part, name in zip(parts[1:], names):
                out = step(go(part), name.dual(), out)
        memo[id(x)] = out
        return out

    return go(d)


@deep_recursion
def mirror(d: Derivation) -> Derivation:
    """The mirror image: every formula mirrored, horizontal children swapped
    and every non-equality rule name toggled."""
    memo: dict[int, Derivation] = {}

    def go(x):
        got = memo.get(id(x))
        if got is not None:
            return got
        if isinstance(x, Leaf):
            out = Leaf(fm.mirror(x.formula))
        elif isinstance(x, Horiz):
            out = Horiz(x.conn, go(x.right), go(x.left))
        else:
            out = Step(x.name.toggle_mirror(), go(x.upper), go(x.lower))
        memo[id(x)] = out
        return out

    return go(d)


def same_derivation(d1: Derivation, d2: Derivation) -> bool:
    stack = [(d1, d2)]
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        if type(x) is not type(y):
            return False
        if isinstance(x, Leaf):
            if x.formula != y.formula:
                return False
        elif isinstance(x, Horiz):
            if x.conn != y.conn:
                return False
            stack.append((x.left, y.left))
            stack.append((x.right, y.right))
        else:
            if x.name != y.name:
                return False
            stack.append((x.upper, y.upper))
            stack.append((x.lower, y.lower))
    return True


@deep_recursion
def canonicalize(d: Derivation) -> Derivation:
    """Re-associate every vertical chain to the right."""
    memo: dict[int, Derivation] = {}

    def go(x):
        got = memo.get(id(x))
        if got is None:
            if isinstance(x, Leaf):
                got = x
            elif isinstance(x, Horiz):
                got = Horiz(x.conn, go(x.left), go(x.right))
            else:
                got = step(go(x.upper), x.name, go(x.lower))
            memo[id(x)] = got
        return got

    return go(d)


def is_canonical(d: Derivation) -> bool:
    """No Step has a Step as its upper part."""
    return all(not isinstance(s.upper, Step) for _, s in _iter_steps_raw(d))


# -- serialization -----------------------------------------------------------

def print_derivation(d: Derivation) -> str:
    parts: list[str] = []
    stack: list = [d]
    while stack:
        x = stack.pop()
        if isinstance(x, str):
            parts.append(x)
        elif isinstance(x, Leaf):
            parts.append("(form ")
            parts.append(fm.print_formula(x.formula))
            parts.append(")")
        elif isinstance(x, Horiz):
            parts.append(f"(conn {x.conn} ")
            stack.extend([")", x.right, " ", x.left])
        else:
            parts.append(f"(step {x.name} ")
            stack.extend([")", x.lower, " ", x.upper])
    return "".join(parts)


def print_derivation_pretty(d: Derivation, indent: int = 2) -> str:
    """Indented, one node per line; parses back identically."""
    lines: list[str] = []
    stack: list = [(d, 0, "")]
    while stack:
        x, depth, suffix = stack.pop()
        pad = " " * (indent * depth)
        if isinstance(x, Leaf):
            lines.append(f"{pad}(form {fm.print_formula(x.formula)}){suffix}")
        elif isinstance(x, Horiz):
            lines.append(f"{pad}(conn {x.conn}")
            stack.append((x.right, depth + 1, ")" + suffix))
            stack.append((x.left, depth + 1, ""))
        else:
            lines.append(f"{pad}(step {x.name}")
            stack.append((x.lower, depth + 1, ")" + suffix))
            stack.append((x.upper, depth + 1, ""))
    return "\n".join(lines) + "\n"


def _read_rule_name(ts: TokenStream) -> RuleName:
    tok = ts.next()
    if tok[0] != "name" or tok[1] not in ("eq", "up", "down"):
        ts.i -= 1
        ts.error("expected a rule name")
    if tok[1] == "eq":
        return EQUALITY
    ts.expect("(")
    c1 = _read_conn_word(ts)
    ts.expect(",")
    c2 = _read_conn_word(ts)
    ts.expect(")")
    mirrored = False
    nxt = ts.peek()
    if nxt is not None and nxt[0] == "punct" and nxt[1] == "~":
        ts.next()
        mirrored = True
    return RuleName(tok[1], c1, c2, mirrored)


def _read_conn_word(ts: TokenStream) -> str:
    tok = ts.next()
    if tok[0] != "name":
        ts.i -= 1
        ts.error("expected a connective name")
    return rl.conn_from_name(tok[1])


def _read_conn_symbol(ts: TokenStream) -> str:
    tok = ts.next()
    if tok[0] == "punct" and tok[1] in (fm.OR, fm.AND):
        return tok[1]
    if tok[0] == "name" and tok[1] not in fm.RESERVED_NAMES:
        return tok[1]
    ts.i -= 1
    ts.error("expected a connective")


def parse_derivation(text: str, strict: bool = False) -> Derivation:
    """Parse the s-expression format.

    Steps are built as written (no re-association).  With ``strict=True``
    every step is checked as it is read and the first invalid one raises a
    :class:`ParseError` located at that ``step`` keyword.
    """
    ts = TokenStream(text)
    # explicit stack of partially read nodes: [kind, tag, children, offset]
    frames: list[list] = []
    result: Optional[Derivation] = None
    while True:
        if result is None:
            ts.expect("(")
            off = ts.offset()
            tok = ts.next()
            if tok[0] != "name" or tok[1] not in ("form", "conn", "step"):
                ts.i -= 1
                ts.error("expected form, conn or step")
            if tok[1] == "form":
                f = read_formula(ts)
                ts.expect(")")
                result = Leaf(f)
            elif tok[1] == "conn":
                frames.append(["conn", _read_conn_symbol(ts), [], off])
                continue
            else:
                frames.append(["step", _read_rule_name(ts), [], off])
                continue
        if not frames:
            break
        top = frames[-1]
        top[2].append(result)
        result = None
        if len(top[2]) == 2:
            ts.expect(")")
            frames.pop()
            kind, tag, (a, b), off = top
            if kind == "conn":
                result = Horiz(tag, a, b)
            else:
                if strict and not rl.valid_instance(tag, a.conclusion, b.premiss):
                    raise ParseError(f"step {tag} is not a valid rule instance", off)
                result = Step(tag, a, b)
    if not ts.at_end():
        ts.error("trailing input")
    return result


def read_derivation_file(path: str) -> Derivation:
    with open(path, encoding="utf-8") as fh:
        return parse_derivation(fh.read())


def write_derivation_file(path: str, d: Derivation) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(print_derivation_pretty(d))
