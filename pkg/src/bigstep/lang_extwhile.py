"""The extended While language: variables and arrays in one namespace,
stack-allocated array locations, and functions with by-reference arrays.

A state is a store plus the next fresh location for arrays.  The store maps
names (variables and array identifiers) to optional integers -- an array
identifier maps to its base location, an undeclared name to "undefined" --
and maps locations (natural numbers) to integers, defaulting to 0.
Expression evaluation is partial: any undefined operand yields undefined,
and a rule whose side condition meets undefined is simply inapplicable, so
the configuration is stuck.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .kernel import Conclude, LanguagePlugin, Need
from .syntax import ParseError, Tokens


# ---------------------------------------------------------------------------
# Abstract syntax
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ANum:
    value: int


@dataclass(frozen=True)
class AName:
    name: str  # a variable or an array identifier (base location)


@dataclass(frozen=True)
class AIdx:
    name: str  # array element read X[a]
    index: "AExp"


@dataclass(frozen=True)
class ABin:
    op: str  # + - * /
    left: "AExp"
    right: "AExp"


AExp = ANum | AName | AIdx | ABin


@dataclass(frozen=True)
class BBool:
    value: bool


@dataclass(frozen=True)
class BCmp:
    op: str  # = <
    left: AExp
    right: AExp


@dataclass(frozen=True)
class BAnd:
    left: "BExp"
    right: "BExp"


@dataclass(frozen=True)
class BNot:
    arg: "BExp"


BExp = BBool | BCmp | BAnd | BNot


@dataclass(frozen=True)
class Skip:
    pass


@dataclass(frozen=True)
class VarDecl:
    var: str


@dataclass(frozen=True)
class ArrDecl:
    name: str
    size: int


@dataclass(frozen=True)
class Assign:
    var: str
    expr: AExp


@dataclass(frozen=True)
class ArrAssign:
    name: str
    index: AExp
    expr: AExp


@dataclass(frozen=True)
class Seq:
    first: "Stmt"
    second: "Stmt"


@dataclass(frozen=True)
class If:
    cond: BExp
    then: "Stmt"
    orelse: "Stmt"


@dataclass(frozen=True)
class While:
    cond: BExp
    body: "Stmt"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple[AExp, ...]
    recvs: tuple[str, ...]


Stmt = (Skip | VarDecl | ArrDecl | Assign | ArrAssign | Seq | If | While
        | Call)


@dataclass(frozen=True)
class Func:
    params: tuple[str, ...]
    rets: tuple[str, ...]
    body: Stmt


@dataclass(frozen=True)
class ExtProgram:
    funcs: tuple[tuple[str, Func], ...] = ()

    def lookup(self, name: str) -> Optional[Func]:
        for k, f in self.funcs:
            if k == name:
                return f
        return None


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtState:
    """Store (names to optional ints, locations to ints) + next fresh loc.

    Only defined names are kept; a missing name is undefined.  Only nonzero
    locations are kept; a missing location holds 0.
    """

    names: tuple[tuple[str, int], ...] = ()
    heap: tuple[tuple[int, int], ...] = ()
    nextloc: int = 0

    @classmethod
    def of(cls, names: dict[str, int], heap: dict[int, int],
           nextloc: int) -> "ExtState":
        return cls(tuple(sorted(names.items())),
                   tuple(sorted((k, v) for k, v in heap.items() if v != 0)),
                   nextloc)

    def name(self, n: str) -> Optional[int]:
        for k, v in self.names:
            if k == n:
                return v
        return None

    def with_name(self, n: str, value: int) -> "ExtState":
        d = dict(self.names)
        d[n] = value
        return ExtState.of(d, dict(self.heap), self.nextloc)

    def loc(self, location: int) -> int:
        for k, v in self.heap:
            if k == location:
                return v
        return 0

    def with_loc(self, location: int, value: int) -> "ExtState":
        d = dict(self.heap)
        d[location] = value
        return ExtState.of(dict(self.names), d, self.nextloc)

    def with_nextloc(self, nextloc: int) -> "ExtState":
        return ExtState(self.names, self.heap, nextloc)

    def __str__(self):
        parts = ["%s=%d" % (k, v) for k, v in self.names]
        parts += ["[%d]=%d" % (k, v) for k, v in self.heap]
        parts.append("nextloc=%d" % self.nextloc)
        return ", ".join(parts)


@dataclass(frozen=True)
class ExtConfig:
    stmt: Stmt
    state: ExtState
    program: ExtProgram


# ---------------------------------------------------------------------------
# Expression evaluation (partial: None is the undefined value)
# ---------------------------------------------------------------------------

def aeval(a: AExp, st: ExtState) -> Optional[int]:
    match a:
        case ANum(v):
            return v
        case AName(n):
            return st.name(n)
        case AIdx(n, ix):
            base = st.name(n)
            i = aeval(ix, st)
            if base is None or i is None or i < 0 \
                    or base + i >= st.nextloc:
                return None
            return st.loc(base + i)
        case ABin(op, l, r):
            x, y = aeval(l, st), aeval(r, st)
            if x is None or y is None:
                return None
            if op == "+":
                return x + y
            if op == "-":
                return x - y
            if op == "*":
                return x * y
            if op == "/":
                # Division is partial at zero; floor division otherwise.
                return None if y == 0 else x // y
    raise ValueError("bad arithmetic expression: %r" % (a,))


def beval(b: BExp, st: ExtState) -> Optional[bool]:
    match b:
        case BBool(v):
            return v
        case BCmp(op, l, r):
            x, y = aeval(l, st), aeval(r, st)
            if x is None or y is None:
                return None
            return x == y if op == "=" else x < y
        case BAnd(l, r):
            # Conjunction is two-valued: tt only when both operands are tt,
            # ff in every other case (including undefined operands).
            return beval(l, st) is True and beval(r, st) is True
        case BNot(x):
            v = beval(x, st)
            return None if v is None else not v
    raise ValueError("bad boolean expression: %r" % (b,))


# ---------------------------------------------------------------------------
# Call store initialization / finalization
# ---------------------------------------------------------------------------

def call_ini(state: ExtState, params, vals, rets) -> ExtState:
    """Callee's initial store: params to argument values, return variables
    to 0, every other name undefined; locations preserved."""
    params, vals, rets = list(params), list(vals), list(rets)
    if len(params) != len(vals):
        raise ValueError("arity mismatch: %d parameters, %d arguments"
                         % (len(params), len(vals)))
    names = dict(zip(params, vals))
    for r in rets:
        if r not in names:
            names[r] = 0
    return ExtState.of(names, dict(state.heap), state.nextloc)


def call_fin(pre: ExtState, post: ExtState, rets, recvs) -> ExtState:
    """Caller's store after the call: receiving variables get the callee's
    return values, other names come from the pre-call store, locations come
    from the post store (array effects are kept)."""
    rets, recvs = list(rets), list(recvs)
    if len(rets) != len(recvs):
        raise ValueError("arity mismatch: %d return variables, %d receivers"
                         % (len(rets), len(recvs)))
    names = dict(pre.names)
    for r, y in zip(rets, recvs):
        v = post.name(r)
        if v is None:
            names.pop(y, None)
        else:
            names[y] = v
    return ExtState.of(names, dict(post.heap), pre.nextloc)


# ---------------------------------------------------------------------------
# Semantic rules
# ---------------------------------------------------------------------------

def ext_rules(gamma: ExtConfig) -> list:
    """Rule instances concluding at `gamma`; an empty list means stuck."""
    stmt, st, prog = gamma.stmt, gamma.state, gamma.program
    match stmt:
        case Skip():
            return [Conclude(st)]
        case VarDecl(x):
            if st.name(x) is None:
                return [Conclude(st.with_name(x, 0))]
            return []
        case ArrDecl(x, size):
            if st.name(x) is None:
                return [Conclude(st.with_name(x, st.nextloc)
                                 .with_nextloc(st.nextloc + size))]
            return []
        case Assign(x, a):
            v = aeval(a, st)
            if v is not None and st.name(x) is not None:
                return [Conclude(st.with_name(x, v))]
            return []
        case ArrAssign(x, ix, a):
            base = st.name(x)
            i = aeval(ix, st)
            v = aeval(a, st)
            if base is not None and i is not None and v is not None \
                    and i >= 0 and base + i < st.nextloc:
                return [Conclude(st.with_loc(base + i, v))]
            return []
        case If(b, s1, s2):
            guard = beval(b, st)
            if guard is None:
                return []
            branch = s1 if guard else s2
            return [Need(ExtConfig(branch, st, prog),
                         lambda fin: Conclude(fin))]
        case While(b, body):
            guard = beval(b, st)
            if guard is None:
                return []
            if guard:
                return [Need(ExtConfig(body, st, prog),
                             lambda mid, _w=stmt: Need(
                                 ExtConfig(_w, mid, prog),
                                 lambda fin: Conclude(fin)))]
            return [Conclude(st)]
        case Seq(s1, s2):
            return [Need(ExtConfig(s1, st, prog),
                         lambda mid, _s2=s2: Need(
                             ExtConfig(_s2, mid, prog),
                             lambda fin: Conclude(fin)))]
        case Call(f, args, recvs):
            func = prog.lookup(f)
            if func is None or len(func.params) != len(args) \
                    or len(func.rets) != len(recvs):
                return []
            vals = [aeval(a, st) for a in args]
            if any(v is None for v in vals):
                return []
            inner = call_ini(st, func.params, vals, func.rets)
            return [Need(ExtConfig(func.body, inner, prog),
                         lambda post, _st=st, _f=func, _r=recvs:
                         Conclude(call_fin(_st, post, _f.rets, _r)))]
    raise ValueError("bad statement: %r" % (stmt,))


# ---------------------------------------------------------------------------
# Concrete syntax
# ---------------------------------------------------------------------------

_SYMBOLS = [":=", ";", "(", ")", "[", "]", "{", "}", "+", "-", "*", "/",
            "<=", "<", "=", ",", "@"]
_KEYWORDS = {"skip", "if", "then", "else", "while", "do", "true", "false",
             "and", "not", "var", "array", "call", "fun", "returns"}


def _toks(src: str) -> Tokens:
    return Tokens(src, _SYMBOLS, _KEYWORDS)


def _parse_aexp(t: Tokens) -> AExp:
    node = _parse_term(t)
    while t.peek() in ("+", "-"):
        op = t.next()
        node = ABin(op, node, _parse_term(t))
    return node


def _parse_term(t: Tokens) -> AExp:
    node = _parse_factor(t)
    while t.peek() in ("*", "/"):
        op = t.next()
        node = ABin(op, node, _parse_factor(t))
    return node


def _parse_factor(t: Tokens) -> AExp:
    if t.peek() == "(":
        t.next()
        node = _parse_aexp(t)
        t.eat(")")
        return node
    if t.peek() == "-" or t.peek_kind() == "int":
        return ANum(t.integer())
    name = t.ident()
    if t.peek() == "[":
        t.next()
        idx = _parse_aexp(t)
        t.eat("]")
        return AIdx(name, idx)
    return AName(name)


def _parse_bexp(t: Tokens) -> BExp:
    node = _parse_batom(t)
    while t.peek() == "and":
        t.next()
        node = BAnd(node, _parse_batom(t))
    return node


def _parse_batom(t: Tokens) -> BExp:
    if t.peek() == "true":
        t.next()
        return BBool(True)
    if t.peek() == "false":
        t.next()
        return BBool(False)
    if t.peek() == "not":
        t.next()
        return BNot(_parse_batom(t))
    mark = t.save()
    try:
        left = _parse_aexp(t)
        if t.peek() in ("=", "<", "<="):
            op = t.next()
            right = _parse_aexp(t)
            if op == "<=":
                # a1 <= a2 is sugar for not (a2 < a1).
                return BNot(BCmp("<", right, left))
            return BCmp(op, left, right)
        raise ParseError("not a comparison")
    except ParseError:
        t.restore(mark)
    t.eat("(")
    node = _parse_bexp(t)
    t.eat(")")
    return node


def _parse_stmt(t: Tokens) -> Stmt:
    node = _parse_item(t)
    if t.peek() == ";":
        t.next()
        return Seq(node, _parse_stmt(t))
    return node


def _parse_item(t: Tokens) -> Stmt:
    if t.peek() == "skip":
        t.next()
        return Skip()
    if t.peek() == "(":
        t.next()
        node = _parse_stmt(t)
        t.eat(")")
        return node
    if t.peek() == "var":
        t.next()
        return VarDecl(t.ident())
    if t.peek() == "array":
        t.next()
        name = t.ident()
        t.eat("[")
        size = t.integer()
        t.eat("]")
        if size < 0:
            raise ParseError("array size must be non-negative")
        return ArrDecl(name, size)
    if t.peek() == "if":
        t.next()
        cond = _parse_bexp(t)
        t.eat("then")
        then = _parse_item(t)
        t.eat("else")
        return If(cond, then, _parse_item(t))
    if t.peek() == "while":
        t.next()
        cond = _parse_bexp(t)
        t.eat("do")
        return While(cond, _parse_item(t))
    if t.peek() == "call":
        t.next()
        f = t.ident()
        t.eat("(")
        args = []
        while t.peek() not in (";", ")"):
            args.append(_parse_aexp(t))
            if t.peek() == ",":
                t.next()
        recvs = []
        if t.peek() == ";":
            t.next()
            while t.peek() != ")":
                recvs.append(t.ident())
                if t.peek() == ",":
                    t.next()
        t.eat(")")
        return Call(f, tuple(args), tuple(recvs))
    name = t.ident()
    if t.peek() == "[":
        t.next()
        idx = _parse_aexp(t)
        t.eat("]")
        t.eat(":=")
        return ArrAssign(name, idx, _parse_aexp(t))
    t.eat(":=")
    return Assign(name, _parse_aexp(t))


def parse_stmt(src: str) -> Stmt:
    t = _toks(src)
    node = _parse_stmt(t)
    t.expect_end()
    return node


def parse_functions(src: str) -> ExtProgram:
    """Zero or more `fun f(p1, p2) returns (r1) { stmt }` definitions."""
    t = _toks(src)
    funcs = []
    while not t.at_end():
        t.eat("fun")
        name = t.ident()
        t.eat("(")
        params = []
        while t.peek() != ")":
            params.append(t.ident())
            if t.peek() == ",":
                t.next()
        t.eat(")")
        t.eat("returns")
        t.eat("(")
        rets = []
        while t.peek() != ")":
            rets.append(t.ident())
            if t.peek() == ",":
                t.next()
        t.eat(")")
        t.eat("{")
        depth = 1
        mark = t.save()
        # Find the matching closing brace, then parse the body in between.
        while depth:
            tok = t.next()
            if tok == "{":
                depth += 1
            elif tok == "}":
                depth -= 1
        end = t.save()
        t.restore(mark)
        body = _parse_stmt(t)
        if t.save() != end - 1:
            raise ParseError("trailing input in function body", t.pos())
        t.next()  # the closing brace
        if len(set(params)) != len(params):
            raise ParseError("duplicate parameter names in %s" % name)
        funcs.append((name, Func(tuple(params), tuple(rets), body)))
    return ExtProgram(tuple(funcs))


def parse_state(src: str) -> ExtState:
    """`x=3, S=[1,3,5]@2, T=[0]@0, nextloc=12` assignment list.

    Array entries allocate bases in order of appearance starting at 0; an
    entry `S=[c0,..]@i` gives S extent i+len (indices 0..i+len-1) with the
    contents placed from index i.  `nextloc=` overrides the computed value.
    """
    src = src.strip()
    names: dict[str, int] = {}
    heap: dict[int, int] = {}
    base = 0
    explicit_nextloc = None
    if src:
        t = _toks(src)
        while True:
            n = t.ident()
            t.eat("=")
            if t.peek() == "[":
                t.next()
                contents = []
                while t.peek() != "]":
                    contents.append(t.integer())
                    if t.peek() == ",":
                        t.next()
                t.eat("]")
                start = 0
                if t.peek() == "@":
                    t.next()
                    start = t.integer()
                names[n] = base
                for off, v in enumerate(contents):
                    heap[base + start + off] = v
                base += start + len(contents)
            elif n == "nextloc":
                explicit_nextloc = t.integer()
            else:
                names[n] = t.integer()
            if t.peek() != ",":
                break
            t.next()
        t.expect_end()
    nextloc = base if explicit_nextloc is None else explicit_nextloc
    return ExtState.of(names, heap, nextloc)


def parse_config(src: str) -> ExtConfig:
    """`functions || stmt || state` (functions and state optional)."""
    parts = src.split("||")
    if len(parts) == 1:
        funcs, prog, state = "", parts[0], ""
    elif len(parts) == 2:
        funcs, prog, state = "", parts[0], parts[1]
    elif len(parts) == 3:
        funcs, prog, state = parts
    else:
        raise ParseError("too many '||' sections")
    return ExtConfig(parse_stmt(prog), parse_state(state),
                     parse_functions(funcs))


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def print_aexp(a: AExp) -> str:
    match a:
        case ANum(v):
            return str(v)
        case AName(n):
            return n
        case AIdx(n, ix):
            return "%s[%s]" % (n, print_aexp(ix))
        case ABin(op, l, r):
            return "(%s %s %s)" % (print_aexp(l), op, print_aexp(r))


def print_bexp(b: BExp) -> str:
    match b:
        case BBool(v):
            return "true" if v else "false"
        case BCmp(op, l, r):
            return "%s %s %s" % (print_aexp(l), op, print_aexp(r))
        case BAnd(l, r):
            return "(%s and %s)" % (print_bexp(l), print_bexp(r))
        case BNot(x):
            return "not %s" % print_bexp(x)


def print_stmt(s: Stmt) -> str:
    match s:
        case Skip():
            return "skip"
        case VarDecl(x):
            return "var %s" % x
        case ArrDecl(x, size):
            return "array %s[%d]" % (x, size)
        case Assign(x, a):
            return "%s := %s" % (x, print_aexp(a))
        case ArrAssign(x, ix, a):
            return "%s[%s] := %s" % (x, print_aexp(ix), print_aexp(a))
        case Seq(a, b):
            return "%s ; %s" % (print_stmt(a), print_stmt(b))
        case If(b, a, c):
            return "if %s then (%s) else (%s)" % (
                print_bexp(b), print_stmt(a), print_stmt(c))
        case While(b, a):
            return "while %s do (%s)" % (print_bexp(b), print_stmt(a))
        case Call(f, args, recvs):
            return "call %s(%s; %s)" % (
                f, ", ".join(print_aexp(a) for a in args), ", ".join(recvs))


def pretty(value) -> str:
    if isinstance(value, ExtConfig):
        return "<%s | %s>" % (print_stmt(value.stmt), value.state)
    if isinstance(value, ExtState):
        return str(value)
    return repr(value)


PLUGIN = LanguagePlugin(
    name="extwhile",
    rules=ext_rules,
    parse_config=parse_config,
    parse_result=parse_state,
    pretty=pretty,
)
