"""An eager functional language: expressions, canonical forms,
substitution of canonical forms for variables, and the big-step rules.

Evaluation produces canonical forms: integers, booleans, lambda
abstractions, and lists built from nil and cons of canonical forms.
Substitution is capture-as-written: no alpha-renaming is performed, so
substituting an open lambda canonical form can capture variables.  The
bundled programs only substitute closed forms and never trigger this.
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
class FNum:
    value: int


@dataclass(frozen=True)
class FBool:
    value: bool


@dataclass(frozen=True)
class FBin:
    op: str  # + - * / = <
    left: "FExpr"
    right: "FExpr"


@dataclass(frozen=True)
class FNot:
    arg: "FExpr"


@dataclass(frozen=True)
class FAnd:
    left: "FExpr"
    right: "FExpr"


@dataclass(frozen=True)
class FIf:
    cond: "FExpr"
    then: "FExpr"
    orelse: "FExpr"


@dataclass(frozen=True)
class FNil:
    pass


@dataclass(frozen=True)
class FCons:
    head: "FExpr"
    tail: "FExpr"


@dataclass(frozen=True)
class FListCase:
    scrutinee: "FExpr"
    on_nil: "FExpr"
    on_cons: "FExpr"


@dataclass(frozen=True)
class FVar:
    name: str


@dataclass(frozen=True)
class FApp:
    func: "FExpr"
    arg: "FExpr"


@dataclass(frozen=True)
class FLam:
    var: str
    body: "FExpr"


@dataclass(frozen=True)
class FLetRec:
    var: str
    bound: "FLam"
    body: "FExpr"


FExpr = (FNum | FBool | FBin | FNot | FAnd | FIf | FNil | FCons | FListCase
         | FVar | FApp | FLam | FLetRec)


def is_canonical(e: FExpr) -> bool:
    """Canonical forms: integers, booleans, lambdas, nil, cons of canonicals."""
    match e:
        case FNum(_) | FBool(_) | FLam(_, _) | FNil():
            return True
        case FCons(h, t):
            return is_canonical(h) and is_canonical(t)
    return False


def as_canonical(e: FExpr) -> Optional[FExpr]:
    return e if is_canonical(e) else None


# ---------------------------------------------------------------------------
# Substitution of a canonical form for a variable
# ---------------------------------------------------------------------------

def subst(e: FExpr, x: str, c: FExpr) -> FExpr:
    match e:
        case FNum(_) | FBool(_) | FNil():
            return e
        case FBin(op, l, r):
            return FBin(op, subst(l, x, c), subst(r, x, c))
        case FNot(a):
            return FNot(subst(a, x, c))
        case FAnd(l, r):
            return FAnd(subst(l, x, c), subst(r, x, c))
        case FIf(a, b, d):
            return FIf(subst(a, x, c), subst(b, x, c), subst(d, x, c))
        case FCons(h, t):
            return FCons(subst(h, x, c), subst(t, x, c))
        case FListCase(s, n, k):
            return FListCase(subst(s, x, c), subst(n, x, c), subst(k, x, c))
        case FVar(v):
            return c if v == x else e
        case FApp(f, a):
            return FApp(subst(f, x, c), subst(a, x, c))
        case FLam(v, body):
            if v == x:
                return e
            return FLam(v, subst(body, x, c))
        case FLetRec(v, bound, body):
            # The binder shadows the body, but substitution still enters
            # the bound lambda (which itself shadows via its own binder).
            new_bound = subst(bound, x, c)
            if v == x:
                return FLetRec(v, new_bound, body)
            return FLetRec(v, new_bound, subst(body, x, c))
    raise ValueError("bad expression: %r" % (e,))


# ---------------------------------------------------------------------------
# Semantic rules
# ---------------------------------------------------------------------------

def _interp_arith(op: str, x: int, y: int) -> Optional[FExpr]:
    if op == "+":
        return FNum(x + y)
    if op == "-":
        return FNum(x - y)
    if op == "*":
        return FNum(x * y)
    if op == "/":
        # Division is partial at zero; floor division otherwise.
        return None if y == 0 else FNum(x // y)
    if op == "=":
        return FBool(x == y)
    if op == "<":
        return FBool(x < y)
    raise ValueError("bad operator: %r" % op)


def fun_rules(e: FExpr) -> list:
    """Rule instances concluding at `e`.

    A canonical expression is offered only the evaluates-to-itself axiom;
    the structural rules would reproduce the same result, and pruning them
    keeps evaluation deterministic.
    """
    if is_canonical(e):
        return [Conclude(e)]
    match e:
        case FBin(op, e1, e2):
            def after_left(c1, _op=op, _e2=e2):
                if not isinstance(c1, FNum):
                    return None
                def after_right(c2, _c1=c1):
                    if not isinstance(c2, FNum):
                        return None
                    out = _interp_arith(_op, _c1.value, c2.value)
                    return None if out is None else Conclude(out)
                return Need(_e2, after_right)
            return [Need(e1, after_left)]
        case FNot(e1):
            return [Need(e1, lambda c: Conclude(FBool(not c.value))
                         if isinstance(c, FBool) else None)]
        case FAnd(e1, e2):
            def after_left(c1, _e2=e2):
                if not isinstance(c1, FBool):
                    return None
                return Need(_e2, lambda c2, _c1=c1:
                            Conclude(FBool(_c1.value and c2.value))
                            if isinstance(c2, FBool) else None)
            return [Need(e1, after_left)]
        case FIf(cond, then, orelse):
            return [
                Need(cond, lambda c, _b=then:
                     Need(_b, lambda r: Conclude(r))
                     if c == FBool(True) else None),
                Need(cond, lambda c, _b=orelse:
                     Need(_b, lambda r: Conclude(r))
                     if c == FBool(False) else None),
            ]
        case FCons(e1, e2):
            return [Need(e1, lambda c: Need(
                e2, lambda c2, _c=c: Conclude(FCons(_c, c2))))]
        case FListCase(scrut, on_nil, on_cons):
            return [
                Need(scrut, lambda c, _b=on_nil:
                     Need(_b, lambda r: Conclude(r))
                     if c == FNil() else None),
                Need(scrut, lambda c, _b=on_cons:
                     Need(FApp(FApp(_b, c.head), c.tail),
                          lambda r: Conclude(r))
                     if isinstance(c, FCons) else None),
            ]
        case FApp(f, a):
            def after_func(cf, _a=a):
                if not isinstance(cf, FLam):
                    return None
                def after_arg(ca, _cf=cf):
                    if not is_canonical(ca):
                        return None
                    return Need(subst(_cf.body, _cf.var, ca),
                                lambda r: Conclude(r))
                return Need(_a, after_arg)
            return [Need(f, after_func)]
        case FLetRec(v, bound, body):
            if bound.var == v:
                return []
            unrolled = FApp(FLam(v, body),
                            FLam(bound.var, FLetRec(v, bound, bound.body)))
            return [Need(unrolled, lambda c: Conclude(c))]
        case FVar(_):
            return []
    raise ValueError("bad expression: %r" % (e,))


# ---------------------------------------------------------------------------
# Concrete syntax
# ---------------------------------------------------------------------------

_SYMBOLS = ["\\", ".", "(", ")", "::", "+", "-", "*", "/", "<=", "<", "=",
            ","]
_KEYWORDS = {"true", "false", "and", "not", "if", "then", "else", "nil",
             "listcase", "of", "letrec", "in"}


def _toks(src: str) -> Tokens:
    return Tokens(src, _SYMBOLS, _KEYWORDS, ident_extra="'")


def _parse_expr(t: Tokens) -> FExpr:
    if t.peek() == "\\":
        t.next()
        v = t.ident()
        t.eat(".")
        return FLam(v, _parse_expr(t))
    if t.peek() == "letrec":
        t.next()
        v = t.ident()
        t.eat("=")
        bound = _parse_expr(t)
        if not isinstance(bound, FLam):
            raise ParseError("letrec must bind a lambda abstraction")
        t.eat("in")
        return FLetRec(v, bound, _parse_expr(t))
    if t.peek() == "if":
        t.next()
        cond = _parse_expr(t)
        t.eat("then")
        then = _parse_expr(t)
        t.eat("else")
        return FIf(cond, then, _parse_expr(t))
    return _parse_conj(t)


def _parse_conj(t: Tokens) -> FExpr:
    node = _parse_neg(t)
    while t.peek() == "and":
        t.next()
        node = FAnd(node, _parse_neg(t))
    return node


def _parse_neg(t: Tokens) -> FExpr:
    if t.peek() == "not":
        t.next()
        return FNot(_parse_neg(t))
    return _parse_cons(t)


def _parse_cons(t: Tokens) -> FExpr:
    node = _parse_cmp(t)
    if t.peek() == "::":
        t.next()
        return FCons(node, _parse_cons(t))
    return node


def _parse_cmp(t: Tokens) -> FExpr:
    node = _parse_add(t)
    if t.peek() in ("=", "<", "<="):
        op = t.next()
        right = _parse_add(t)
        if op == "<=":
            # a <= b is sugar for not (b < a).
            return FNot(FBin("<", right, node))
        return FBin(op, node, right)
    return node


def _parse_add(t: Tokens) -> FExpr:
    node = _parse_mul(t)
    while t.peek() in ("+", "-"):
        op = t.next()
        node = FBin(op, node, _parse_mul(t))
    return node


def _parse_mul(t: Tokens) -> FExpr:
    node = _parse_app(t)
    while t.peek() in ("*", "/"):
        op = t.next()
        node = FBin(op, node, _parse_app(t))
    return node


def _starts_atom(t: Tokens) -> bool:
    if t.peek_kind() in ("int", "ident"):
        return True
    return t.peek() in ("true", "false", "nil", "(", "listcase")


def _parse_app(t: Tokens) -> FExpr:
    node = _parse_atom(t, allow_neg=True)
    while _starts_atom(t):
        node = FApp(node, _parse_atom(t, allow_neg=False))
    return node


def _parse_atom(t: Tokens, allow_neg: bool) -> FExpr:
    if allow_neg and t.peek() == "-":
        return FNum(t.integer())
    if t.peek_kind() == "int":
        return FNum(t.integer())
    if t.peek() == "true":
        t.next()
        return FBool(True)
    if t.peek() == "false":
        t.next()
        return FBool(False)
    if t.peek() == "nil":
        t.next()
        return FNil()
    if t.peek() == "listcase":
        t.next()
        scrut = _parse_expr(t)
        t.eat("of")
        t.eat("(")
        on_nil = _parse_expr(t)
        t.eat(",")
        on_cons = _parse_expr(t)
        t.eat(")")
        return FListCase(scrut, on_nil, on_cons)
    if t.peek() == "(":
        t.next()
        node = _parse_expr(t)
        t.eat(")")
        return node
    return FVar(t.ident())


def parse_expr(src: str) -> FExpr:
    t = _toks(src)
    node = _parse_expr(t)
    t.expect_end()
    return node


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def print_expr(e: FExpr) -> str:
    match e:
        case FNum(v):
            return str(v)
        case FBool(v):
            return "true" if v else "false"
        case FBin(op, l, r):
            return "(%s %s %s)" % (print_expr(l), op, print_expr(r))
        case FNot(a):
            return "(not %s)" % print_expr(a)
        case FAnd(l, r):
            return "(%s and %s)" % (print_expr(l), print_expr(r))
        case FIf(c, a, b):
            return "(if %s then %s else %s)" % (
                print_expr(c), print_expr(a), print_expr(b))
        case FNil():
            return "nil"
        case FCons(h, t):
            return "(%s :: %s)" % (print_expr(h), print_expr(t))
        case FListCase(s, n, k):
            return "(listcase %s of (%s, %s))" % (
                print_expr(s), print_expr(n), print_expr(k))
        case FVar(v):
            return v
        case FApp(f, a):
            return "(%s %s)" % (print_expr(f), print_expr(a))
        case FLam(v, b):
            return "(\\%s. %s)" % (v, print_expr(b))
        case FLetRec(v, bound, body):
            return "(letrec %s = %s in %s)" % (
                v, print_expr(bound), print_expr(body))


def pretty(value) -> str:
    return print_expr(value)


PLUGIN = LanguagePlugin(
    name="fun",
    rules=fun_rules,
    parse_config=parse_expr,
    parse_result=parse_expr,
    pretty=pretty,
)
