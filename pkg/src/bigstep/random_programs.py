"""Seeded random configuration generators for the three bundled languages.

Used for differential testing (inference against derivation), and to build
the shallow loop-free corpus over which the most-informative specification
is checked.  Generated programs may be stuck or divergent; both are fine
for the checks they feed (stuck configurations derive nothing, divergence
is cut by the depth budget).
"""

from __future__ import annotations

import random

from . import lang_extwhile as ew
from . import lang_fun as fn
from . import lang_while as wh
from .kernel import seeded_rng

_VARS = ("x", "y", "z")


# ---------------------------------------------------------------------------
# While
# ---------------------------------------------------------------------------

def _wh_aexp(rng: random.Random, depth: int, ops: str = "+-*") -> wh.AExp:
    if depth <= 0 or rng.random() < 0.4:
        if rng.random() < 0.5:
            return wh.ANum(rng.randint(-3, 3))
        return wh.AVar(rng.choice(_VARS))
    op = rng.choice(ops)
    return wh.ABin(op, _wh_aexp(rng, depth - 1, ops),
                   _wh_aexp(rng, depth - 1, ops))


def _wh_bexp(rng: random.Random, depth: int) -> wh.BExp:
    if depth <= 0:
        return wh.BCmp(rng.choice("=<"), _wh_aexp(rng, 1), _wh_aexp(rng, 1))
    roll = rng.random()
    if roll < 0.15:
        return wh.BBool(rng.random() < 0.5)
    if roll < 0.35:
        return wh.BNot(_wh_bexp(rng, depth - 1))
    if roll < 0.55:
        return wh.BAnd(_wh_bexp(rng, depth - 1), _wh_bexp(rng, depth - 1))
    return wh.BCmp(rng.choice("=<"), _wh_aexp(rng, 1), _wh_aexp(rng, 1))


def _wh_stmt(rng: random.Random, depth: int, allow_loops: bool,
             in_loop: bool = False) -> wh.Stmt:
    # Inside loop bodies the arithmetic is additive only, so repeated
    # iterations cannot blow values up multiplicatively.
    ops = "+-" if in_loop else "+-*"
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.2:
            return wh.Skip()
        return wh.Assign(rng.choice(_VARS), _wh_aexp(rng, 2, ops))
    roll = rng.random()
    if allow_loops and roll < 0.2:
        # Bounded countdown loops terminate; budget cuts the rest.
        v = rng.choice(_VARS)
        body = wh.Seq(wh.Assign(v, wh.ABin("-", wh.AVar(v), wh.ANum(1))),
                      _wh_stmt(rng, depth - 1, False, True))
        return wh.While(wh.BCmp("<", wh.ANum(0), wh.AVar(v)), body)
    if roll < 0.55:
        return wh.Seq(_wh_stmt(rng, depth - 1, allow_loops, in_loop),
                      _wh_stmt(rng, depth - 1, allow_loops, in_loop))
    return wh.If(_wh_bexp(rng, 1),
                 _wh_stmt(rng, depth - 1, allow_loops, in_loop),
                 _wh_stmt(rng, depth - 1, allow_loops, in_loop))


def random_while_config(seed: int, index: int,
                        allow_loops: bool = True) -> wh.WhileConfig:
    rng = seeded_rng(seed, "while", index, allow_loops)
    state = wh.WhileState.of(
        {v: rng.randint(-2, 3) for v in _VARS if rng.random() < 0.7})
    return wh.WhileConfig(_wh_stmt(rng, 3, allow_loops), state)


# ---------------------------------------------------------------------------
# Extended While
# ---------------------------------------------------------------------------

_INC_PROGRAM = ew.ExtProgram((
    ("inc", ew.Func(("a",), ("r",),
                    ew.Assign("r", ew.ABin("+", ew.AName("a"),
                                           ew.ANum(1))))),
))


def _ew_aexp(rng: random.Random, depth: int,
             ops: str = "+-*/") -> ew.AExp:
    roll = rng.random()
    if depth <= 0 or roll < 0.35:
        if rng.random() < 0.5:
            return ew.ANum(rng.randint(-3, 3))
        return ew.AName(rng.choice(_VARS))
    if roll < 0.5:
        return ew.AIdx("A", _wh_to_ew(rng))
    op = rng.choice(ops)
    return ew.ABin(op, _ew_aexp(rng, depth - 1, ops),
                   _ew_aexp(rng, depth - 1, ops))


def _wh_to_ew(rng: random.Random) -> ew.AExp:
    if rng.random() < 0.6:
        return ew.ANum(rng.randint(0, 3))
    return ew.AName(rng.choice(_VARS))


def _ew_bexp(rng: random.Random, depth: int) -> ew.BExp:
    if depth <= 0:
        return ew.BCmp(rng.choice("=<"), _ew_aexp(rng, 1),
                       _ew_aexp(rng, 1))
    roll = rng.random()
    if roll < 0.2:
        return ew.BNot(_ew_bexp(rng, depth - 1))
    if roll < 0.4:
        return ew.BAnd(_ew_bexp(rng, depth - 1), _ew_bexp(rng, depth - 1))
    return ew.BCmp(rng.choice("=<"), _ew_aexp(rng, 1), _ew_aexp(rng, 1))


def _ew_stmt(rng: random.Random, depth: int, allow_loops: bool,
             in_loop: bool = False) -> ew.Stmt:
    ops = "+-/" if in_loop else "+-*/"
    if depth <= 0 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.1:
            return ew.Skip()
        if roll < 0.2:
            return ew.VarDecl(rng.choice(("w", "v")))
        if roll < 0.3:
            return ew.ArrDecl("B", rng.randint(0, 3))
        if roll < 0.45:
            return ew.ArrAssign("A", _wh_to_ew(rng), _ew_aexp(rng, 1, ops))
        if roll < 0.55:
            return ew.Call("inc", (_ew_aexp(rng, 1, ops),),
                           (rng.choice(_VARS),))
        return ew.Assign(rng.choice(_VARS), _ew_aexp(rng, 2, ops))
    roll = rng.random()
    if allow_loops and roll < 0.15:
        v = rng.choice(_VARS)
        body = ew.Seq(ew.Assign(v, ew.ABin("-", ew.AName(v), ew.ANum(1))),
                      _ew_stmt(rng, depth - 1, False, True))
        return ew.While(ew.BCmp("<", ew.ANum(0), ew.AName(v)), body)
    if roll < 0.55:
        return ew.Seq(_ew_stmt(rng, depth - 1, allow_loops, in_loop),
                      _ew_stmt(rng, depth - 1, allow_loops, in_loop))
    return ew.If(_ew_bexp(rng, 1),
                 _ew_stmt(rng, depth - 1, allow_loops, in_loop),
                 _ew_stmt(rng, depth - 1, allow_loops, in_loop))


def random_extwhile_config(seed: int, index: int,
                           allow_loops: bool = True) -> ew.ExtConfig:
    rng = seeded_rng(seed, "extwhile", index, allow_loops)
    names = {v: rng.randint(-2, 3) for v in _VARS if rng.random() < 0.8}
    heap = {}
    nextloc = 0
    if rng.random() < 0.7:
        size = rng.randint(1, 4)
        names["A"] = 0
        heap = {i: rng.randint(-3, 3) for i in range(size)}
        nextloc = size
    state = ew.ExtState.of(names, heap, nextloc)
    return ew.ExtConfig(_ew_stmt(rng, 3, allow_loops), state, _INC_PROGRAM)


# ---------------------------------------------------------------------------
# Functional
# ---------------------------------------------------------------------------

def _fn_expr(rng: random.Random, depth: int, bound: tuple) -> fn.FExpr:
    roll = rng.random()
    if depth <= 0 or roll < 0.3:
        choices = [fn.FNum(rng.randint(-3, 3)),
                   fn.FBool(rng.random() < 0.5), fn.FNil()]
        if bound and rng.random() < 0.5:
            return fn.FVar(rng.choice(bound))
        return rng.choice(choices)
    if roll < 0.5:
        op = rng.choice("+-*/=<")
        return fn.FBin(op, _fn_expr(rng, depth - 1, bound),
                       _fn_expr(rng, depth - 1, bound))
    if roll < 0.6:
        return fn.FIf(_fn_expr(rng, depth - 1, bound),
                      _fn_expr(rng, depth - 1, bound),
                      _fn_expr(rng, depth - 1, bound))
    if roll < 0.7:
        return fn.FCons(_fn_expr(rng, depth - 1, bound),
                        _fn_expr(rng, depth - 1, bound))
    if roll < 0.8:
        return fn.FListCase(
            _fn_expr(rng, depth - 1, bound),
            _fn_expr(rng, depth - 1, bound),
            fn.FLam("h", fn.FLam("t", _fn_expr(rng, depth - 1,
                                               bound + ("h", "t")))))
    if roll < 0.9:
        return fn.FNot(_fn_expr(rng, depth - 1, bound))
    v = rng.choice(("a", "b"))
    return fn.FApp(fn.FLam(v, _fn_expr(rng, depth - 1, bound + (v,))),
                   _fn_expr(rng, depth - 1, bound))


def random_fun_config(seed: int, index: int) -> fn.FExpr:
    rng = seeded_rng(seed, "fun", index)
    return _fn_expr(rng, 3, ())


# ---------------------------------------------------------------------------
# Corpora
# ---------------------------------------------------------------------------

def random_corpus(language: str, count: int, seed: int,
                  allow_loops: bool = True) -> list:
    if language == "while":
        return [random_while_config(seed, i, allow_loops)
                for i in range(count)]
    if language == "extwhile":
        return [random_extwhile_config(seed, i, allow_loops)
                for i in range(count)]
    if language == "fun":
        return [random_fun_config(seed, i) for i in range(count)]
    raise ValueError("unknown language %r" % language)


def loop_free_corpus(language: str, count: int, seed: int) -> list:
    """Shallow, loop-free configurations whose full derivations fit within
    a small depth bound (used for checks against the most-informative
    specification)."""
    if language == "fun":
        rng = seeded_rng(seed, "fun-loopfree", count)
        return [_fn_expr(rng, 2, ()) for _ in range(count)]
    return random_corpus(language, count, seed, allow_loops=False)
