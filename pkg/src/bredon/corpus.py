"""Builtin complexes and the descriptor micro-grammar used by the CLI.

    descriptor := "C" ORDER ":" expr
    expr       := term ("+" term)*            (+ is smash, i.e. direct sum of reps)
    term       := [COUNT] atom ["^" POWER]    (2eps == eps^2 == eps+eps)
    atom       := eps | sigma | lambda(J) | trivial-sphere(K) | point | S0
                | wedge(expr, expr, ...) | smash(expr, expr, ...)

Examples: ``C8:lambda(1)+2eps``, ``C2:sigma+eps``, ``C2:wedge(eps, eps^2)``.
"""

from __future__ import annotations

import re

from .errors import DomainError, SchemaError
from .gcw import (EPS, SIGMA, GCWComplex, Irreducible, RepresentationDescriptor,
                  point, rep_sphere, rotation, smash, sphere0, trivial_sphere, wedge)
from .orbitcat import GroupSpec, is_prime

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9-]*)|(.))")


def parse_group(text: str) -> GroupSpec:
    m = re.fullmatch(r"\s*C(\d+)\s*", text)
    if not m:
        raise SchemaError("group", f"expected C<order>, got {text!r}")
    order = int(m.group(1))
    if order == 1:
        return GroupSpec(2, 0)
    p = next(d for d in range(2, order + 1) if order % d == 0)
    n, rest = 0, order
    while rest % p == 0:
        rest //= p
        n += 1
    if rest != 1 or not is_prime(p):
        raise SchemaError("group", f"C{order} is not a cyclic p-group")
    return GroupSpec(p, n)


class _Parser:
    def __init__(self, text: str, group: GroupSpec):
        self.tokens = []
        for num, word, sym in _TOKEN.findall(text):
            if num:
                self.tokens.append(("num", int(num)))
            elif word:
                self.tokens.append(("word", word))
            elif sym.strip():
                self.tokens.append(("sym", sym))
        self.pos = 0
        self.group = group
        self.text = text

    def error(self, msg):
        raise SchemaError("builtin", f"{msg} in {self.text!r}")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            self.error(f"expected {value or kind}, found {tok[1]!r}")
        self.pos += 1
        return tok[1]

    def parse(self):
        node = self.expr()
        if self.pos != len(self.tokens):
            self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        terms = [self.term()]
        while self.peek() == ("sym", "+"):
            self.take()
            terms.append(self.term())
        return ("sum", [t for term in terms for t in term])

    def term(self):
        count = 1
        if self.peek()[0] == "num":
            count = self.take()
        atom = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            count *= self.take("num")
        if count < 1:
            self.error("multiplicity must be positive")
        return [atom] * count

    def atom(self):
        name = self.take("word")
        if name in ("eps", "sigma", "point", "S0"):
            return (name,)
        if name in ("lambda", "trivial-sphere"):
            self.take("sym", "(")
            arg = self.take("num")
            self.take("sym", ")")
            return (name, arg)
        if name in ("wedge", "smash"):
            self.take("sym", "(")
            args = [self.expr()]
            while self.peek() == ("sym", ","):
                self.take()
                args.append(self.expr())
            self.take("sym", ")")
            return (name, args)
        self.error(f"unknown summand {name!r}")


_IRREDUCIBLE = {"eps": lambda a: EPS, "sigma": lambda a: SIGMA, "lambda": lambda a: rotation(a[1])}


def _build(node, g: GroupSpec) -> GCWComplex:
    kind = node[0]
    if kind == "sum":
        atoms = node[1]
        if all(a[0] in _IRREDUCIBLE for a in atoms):
            return rep_sphere(g, RepresentationDescriptor(
                tuple(_IRREDUCIBLE[a[0]](a) for a in atoms)))
        x = _build(atoms[0], g)
        for a in atoms[1:]:
            x = smash(x, _build(a, g))
        return x
    if kind in _IRREDUCIBLE:
        return rep_sphere(g, RepresentationDescriptor((_IRREDUCIBLE[kind](node),)))
    if kind == "trivial-sphere":
        return trivial_sphere(g, node[1])
    if kind == "point":
        return point(g)
    if kind == "S0":
        return sphere0(g)
    parts = [_build(a, g) for a in node[1]]
    op = wedge if kind == "wedge" else smash
    x = parts[0]
    for y in parts[1:]:
        x = op(x, y)
    return x


def builtin(descriptor: str) -> GCWComplex:
    """Build the complex named by a descriptor such as ``C4:lambda(1)+eps``."""
    if ":" not in descriptor:
        raise SchemaError("builtin", f"expected C<order>:<expr>, got {descriptor!r}")
    head, body = descriptor.split(":", 1)
    g = parse_group(head)
    try:
        return _build(_Parser(body, g).parse(), g)
    except DomainError as exc:
        raise SchemaError("builtin", str(exc)) from None


CORPUS = (
    # irreducible representation spheres
    "C2:eps", "C2:sigma", "C2:lambda(1)",
    "C4:eps", "C4:sigma", "C4:lambda(1)", "C4:lambda(2)", "C4:lambda(3)",
    "C8:eps", "C8:sigma", "C8:lambda(1)", "C8:lambda(2)", "C8:lambda(3)", "C8:lambda(4)",
    "C3:eps", "C3:lambda(1)", "C3:lambda(2)",
    "C9:eps", "C9:lambda(1)", "C9:lambda(3)", "C9:lambda(4)",
    # trivial spheres and small things
    "C2:point", "C4:S0", "C2:trivial-sphere(1)", "C4:trivial-sphere(2)", "C3:trivial-sphere(3)",
    # representation spheres of reducible representations
    "C2:sigma+eps", "C2:sigma^2", "C4:lambda(1)+sigma", "C8:lambda(1)+2eps",
    "C3:lambda(1)+lambda(1)", "C9:lambda(3)+eps",
    # wedges and smashes
    "C2:wedge(eps, eps^2)", "C2:wedge(sigma, lambda(1))", "C4:wedge(lambda(1), lambda(2)+eps)",
    "C3:wedge(lambda(1), eps, trivial-sphere(3))", "C2:smash(wedge(eps, sigma), sigma)",
    "C4:smash(wedge(sigma, eps), lambda(1))",
)


def corpus(names=CORPUS) -> list:
    """[(descriptor, complex)] for the builtin corpus."""
    return [(name, builtin(name)) for name in names]
