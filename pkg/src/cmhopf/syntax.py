"""Text, LaTeX and JSON renderers for Hopf polynomials and tensors, plus the parsers.

Expression grammar (whitespace is free, juxtaposition multiplies)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor+
    factor  := atom ['^' INT]
    atom    := INT ['/' INT] | 'X(' i ')' | 'Y(' j ',' k ')'
             | 'd(' k ';' j ',' i [';' l1 l2 ...] ')' | '(' expr ')'

Tensors join two (or three) products with ``(x)``.  Crossed-product elements
are written ``f * U[psi]`` with ``psi`` a comma-separated list of component
polynomials, ``U[id]`` for the identity.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .hopf import D, Gen, HopfPoly, IndexOutOfRange, Tensor, X, XK, Y, YK, normal_form


class ExprSyntaxError(ValueError):
    """Raised on malformed input; ``pos`` is the offending character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class ParseIndexError(IndexOutOfRange):
    """An index outside ``1..dim`` met while parsing."""

    def __init__(self, message: str, pos: int):
        super().__init__(message)
        self.pos = pos


# -- ordering and coefficient display -----------------------------------------------------


def _mono_key(m: tuple) -> tuple:
    return (-len(m), m)


def _sorted_terms(p: HopfPoly):
    return sorted(p.terms.items(), key=lambda kv: _mono_key(kv[0]))


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _join(pieces: list[tuple[Fraction, str]]) -> str:
    """Join (coefficient, body) pairs; an empty body means the unit."""
    if not pieces:
        return "0"
    out = []
    for n, (c, body) in enumerate(pieces):
        mag = abs(c)
        if not body:
            s = _fmt_coeff(mag)
        elif mag == 1:
            s = body
        else:
            s = f"{_fmt_coeff(mag)} {body}"
        if n == 0:
            out.append(s if c > 0 else f"-{s}")
        else:
            out.append(f" + {s}" if c > 0 else f" - {s}")
    return "".join(out)


# -- text --------------------------------------------------------------------------------


def format_monomial(m: tuple) -> str:
    return " ".join(str(g) for g in m)


def format_poly(p: HopfPoly) -> str:
    return _join([(c, format_monomial(m)) for m, c in _sorted_terms(p)])


def _tensor_sorted(t: Tensor):
    return sorted(t.terms.items(), key=lambda kv: tuple(_mono_key(m) for m in kv[0]))


def format_tensor(t: Tensor) -> str:
    pieces = []
    for key, c in _tensor_sorted(t):
        body = " (x) ".join(format_monomial(m) or "1" for m in key)
        pieces.append((c, body))
    return _join(pieces)


# -- LaTeX --------------------------------------------------------------------------------


def latex_gen(g: Gen) -> str:
    if g.kind == XK:
        return f"X_{{{g.idx[0]}}}"
    if g.kind == YK:
        return f"Y^{{{g.idx[0]}}}_{{{g.idx[1]}}}"
    k, j, i = g.idx
    lower = f"{j}{i}" + (f",{''.join(map(str, g.tail))}" if g.tail else "")
    return f"\\delta^{{{k}}}_{{{lower}}}"


def latex_monomial(m: tuple) -> str:
    parts = []
    n = 0
    while n < len(m):
        run = 1
        while n + run < len(m) and m[n + run] == m[n]:
            run += 1
        body = latex_gen(m[n])
        if run > 1:
            # generators already carry superscripts, so powers need braces
            body = f"{{{body}}}^{{{run}}}"
        parts.append(body)
        n += run
    return " ".join(parts)


def _latex_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def _latex_join(pieces: list[tuple[Fraction, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for n, (c, body) in enumerate(pieces):
        mag = abs(c)
        s = _latex_coeff(mag) if not body else (body if mag == 1 else f"{_latex_coeff(mag)}\\, {body}")
        if n == 0:
            out.append(s if c > 0 else f"-{s}")
        else:
            out.append(f" + {s}" if c > 0 else f" - {s}")
    return "".join(out)


def latex_poly(p: HopfPoly) -> str:
    return _latex_join([(c, latex_monomial(m)) for m, c in _sorted_terms(p)])


def latex_tensor(t: Tensor) -> str:
    pieces = []
    for key, c in _tensor_sorted(t):
        pieces.append((c, " \\otimes ".join(latex_monomial(m) or "1" for m in key)))
    return _latex_join(pieces)


# -- JSON ---------------------------------------------------------------------------------


def gen_to_json(g: Gen) -> dict[str, Any]:
    if g.kind == XK:
        return {"kind": "X", "index": g.idx[0]}
    if g.kind == YK:
        return {"kind": "Y", "upper": g.idx[0], "lower": g.idx[1]}
    return {"kind": "delta", "upper": g.idx[0], "lower": list(g.idx[1:]), "tail": list(g.tail)}


def gen_from_json(d: dict) -> Gen:
    kind = d["kind"]
    if kind == "X":
        return X(d["index"])
    if kind == "Y":
        return Y(d["upper"], d["lower"])
    if kind == "delta":
        j, i = d["lower"]
        return D(d["upper"], j, i, d.get("tail", ()))
    raise ValueError(f"unknown generator kind {kind!r}")


def poly_to_json(p: HopfPoly) -> list[dict]:
    return [
        {"coeff": _fmt_coeff(c), "monomial": [gen_to_json(g) for g in m]}
        for m, c in _sorted_terms(p)
    ]


def poly_from_json(data: list[dict], dim: int) -> HopfPoly:
    out = HopfPoly.zero(dim)
    for item in data:
        out = out + normal_form([gen_from_json(g) for g in item["monomial"]], dim, Fraction(item["coeff"]))
    return out


def tensor_to_json(t: Tensor) -> list[dict]:
    out = []
    for key, c in _tensor_sorted(t):
        entry: dict[str, Any] = {"coeff": _fmt_coeff(c)}
        for name, m in zip(("left", "middle", "right") if len(key) == 3 else ("left", "right"), key):
            entry[name] = [gen_to_json(g) for g in m]
        out.append(entry)
    return out


def tensor_from_json(data: list[dict], dim: int) -> Tensor:
    if not data:
        return Tensor(dim, 2)
    names = ("left", "middle", "right") if "middle" in data[0] else ("left", "right")
    out = Tensor(dim, len(names))
    for item in data:
        slots = [normal_form([gen_from_json(g) for g in item[n]], dim) for n in names]
        out = out + Tensor.pure(dim, *slots) * Fraction(item["coeff"])
    return out


def render(obj, fmt: str = "text") -> str:
    """Render a HopfPoly or Tensor in ``text``, ``latex`` or ``json``."""
    is_tensor = isinstance(obj, Tensor)
    if fmt == "text":
        return format_tensor(obj) if is_tensor else format_poly(obj)
    if fmt == "latex":
        return latex_tensor(obj) if is_tensor else latex_poly(obj)
    if fmt == "json":
        payload = tensor_to_json(obj) if is_tensor else poly_to_json(obj)
        return json.dumps(payload)
    raise ValueError(f"unknown format {fmt!r}")


# -- parsing -------------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\(x\))|(\d+)|([XYd])\s*\(|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            tokens.append(("TENSOR", "(x)", start))
        elif m.group(2):
            tokens.append(("INT", m.group(2), start))
        elif m.group(3):
            tokens.append(("GEN", m.group(3), start))
        else:
            tokens.append(("SYM", m.group(4), start))
        pos = m.end()
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dim: int):
        self.text = text
        self.dim = dim
        self.tokens = _tokenize(text)
        self.n = 0

    def peek(self):
        return self.tokens[self.n]

    def take(self):
        tok = self.tokens[self.n]
        self.n += 1
        return tok

    def expect(self, sym: str):
        kind, val, pos = self.take()
        if val != sym or kind not in ("SYM",):
            raise ExprSyntaxError(f"expected {sym!r}, found {val or 'end of input'!r}", pos)

    def integer(self) -> int:
        kind, val, pos = self.take()
        if kind != "INT":
            raise ExprSyntaxError(f"expected an integer, found {val or 'end of input'!r}", pos)
        return int(val)

    def at_factor(self) -> bool:
        kind, val, _ = self.peek()
        return kind in ("INT", "GEN") or (kind == "SYM" and val == "(")

    def expr(self) -> list:
        """Sum of terms; each term is a list of factor slots split by (x)."""
        terms = []
        sign = 1
        kind, val, _ = self.peek()
        if kind == "SYM" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        terms.append((sign, self.tensor_term()))
        while True:
            kind, val, _ = self.peek()
            if kind == "SYM" and val in "+-":
                self.take()
                terms.append((-1 if val == "-" else 1, self.tensor_term()))
            else:
                return terms

    def tensor_term(self) -> list[HopfPoly]:
        slots = [self.product()]
        while self.peek()[0] == "TENSOR":
            self.take()
            slots.append(self.product())
        return slots

    def product(self) -> HopfPoly:
        if not self.at_factor():
            kind, val, pos = self.peek()
            raise ExprSyntaxError(f"expected a factor, found {val or 'end of input'!r}", pos)
        out = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "SYM" and val == "*":
                # an explicit '*' is optional between factors
                self.take()
                if not self.at_factor():
                    kind, val, pos = self.peek()
                    raise ExprSyntaxError(f"expected a factor, found {val or 'end of input'!r}", pos)
            elif not self.at_factor():
                return out
            out = out * self.factor()

    def factor(self) -> HopfPoly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "SYM" and val == "^":
            self.take()
            base = base ** self.integer()
        return base

    def atom(self) -> HopfPoly:
        kind, val, pos = self.take()
        if kind == "INT":
            num = int(val)
            k2, v2, _ = self.peek()
            if k2 == "SYM" and v2 == "/":
                self.take()
                den = self.integer()
                if den == 0:
                    raise ExprSyntaxError("zero denominator", pos)
                return HopfPoly.one(self.dim, Fraction(num, den))
            return HopfPoly.one(self.dim, num)
        if kind == "GEN":
            return HopfPoly.gen(self.dim, self.gen_body(val, pos))
        if kind == "SYM" and val == "(":
            terms = self.expr()
            self.expect(")")
            return _collapse(terms, 1, pos, self.dim)
        raise ExprSyntaxError(f"unexpected {val or 'end of input'!r}", pos)

    def gen_body(self, letter: str, pos: int) -> Gen:
        """The arguments of ``X(``, ``Y(`` or ``d(`` after the opening parenthesis."""
        if letter == "X":
            g = X(self.integer())
        elif letter == "Y":
            j = self.integer()
            self.expect(",")
            g = Y(j, self.integer())
        else:
            k = self.integer()
            self.expect(";")
            j = self.integer()
            self.expect(",")
            i = self.integer()
            tail = []
            kk, vv, _ = self.peek()
            if kk == "SYM" and vv == ";":
                self.take()
                while self.peek()[0] == "INT":
                    tail.append(self.integer())
                if not tail:
                    raise ExprSyntaxError("empty tail after ';'", self.peek()[2])
            g = D(k, j, i, tail)
        self.expect(")")
        for v in g.indices():
            if not 1 <= v <= self.dim:
                raise ParseIndexError(f"index {v} exceeds dim {self.dim}", pos)
        return g

    def finish(self):
        kind, val, pos = self.peek()
        if kind != "END":
            raise ExprSyntaxError(f"unexpected {val!r}", pos)


def _collapse(terms, arity: int, pos: int, dim: int):
    if arity == 1:
        out = HopfPoly.zero(dim)
        for sign, slots in terms:
            if len(slots) != 1:
                raise ExprSyntaxError("tensor product not allowed here", pos)
            out = out + slots[0] * sign
        return out
    out = Tensor(dim, arity)
    for sign, slots in terms:
        if len(slots) != arity:
            raise ExprSyntaxError(f"expected {arity} tensor factors, found {len(slots)}", pos)
        out = out + Tensor.pure(dim, *slots) * sign
    return out


def parse_poly(text: str, dim: int) -> HopfPoly:
    """Parse a Hopf expression and return its PBW normal form."""
    p = _Parser(text, dim)
    terms = p.expr()
    p.finish()
    return _collapse(terms, 1, 0, dim)


def parse_tensor(text: str, dim: int, arity: int = 2) -> Tensor:
    p = _Parser(text, dim)
    terms = p.expr()
    p.finish()
    if len(terms) == 1 and len(terms[0][1]) == 1 and terms[0][1][0].is_zero():
        return Tensor(dim, arity)
    return _collapse(terms, arity, 0, dim)


def parse_generator(text: str, dim: int) -> Gen:
    """Parse a single generator such as ``d(1;1,2;1 2)``."""
    p = _Parser(text, dim)
    kind, val, pos = p.take()
    if kind != "GEN":
        raise ExprSyntaxError("expected a single generator", pos)
    g = p.gen_body(val, pos)
    p.finish()
    return g


# -- crossed-product syntax ------------------------------------------------------------------


def format_crossed(element) -> str:
    from .crossed import CrossedElement

    assert isinstance(element, CrossedElement)
    if element.is_zero():
        return "0"
    return " + ".join(f"({f}) * U[{psi}]" for psi, f in element.sorted_items())


def parse_crossed(text: str, dim: int):
    """Parse ``f * U[psi] + g * U[phi] ...`` into a CrossedElement."""
    from .crossed import CrossedElement
    from .geometry import PolyDiffeo
    from .symb import parse_rational_function

    out = CrossedElement.zero(dim)
    pos = 0
    found = False
    for m in re.finditer(r"U\[([^\]]*)\]", text):
        segment = text[pos:m.start()].strip()
        pos = m.end()
        if segment.startswith("+"):
            segment = segment[1:].strip()
        elif found:
            raise ExprSyntaxError("expected '+' between crossed monomials", m.start())
        if not segment.endswith("*"):
            raise ExprSyntaxError("expected '*' before U[...]", m.start())
        ftext = segment[:-1].strip()
        if not ftext:
            raise ExprSyntaxError("missing coefficient function", m.start())
        body = m.group(1).strip()
        if body == "id":
            psi = PolyDiffeo.identity(dim)
        else:
            parts = [s.strip() for s in body.split(",")]
            if len(parts) != dim:
                raise ExprSyntaxError(f"expected {dim} components in U[...]", m.start())
            psi = PolyDiffeo.parse(parts, dim)
        out = out + CrossedElement.monomial(parse_rational_function(ftext, dim), psi)
        found = True
    if text[pos:].strip() or not found:
        raise ExprSyntaxError("trailing or missing crossed monomial", pos)
    return out
