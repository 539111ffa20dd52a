"""Job-file language.

A job file is a sequence of line-oriented statements::

    # Pell equation x^2 - 2 y^2 = 1
    field x^2-2 as s
    pep vars m,n over s
      x = (-1)^(m) * (1/2) * (3-2s)^(n) + (-1)^(m) * (1/2) * (3+2s)^(n)
      y = (1/(2s)) * (3-2s)^(n) - (1/(2s)) * (3+2s)^(n)
    end
    matrix A = [[3, 4], [2, 3]]
    point 3, -2
    run count-growth --thresholds 10^2,10^3,10^4

Numeric literals are exact rationals.  Exponents of the form ``^(...)``
may be integer linear forms in the declared variables; products and sums
of exponentials are expanded, and constant parts of exponents are folded
into coefficients.  ``print_job`` emits a canonical text that parses back
to an equal :class:`JobSpec`.
"""

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import poly
from .config import DEFAULT_CAPS
from .errors import MathDomainError, NonIntegerExponentCoefficient, ParseError, UnknownSymbol
from .exppoly import PepSystem, Term
from .matrixk import MatrixK
from .numfield import element_to_str, make_field

COMMANDS = {
    "height": {"tolerance", "format", "no-timestamp", "output"},
    "enumerate": {"box", "format", "no-timestamp", "max-cells", "workers", "output"},
    "count-growth": {"thresholds", "tolerance", "format", "no-timestamp", "max-cells", "output"},
    "minimal": {"box", "format", "no-timestamp", "max-cells", "tolerance", "workers", "output"},
    "evertse-scan": {"primes", "summands", "exponent-bound", "C", "format", "no-timestamp", "output"},
    "sl2-count": {"thresholds", "format", "no-timestamp", "output"},
    "jordan": {"matrix", "format", "no-timestamp", "output"},
    "semisimple": {"matrix", "format", "no-timestamp", "output"},
    "bg-to-pep": {"matrices", "format", "no-timestamp", "box", "output"},
    "degeneracy": {"component", "box", "format", "no-timestamp", "output"},
    "restrict": {"offset", "basis", "format", "no-timestamp", "output"},
    "relations": {"bound", "format", "no-timestamp", "output"},
    "membership-count": {"matrix", "n", "box", "format", "no-timestamp", "max-cells", "output"},
}
GLOBAL_FLAGS = {"config"}
BOOLEAN_FLAGS = {"no-timestamp"}


# ---------------------------------------------------------------------------
# tokens and expression trees

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass
class Tok:
    kind: str
    text: str
    col: int


def tokenize(text, line, col0=0):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1):
            toks.append(Tok("num", m.group(1), col0 + m.start(1) + 1))
        elif m.group(2):
            toks.append(Tok("name", m.group(2), col0 + m.start(2) + 1))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()[],=;":
                raise ParseError(f"unexpected character {ch!r}", line, col0 + m.start(3) + 1)
            toks.append(Tok("op", ch, col0 + m.start(3) + 1))
        pos = m.end()
    toks.append(Tok("end", "", col0 + len(text) + 1))
    return toks


class ExprParser:
    """Recursive descent over ``+ - * / ^``, parentheses and implicit products like ``2s``."""

    def __init__(self, toks, line):
        self.toks = toks
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok.col)

    def expect(self, text):
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of line'!r}", self.line, t.col)
        return t

    def at(self, *texts):
        t = self.peek()
        return t.kind == "op" and t.text in texts

    def expr(self):
        node = self.term()
        while self.at("+", "-"):
            op = self.next()
            node = ("add" if op.text == "+" else "sub", node, self.term(), op.col)
        return node

    def term(self):
        node = self.unary()
        while True:
            if self.at("*", "/"):
                op = self.next()
                node = ("mul" if op.text == "*" else "div", node, self.unary(), op.col)
            elif self.peek().kind in ("num", "name") or self.at("("):
                node = ("mul", node, self.power(), self.peek().col)
            else:
                return node

    def unary(self):
        if self.at("-"):
            t = self.next()
            return ("neg", self.unary(), t.col)
        if self.at("+"):
            self.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.at("^"):
            t = self.next()
            if self.at("-"):
                m = self.next()
                exp = ("neg", self.primary(), m.col)
            else:
                exp = self.primary()
            return ("pow", base, exp, t.col)
        return base

    def primary(self):
        t = self.next()
        if t.kind == "num":
            return ("num", Fraction(int(t.text)), t.col)
        if t.kind == "name":
            return ("sym", t.text, t.col)
        if t.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {t.text or 'end of line'!r}", self.line, t.col)

    def done(self):
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", self.line, t.col)


def parse_expr_tokens(toks, line):
    p = ExprParser(toks, line)
    node = p.expr()
    p.done()
    return node


# ---------------------------------------------------------------------------
# evaluation of trees


def _eval_linear(node, variables, line, fieldsym=None):
    """``(constant, coefficients)`` of an affine form over the variables, rational."""
    kind = node[0]
    r = len(variables)
    if kind == "num":
        return node[1], [Fraction(0)] * r
    if kind == "sym":
        if node[1] in variables:
            v = [Fraction(0)] * r
            v[variables.index(node[1])] = Fraction(1)
            return Fraction(0), v
        raise UnknownSymbol(f"unknown variable {node[1]!r} in exponent", line, node[2])
    if kind == "neg":
        c, v = _eval_linear(node[1], variables, line)
        return -c, [-x for x in v]
    if kind in ("add", "sub"):
        c1, v1 = _eval_linear(node[1], variables, line)
        c2, v2 = _eval_linear(node[2], variables, line)
        sgn = 1 if kind == "add" else -1
        return c1 + sgn * c2, [a + sgn * b for a, b in zip(v1, v2)]
    if kind == "mul":
        c1, v1 = _eval_linear(node[1], variables, line)
        c2, v2 = _eval_linear(node[2], variables, line)
        if any(v1) and any(v2):
            raise ParseError("exponent is not linear", line, node[3])
        if any(v1):
            return c1 * c2, [a * c2 for a in v1]
        return c1 * c2, [c1 * b for b in v2]
    if kind == "div":
        c1, v1 = _eval_linear(node[1], variables, line)
        c2, v2 = _eval_linear(node[2], variables, line)
        if any(v2) or c2 == 0:
            raise ParseError("exponent divides by a variable or by zero", line, node[3])
        return c1 / c2, [a / c2 for a in v1]
    if kind == "pow":
        c1, v1 = _eval_linear(node[1], variables, line)
        c2, v2 = _eval_linear(node[2], variables, line)
        if any(v1) or any(v2) or c2.denominator != 1:
            raise ParseError("exponent is not linear", line, node[3])
        return c1 ** int(c2), [Fraction(0)] * r
    raise ParseError("malformed exponent", line, None)


def _integer_form(node, variables, line):
    c, v = _eval_linear(node, variables, line)
    for x in [c] + v:
        if x.denominator != 1:
            col = node[-1] if isinstance(node[-1], int) else None
            raise NonIntegerExponentCoefficient("exponent coefficients must be integers", line, col)
    return int(c), tuple(int(x) for x in v)


def _node_col(node):
    return node[-1] if isinstance(node[-1], int) else None


def eval_field(node, K, line):
    """Evaluate a tree to a field element; the only symbol allowed is the field generator."""
    kind = node[0]
    if kind == "num":
        return K.from_rational(node[1])
    if kind == "sym":
        if node[1] == K.symbol and K.degree > 1:
            return K.gen
        raise UnknownSymbol(f"unknown symbol {node[1]!r}", line, node[2])
    if kind == "neg":
        return -eval_field(node[1], K, line)
    if kind in ("add", "sub", "mul", "div"):
        a = eval_field(node[1], K, line)
        b = eval_field(node[2], K, line)
        if kind == "add":
            return a + b
        if kind == "sub":
            return a - b
        if kind == "mul":
            return a * b
        if b.is_zero():
            raise ParseError("division by zero", line, node[3])
        return a / b
    if kind == "pow":
        e, v = _integer_form(node[2], (), line)
        a = eval_field(node[1], K, line)
        if e < 0 and a.is_zero():
            raise ParseError("zero to a negative power", line, node[3])
        return a**e
    raise ParseError("malformed expression", line, None)


def eval_poly_x(node, line, var="x"):
    """Evaluate a tree to a rational polynomial in ``var`` (lowest degree first)."""
    kind = node[0]
    if kind == "num":
        return poly.trim([node[1]])
    if kind == "sym":
        if node[1] == var:
            return [Fraction(0), Fraction(1)]
        raise UnknownSymbol(f"unknown symbol {node[1]!r} in defining polynomial", line, node[2])
    if kind == "neg":
        return poly.neg(eval_poly_x(node[1], line, var))
    if kind in ("add", "sub", "mul"):
        a = eval_poly_x(node[1], line, var)
        b = eval_poly_x(node[2], line, var)
        return {"add": poly.add, "sub": poly.sub, "mul": poly.mul}[kind](a, b)
    if kind == "div":
        b = eval_poly_x(node[2], line, var)
        if poly.degree(b) != 0:
            raise ParseError("division by a non-constant polynomial", line, node[3])
        return poly.scale(eval_poly_x(node[1], line, var), 1 / Fraction(b[0]))
    if kind == "pow":
        e, _ = _integer_form(node[2], (), line)
        if e < 0:
            raise ParseError("negative power in a polynomial", line, node[3])
        out = [Fraction(1)]
        base = eval_poly_x(node[1], line, var)
        for _ in range(e):
            out = poly.mul(out, base)
        return out
    raise ParseError("malformed polynomial", line, None)


def _mentions(node, names):
    if node[0] == "sym":
        return node[1] in names
    return any(_mentions(c, names) for c in node[1:] if isinstance(c, tuple))


def eval_pep(node, K, variables, line):
    """Expand a component expression into ``[(coefficient, {base: form})]``."""
    kind = node[0]
    if not _mentions(node, variables):
        return [(eval_field(node, K, line), {})]
    if kind == "sym":
        raise ParseError(f"variable {node[1]!r} may only appear in an exponent", line, node[2])
    if kind == "neg":
        return [(-c, e) for c, e in eval_pep(node[1], K, variables, line)]
    if kind == "add":
        return eval_pep(node[1], K, variables, line) + eval_pep(node[2], K, variables, line)
    if kind == "sub":
        return eval_pep(node[1], K, variables, line) + [(-c, e) for c, e in eval_pep(node[2], K, variables, line)]
    if kind == "mul":
        return _pep_mul(eval_pep(node[1], K, variables, line), eval_pep(node[2], K, variables, line))
    if kind == "div":
        den = eval_pep(node[2], K, variables, line)
        if len(den) != 1 or den[0][0].is_zero():
            raise ParseError("can only divide by a single nonzero term", line, node[3])
        c, e = den[0]
        inv = (c.inverse(), {b: tuple(-x for x in f) for b, f in e.items()})
        return _pep_mul(eval_pep(node[1], K, variables, line), [inv])
    if kind == "pow":
        const, form = _integer_form(node[2], variables, line)
        if _mentions(node[1], variables):
            if any(form):
                raise ParseError("the base of an exponential must be constant", line, node[3])
            base = eval_pep(node[1], K, variables, line)
            return _pep_power(base, const, line, node[3])
        lam = eval_field(node[1], K, line)
        if lam.is_zero():
            raise ParseError("bases of exponentials must be nonzero", line, node[3])
        if not any(form):
            return [(lam**const, {})]
        return [(lam**const, {lam: form})]
    raise ParseError("malformed component", line, None)


def _pep_mul(A, B):
    out = []
    for c1, e1 in A:
        for c2, e2 in B:
            e = dict(e1)
            for b, f in e2.items():
                e[b] = tuple(x + y for x, y in zip(e[b], f)) if b in e else f
            out.append((c1 * c2, e))
    return out


def _pep_power(base, k, line, col):
    if k < 0:
        if len(base) != 1:
            raise ParseError("negative power of a sum", line, col)
        c, e = base[0]
        base = [(c.inverse(), {b: tuple(-x for x in f) for b, f in e.items()})]
        k = -k
    out = [(base[0][0].field.one, {})]
    for _ in range(k):
        out = _pep_mul(out, base)
    return out


def build_system(K, variables, comps):
    """Assemble expanded components into a canonical :class:`PepSystem`.

    Like terms are merged, zero terms dropped and bases numbered by first
    appearance in the final term list.
    """
    r = len(variables)
    raw_bases = []
    for comp in comps:
        for _, e in comp:
            for b, f in e.items():
                if any(f) and b not in raw_bases:
                    raw_bases.append(b)
    k = len(raw_bases)
    terms_per = []
    for comp in comps:
        terms = []
        for c, e in comp:
            rows = [[0] * r for _ in range(k)]
            for b, f in e.items():
                if any(f):
                    rows[raw_bases.index(b)] = list(f)
            if not c.is_zero():
                terms.append(Term((c,), tuple(tuple(row) for row in rows)))
        terms_per.append(tuple(terms))
    sys0 = PepSystem(K, r, tuple(raw_bases), tuple(terms_per), 1, tuple(variables)).simplify()
    return canonical_bases(sys0)


def canonical_bases(f):
    """Drop unused bases and renumber by first appearance (term order, then base index)."""
    order = []
    for comp in f.components:
        for t in comp:
            for j, row in enumerate(t.exponents):
                if any(row) and j not in order:
                    order.append(j)
    comps = tuple(
        tuple(Term(t.coefficients, tuple(t.exponents[j] for j in order)) for t in comp) for comp in f.components
    )
    return PepSystem(f.field, f.r, tuple(f.bases[j] for j in order), comps, f.modulus, f.variables)


# ---------------------------------------------------------------------------
# printing


def _paren(x):
    return f"({x})"


def linear_form_str(form, variables):
    parts = []
    for c, v in zip(form, variables):
        if c == 0:
            continue
        mag = abs(c)
        body = v if mag == 1 else f"{mag}*{v}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def term_str(f, t):
    pieces = [_paren(element_to_str(t.coefficient))]
    for b, row in zip(f.bases, t.exponents):
        if any(row):
            pieces.append(f"{_paren(element_to_str(b))}^({linear_form_str(row, f.variables)})")
    return " * ".join(pieces)


def component_str(f, j):
    comp = f.components[j]
    if not comp:
        return "0"
    return " + ".join(term_str(f, t) for t in comp)


def system_str(f, names=None, over=True):
    if f.modulus != 1:
        raise MathDomainError("residue-class systems have no text form; use JSON")
    names = names or default_component_names(f.s)
    head = "pep vars " + ",".join(f.variables)
    if over:
        head += f" over {f.field.symbol}"
    lines = [head]
    for j, name in enumerate(names):
        lines.append(f"  {name} = {component_str(f, j)}")
    lines.append("end")
    return "\n".join(lines)


def default_component_names(s):
    return tuple(f"f{j + 1}" for j in range(s))


# ---------------------------------------------------------------------------
# job specs


@dataclass
class JobSpec:
    field_polynomial: tuple
    field_symbol: str
    integral_basis: tuple = None
    pep: PepSystem = None
    component_names: tuple = ()
    matrices: tuple = ()
    points: tuple = ()
    command: str = None
    params: tuple = ()
    field_obj: object = field(default=None, compare=False, repr=False)

    @property
    def field(self):
        return self.field_obj

    def param(self, name, default=None):
        for k, v in self.params:
            if k == name:
                return True if v is None else v
        return default

    def matrix(self, name=None):
        if not self.matrices:
            raise MathDomainError("job declares no matrix")
        if name is None:
            return self.matrices[0][1]
        for n, M in self.matrices:
            if n == name:
                return M
        raise UnknownSymbol(f"unknown matrix {name!r}")

    def with_params(self, extra):
        params = dict(self.params)
        params.update(extra)
        return replace(self, params=tuple(params.items()))


_FIELD_RE = re.compile(r"^field\s+(.*?)(?:\s+as\s+([A-Za-z_][A-Za-z_0-9]*))?(?:\s+basis\s+(.*))?$")


def _strip_comment(line):
    i = line.find("#")
    return line if i < 0 else line[:i]


def _parse_field(text, lineno, caps):
    m = _FIELD_RE.match(text.strip())
    if not m or not m.group(1):
        raise ParseError("expected: field <polynomial in x> [as <symbol>] [basis e1; e2; ...]", lineno, 1)
    poly_text, sym, basis_text = m.group(1), m.group(2) or "theta", m.group(3)
    if sym == "x":
        raise ParseError("field symbol must differ from the polynomial variable x", lineno, 1)
    col = text.find(poly_text)
    node = parse_expr_tokens(tokenize(poly_text, lineno, col), lineno)
    p = eval_poly_x(node, lineno)
    if any(c.denominator != 1 for c in p):
        raise ParseError("defining polynomial must have integer coefficients", lineno, col + 1)
    coeffs = tuple(int(c) for c in p)
    basis = None
    if basis_text:
        probe = make_field(list(coeffs), integral_basis=None, symbol=sym, caps=caps) if len(coeffs) - 1 <= 2 else None
        K0 = probe or _power_basis_field(coeffs, sym, caps)
        items = [s for s in basis_text.split(";")]
        off = text.find(basis_text)
        basis = []
        for it in items:
            node = parse_expr_tokens(tokenize(it, lineno, off), lineno)
            basis.append(tuple(eval_field(node, K0, lineno).coords))
            off += len(it) + 1
        basis = tuple(basis)
    K = make_field(list(coeffs), integral_basis=[list(b) for b in basis] if basis else None, symbol=sym, caps=caps)
    return coeffs, sym, basis, K


def _power_basis_field(coeffs, sym, caps):
    """Field with the power basis, used only to read the user's basis expressions."""
    d = len(coeffs) - 1
    ident = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    return make_field(list(coeffs), integral_basis=ident, symbol=sym, caps=caps)


def _split_params(text, lineno, col0):
    parts = text.split()
    if not parts:
        raise ParseError("run needs a command", lineno, col0)
    cmd = parts[0]
    params = []
    i = 1
    while i < len(parts):
        p = parts[i]
        if not p.startswith("--"):
            raise ParseError(f"expected a --flag, found {p!r}", lineno, col0 + text.find(p) + 1)
        name = p[2:]
        if name in BOOLEAN_FLAGS:
            params.append((name, None))
            i += 1
            continue
        if i + 1 >= len(parts):
            raise ParseError(f"flag --{name} needs a value", lineno, col0 + text.find(p) + 1)
        params.append((name, parts[i + 1]))
        i += 2
    return cmd, params


def validate_command(cmd, params, lineno=None):
    if cmd not in COMMANDS:
        raise ParseError(f"unknown command {cmd!r}", lineno, 1)
    allowed = COMMANDS[cmd] | GLOBAL_FLAGS
    for name, _ in params:
        if name not in allowed:
            raise ParseError(f"flag --{name} is not valid for {cmd}", lineno, 1)


def _parse_matrix(text, K, lineno, col0):
    toks = tokenize(text, lineno, col0)
    p = ExprParser(toks, lineno)
    p.expect("[")
    rows = []
    while True:
        p.expect("[")
        row = [eval_field(p.expr(), K, lineno)]
        while p.at(","):
            p.next()
            row.append(eval_field(p.expr(), K, lineno))
        p.expect("]")
        rows.append(row)
        if p.at(","):
            p.next()
            continue
        p.expect("]")
        break
    p.done()
    if any(len(r) != len(rows) for r in rows):
        raise ParseError("matrix must be square", lineno, col0 + 1)
    return MatrixK.from_rows(K, rows)


def _parse_tuple(text, K, lineno, col0):
    toks = tokenize(text, lineno, col0)
    p = ExprParser(toks, lineno)
    vals = [eval_field(p.expr(), K, lineno)]
    while p.at(","):
        p.next()
        vals.append(eval_field(p.expr(), K, lineno))
    p.done()
    return tuple(vals)


_NAME = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


def parse_job(text, caps=DEFAULT_CAPS):
    """Parse a job file into a :class:`JobSpec`; errors carry line and column."""
    lines = text.splitlines()
    i = 0
    K = None
    spec = {}
    matrices, points = [], []
    pep, names = None, ()
    command, params = None, ()
    while i < len(lines):
        lineno = i + 1
        raw = _strip_comment(lines[i])
        s = raw.strip()
        i += 1
        if not s:
            continue
        col0 = len(raw) - len(raw.lstrip())
        word = s.split()[0]
        if word == "field":
            if K is not None:
                raise ParseError("only one field per job", lineno, col0 + 1)
            coeffs, sym, basis, K = _parse_field(s, lineno, caps)
            spec.update(field_polynomial=coeffs, field_symbol=sym, integral_basis=basis)
            continue
        if K is None:
            raise ParseError("the first statement must be a field declaration", lineno, col0 + 1)
        if word == "pep":
            if pep is not None:
                raise ParseError("only one pep block per job", lineno, col0 + 1)
            m = re.match(r"^pep\s+vars\b\s*(.*?)(?:\s+over\s+(\S+))?\s*$", s)
            if not m:
                raise ParseError("expected: pep vars <v1,v2,...> [over <field symbol>]", lineno, col0 + 1)
            over = m.group(2)
            if over is not None and over != K.symbol:
                raise UnknownSymbol(f"unknown field {over!r}", lineno, col0 + s.find(over) + 1)
            vtext = m.group(1).strip()
            variables = tuple(v.strip() for v in vtext.split(",")) if vtext else ()
            for v in variables:
                if not _NAME.match(v) or v == K.symbol:
                    raise ParseError(f"bad variable name {v!r}", lineno, col0 + s.find(v) + 1)
            if len(set(variables)) != len(variables):
                raise ParseError("duplicate variable", lineno, col0 + 1)
            comps, cnames = [], []
            closed = False
            while i < len(lines):
                lineno = i + 1
                raw = _strip_comment(lines[i])
                body = raw.strip()
                i += 1
                if not body:
                    continue
                if body == "end":
                    closed = True
                    break
                c0 = len(raw) - len(raw.lstrip())
                mname = re.match(r"^([A-Za-z_][A-Za-z_0-9]*)\s*=(?!=)", body)
                if mname:
                    cname = mname.group(1)
                    if cname in variables or cname == K.symbol:
                        raise ParseError(f"component name {cname!r} clashes with a symbol", lineno, c0 + 1)
                    c0 += mname.end()
                    body = body[mname.end():]
                else:
                    cname = f"f{len(comps) + 1}"
                node = parse_expr_tokens(tokenize(body, lineno, c0), lineno)
                comps.append(eval_pep(node, K, variables, lineno))
                cnames.append(cname)
            if not closed:
                raise ParseError("pep block is missing 'end'", lineno, 1)
            if not comps:
                raise ParseError("pep block has no components", lineno, 1)
            if len(set(cnames)) != len(cnames):
                raise ParseError("duplicate component name", lineno, 1)
            pep = build_system(K, variables, comps)
            names = tuple(cnames)
            continue
        if word == "matrix":
            m = re.match(r"^matrix\s+([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.*)$", s)
            if not m:
                raise ParseError("expected: matrix <name> = [[...], ...]", lineno, col0 + 1)
            name = m.group(1)
            if any(n == name for n, _ in matrices):
                raise ParseError(f"matrix {name!r} defined twice", lineno, col0 + 1)
            matrices.append((name, _parse_matrix(m.group(2), K, lineno, col0 + s.find(m.group(2)))))
            continue
        if word == "point":
            rest = s[len("point"):]
            points.append(_parse_tuple(rest, K, lineno, col0 + len("point")))
            continue
        if word == "run":
            if command is not None:
                raise ParseError("only one run statement per job", lineno, col0 + 1)
            command, plist = _split_params(s[3:], lineno, col0 + 3)
            validate_command(command, plist, lineno)
            params = tuple(plist)
            continue
        raise ParseError(f"unknown statement {word!r}", lineno, col0 + 1)
    if K is None:
        raise ParseError("job declares no field", 1, 1)
    return JobSpec(
        spec["field_polynomial"],
        spec["field_symbol"],
        spec["integral_basis"],
        pep,
        names,
        tuple(matrices),
        tuple(points),
        command,
        params,
        K,
    )


def print_job(job):
    """Canonical text of a job; ``parse_job(print_job(j)) == j``."""
    K = job.field
    out = ["field " + poly.to_str(list(job.field_polynomial), "x").replace(" ", "") + f" as {job.field_symbol}"]
    if job.integral_basis:
        out[0] += " basis " + "; ".join(element_to_str(K.element(list(b))) for b in job.integral_basis)
    if job.pep is not None:
        out.append(system_str(job.pep, job.component_names))
    for name, M in job.matrices:
        out.append(f"matrix {name} = {M.to_str()}")
    for pt in job.points:
        out.append("point " + ", ".join(_paren(element_to_str(x)) for x in pt))
    if job.command:
        parts = ["run", job.command]
        for k, v in job.params:
            parts.append(f"--{k}")
            if v is not None:
                parts.append(v)
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"
