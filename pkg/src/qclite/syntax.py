"""Tokenizer, syntax tree and recursive-descent parser for the qclite language.

The grammar is the closed subset exhibited by small structured quantum
programs: subroutine declarations (procedure, operator, qufunct, and
classical functions declared by their return type), classical and quantum
variable declarations, statements, and expressions over classical values and
quantum registers.  Parsing is permissive where a later static check gives a
better diagnostic (for example, a measure statement parses inside an operator
body and is rejected afterwards).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LexError, ParseError

KEYWORDS = frozenset({
    "procedure", "operator", "qufunct", "cond", "const",
    "int", "real", "complex", "boolean",
    "qureg", "quconst", "quvoid", "quscratch",
    "if", "else", "for", "to", "step", "while",
    "measure", "reset", "dump", "print", "return",
    "and", "or", "not", "xor", "mod", "exit",
})

CLASSICAL_TYPES = ("int", "real", "complex", "boolean")
QUANTUM_TYPES = ("qureg", "quconst", "quvoid", "quscratch")

_TWO_CHAR_SYMBOLS = ("==", "!=", "<=", ">=")
_ONE_CHAR_SYMBOLS = "()[]{};,=!&+-*/^#:<>"


@dataclass(frozen=True)
class Token:
    kind: str  # kw | ident | int | real | sym
    text: str
    line: int
    column: int


def tokenize(source: str) -> list[Token]:
    """Split source text into tokens, dropping // comments."""
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "/" and i + 1 < n and source[i + 1] == "/":
            while i < n and source[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            kind = "kw" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            is_real = False
            if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                is_real = True
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    is_real = True
                    j = k
                    while j < n and source[j].isdigit():
                        j += 1
            tokens.append(Token("real" if is_real else "int", source[i:j], line, start_col))
            col += j - i
            i = j
            continue
        pair = source[i : i + 2]
        if pair in _TWO_CHAR_SYMBOLS:
            tokens.append(Token("sym", pair, line, start_col))
            i += 2
            col += 2
            continue
        if ch in _ONE_CHAR_SYMBOLS:
            tokens.append(Token("sym", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise LexError(f"invalid character {ch!r}", line, start_col)
    return tokens


# --------------------------------------------------------------------------
# Syntax tree
# --------------------------------------------------------------------------

@dataclass
class Node:
    line: int = field(default=0, compare=False, kw_only=True)
    column: int = field(default=0, compare=False, kw_only=True)


# expressions

@dataclass
class IntLit(Node):
    value: int


@dataclass
class RealLit(Node):
    value: float


@dataclass
class Name(Node):
    ident: str


@dataclass
class Unary(Node):
    op: str  # "-" | "not"
    operand: Node


@dataclass
class Length(Node):
    operand: Node


@dataclass
class Binary(Node):
    op: str  # arithmetic, comparison, boolean connective or register concat "&"
    left: Node
    right: Node


@dataclass
class Index(Node):
    base: Node
    index: Node


@dataclass
class RangeIndex(Node):
    base: Node
    lo: Node
    hi: Node


@dataclass
class Call(Node):
    name: str
    args: list


# declarations and statements

@dataclass
class Param(Node):
    type: str
    name: str

    @property
    def is_quantum(self) -> bool:
        return self.type in QUANTUM_TYPES


@dataclass
class Routine(Node):
    kind: str  # procedure | operator | qufunct | function
    cond: bool
    ret_type: str | None
    name: str
    params: list
    body: list


@dataclass
class VarDecl(Node):
    ctype: str
    name: str
    init: Node | None


@dataclass
class ConstDecl(Node):
    name: str
    value: Node


@dataclass
class RegDecl(Node):
    qtype: str
    name: str
    size: Node


@dataclass
class CallStmt(Node):
    name: str
    args: list
    invert: bool


@dataclass
class Assign(Node):
    name: str
    value: Node


@dataclass
class If(Node):
    cond: Node
    then: list
    orelse: list | None
    forking: bool = field(default=False, compare=False)


@dataclass
class For(Node):
    var: str
    start: Node
    stop: Node
    step: Node | None
    body: list


@dataclass
class While(Node):
    cond: Node
    body: list


@dataclass
class Measure(Node):
    target: Node
    var: str | None


@dataclass
class Reset(Node):
    pass


@dataclass
class Dump(Node):
    pass


@dataclass
class Print(Node):
    args: list


@dataclass
class ExitStmt(Node):
    pass


@dataclass
class Return(Node):
    value: Node


@dataclass
class Program(Node):
    items: list


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

_EOF = Token("eof", "<end of input>", 0, 0)

# binary operator levels, loosest first; "^" is handled separately (right assoc)
_BINARY_LEVELS = [
    ("or",),
    ("xor",),
    ("and",),
    ("==", "!=", "<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/", "mod", "&"),
]


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token plumbing ----

    def peek(self, offset: int = 0) -> Token:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else _EOF

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def advance(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def check(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind in ("kw", "sym") and tok.text == text

    def accept(self, text: str) -> bool:
        if self.check(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if not self.check(text):
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.column)
        return self.advance()

    def expect_ident(self) -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise ParseError(f"expected identifier, found {tok.text!r}", tok.line, tok.column)
        return self.advance()

    def _fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.column)

    # -- items ----

    def parse_items(self) -> list:
        items = []
        while not self.at_end():
            item = self.parse_item()
            if item is not None:
                items.append(item)
        return items

    def parse_item(self):
        tok = self.peek()
        if tok.kind == "kw":
            if tok.text == "cond" or tok.text in ("procedure", "operator", "qufunct"):
                return self.parse_routine()
            if tok.text in CLASSICAL_TYPES:
                if self.peek(1).kind == "ident" and self.peek(2).text == "(":
                    return self.parse_routine()
                return self.parse_var_decl()
            if tok.text == "const":
                return self.parse_const_decl()
            if tok.text in QUANTUM_TYPES:
                return self.parse_reg_decl()
        return self.parse_statement()

    def parse_routine(self) -> Routine:
        tok = self.peek()
        cond = self.accept("cond")
        kw = self.advance()
        if kw.text in ("procedure", "operator", "qufunct"):
            kind, ret_type = kw.text, None
        elif kw.text in CLASSICAL_TYPES:
            kind, ret_type = "function", kw.text
        else:
            raise ParseError(
                f"expected subroutine keyword after 'cond', found {kw.text!r}", kw.line, kw.column
            )
        name = self.expect_ident()
        self.expect("(")
        params = []
        if not self.check(")"):
            while True:
                ptok = self.peek()
                if ptok.kind != "kw" or ptok.text not in CLASSICAL_TYPES + QUANTUM_TYPES:
                    self._fail(f"expected parameter type, found {ptok.text!r}")
                self.advance()
                pname = self.expect_ident()
                params.append(Param(ptok.text, pname.text, line=ptok.line, column=ptok.column))
                if not self.accept(","):
                    break
        self.expect(")")
        body = self.parse_block()
        return Routine(kind, cond, ret_type, name.text, params, body,
                       line=tok.line, column=tok.column)

    def parse_var_decl(self) -> VarDecl:
        tok = self.advance()
        name = self.expect_ident()
        init = None
        if self.accept("="):
            init = self.parse_expr()
        self.expect(";")
        return VarDecl(tok.text, name.text, init, line=tok.line, column=tok.column)

    def parse_const_decl(self) -> ConstDecl:
        tok = self.advance()
        name = self.expect_ident()
        self.expect("=")
        value = self.parse_expr()
        self.expect(";")
        return ConstDecl(name.text, value, line=tok.line, column=tok.column)

    def parse_reg_decl(self) -> RegDecl:
        tok = self.advance()
        name = self.expect_ident()
        self.expect("[")
        size = self.parse_expr()
        self.expect("]")
        self.expect(";")
        return RegDecl(tok.text, name.text, size, line=tok.line, column=tok.column)

    # -- statements ----

    def parse_block(self) -> list:
        self.expect("{")
        stmts = []
        while not self.check("}"):
            if self.at_end():
                self._fail("expected '}'")
            tok = self.peek()
            if tok.kind == "kw" and tok.text in ("procedure", "operator", "qufunct"):
                raise ParseError("nested subroutine definitions are not allowed",
                                 tok.line, tok.column)
            if tok.kind == "kw" and tok.text in CLASSICAL_TYPES:
                stmts.append(self.parse_var_decl())
                continue
            if tok.kind == "kw" and tok.text == "const":
                stmts.append(self.parse_const_decl())
                continue
            if tok.kind == "kw" and tok.text in QUANTUM_TYPES:
                stmts.append(self.parse_reg_decl())
                continue
            stmt = self.parse_statement()
            if stmt is not None:
                stmts.append(stmt)
        self.expect("}")
        return stmts

    def parse_statement(self):
        tok = self.peek()
        if tok.kind == "kw":
            handler = {
                "if": self.parse_if, "for": self.parse_for, "while": self.parse_while,
                "measure": self.parse_measure, "print": self.parse_print,
                "return": self.parse_return,
            }.get(tok.text)
            if handler is not None:
                return handler()
            if tok.text == "reset":
                self.advance()
                self.expect(";")
                return Reset(line=tok.line, column=tok.column)
            if tok.text == "dump":
                self.advance()
                self.expect(";")
                return Dump(line=tok.line, column=tok.column)
            if tok.text == "exit":
                self.advance()
                self.expect(";")
                return ExitStmt(line=tok.line, column=tok.column)
            self._fail(f"unexpected keyword {tok.text!r}")
        if self.check("!"):
            self.advance()
            name = self.expect_ident()
            return self.finish_call_stmt(name, invert=True, pos=tok)
        if self.check(";"):
            self.advance()
            return None
        if tok.kind == "ident":
            name = self.advance()
            if self.check("="):
                self.advance()
                value = self.parse_expr()
                self.expect(";")
                return Assign(name.text, value, line=tok.line, column=tok.column)
            if self.check("("):
                return self.finish_call_stmt(name, invert=False, pos=tok)
            self._fail(f"expected '=' or '(' after {name.text!r}")
        self._fail(f"unexpected token {tok.text!r}")

    def finish_call_stmt(self, name: Token, invert: bool, pos: Token) -> CallStmt:
        self.expect("(")
        args = []
        if not self.check(")"):
            args.append(self.parse_expr())
            while self.accept(","):
                args.append(self.parse_expr())
        self.expect(")")
        self.expect(";")
        return CallStmt(name.text, args, invert, line=pos.line, column=pos.column)

    def parse_if(self) -> If:
        tok = self.advance()
        cond = self.parse_expr()
        then = self.parse_block()
        orelse = None
        if self.accept("else"):
            orelse = self.parse_block()
        return If(cond, then, orelse, line=tok.line, column=tok.column)

    def parse_for(self) -> For:
        tok = self.advance()
        var = self.expect_ident()
        self.expect("=")
        start = self.parse_expr()
        self.expect("to")
        stop = self.parse_expr()
        step = None
        if self.accept("step"):
            step = self.parse_expr()
        body = self.parse_block()
        return For(var.text, start, stop, step, body, line=tok.line, column=tok.column)

    def parse_while(self) -> While:
        tok = self.advance()
        cond = self.parse_expr()
        body = self.parse_block()
        return While(cond, body, line=tok.line, column=tok.column)

    def parse_measure(self) -> Measure:
        tok = self.advance()
        target = self.parse_expr()
        var = None
        if self.accept(","):
            var = self.expect_ident().text
        self.expect(";")
        return Measure(target, var, line=tok.line, column=tok.column)

    def parse_print(self) -> Print:
        tok = self.advance()
        args = [self.parse_expr()]
        while self.accept(","):
            args.append(self.parse_expr())
        self.expect(";")
        return Print(args, line=tok.line, column=tok.column)

    def parse_return(self) -> Return:
        tok = self.advance()
        value = self.parse_expr()
        self.expect(";")
        return Return(value, line=tok.line, column=tok.column)

    # -- expressions ----

    def parse_expr(self) -> Node:
        return self.parse_binary(0)

    def parse_binary(self, level: int) -> Node:
        if level >= len(_BINARY_LEVELS):
            return self.parse_power()
        ops = _BINARY_LEVELS[level]
        left = self.parse_binary(level + 1)
        while True:
            tok = self.peek()
            if tok.kind in ("kw", "sym") and tok.text in ops:
                self.advance()
                right = self.parse_binary(level + 1)
                left = Binary(tok.text, left, right, line=tok.line, column=tok.column)
            else:
                return left

    def parse_power(self) -> Node:
        left = self.parse_unary()
        tok = self.peek()
        if tok.kind == "sym" and tok.text == "^":
            self.advance()
            right = self.parse_power()  # right associative
            return Binary("^", left, right, line=tok.line, column=tok.column)
        return left

    def parse_unary(self) -> Node:
        tok = self.peek()
        if tok.kind == "sym" and tok.text == "-":
            self.advance()
            return Unary("-", self.parse_unary(), line=tok.line, column=tok.column)
        if tok.kind == "kw" and tok.text == "not":
            self.advance()
            return Unary("not", self.parse_unary(), line=tok.line, column=tok.column)
        if tok.kind == "sym" and tok.text == "#":
            self.advance()
            return Length(self.parse_unary(), line=tok.line, column=tok.column)
        return self.parse_postfix()

    def parse_postfix(self) -> Node:
        node = self.parse_primary()
        while True:
            tok = self.peek()
            if self.check("("):
                if not isinstance(node, Name):
                    self._fail("only named subroutines can be called")
                self.advance()
                args = []
                if not self.check(")"):
                    args.append(self.parse_expr())
                    while self.accept(","):
                        args.append(self.parse_expr())
                self.expect(")")
                node = Call(node.ident, args, line=node.line, column=node.column)
            elif self.check("["):
                self.advance()
                first = self.parse_expr()
                if self.accept(":"):
                    second = self.parse_expr()
                    self.expect("]")
                    node = RangeIndex(node, first, second, line=tok.line, column=tok.column)
                else:
                    self.expect("]")
                    node = Index(node, first, line=tok.line, column=tok.column)
            else:
                return node

    def parse_primary(self) -> Node:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return IntLit(int(tok.text), line=tok.line, column=tok.column)
        if tok.kind == "real":
            self.advance()
            return RealLit(float(tok.text), line=tok.line, column=tok.column)
        if tok.kind == "ident":
            self.advance()
            return Name(tok.text, line=tok.line, column=tok.column)
        if self.check("("):
            self.advance()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        self._fail(f"expected expression, found {tok.text!r}")


def parse_program(tokens: list[Token]) -> Program:
    parser = Parser(tokens)
    items = parser.parse_items()
    return Program(items)


def parse_source(source: str) -> Program:
    return parse_program(tokenize(source))


def parse_interactive(line: str) -> list:
    """Parse one interactive input line into a list of declarations/statements."""
    return Parser(tokenize(line)).parse_items()


# --------------------------------------------------------------------------
# Pretty printer
# --------------------------------------------------------------------------

_PREC = {
    "or": 1, "xor": 2, "and": 3,
    "==": 4, "!=": 4, "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6, "mod": 6, "&": 6,
    "^": 7,
}
_UNARY_PREC = 8


def unparse_expr(node: Node, parent_prec: int = 0) -> str:
    if isinstance(node, IntLit):
        return str(node.value)
    if isinstance(node, RealLit):
        return repr(node.value)
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Length):
        return _wrap(f"#{unparse_expr(node.operand, _UNARY_PREC)}", _UNARY_PREC, parent_prec)
    if isinstance(node, Unary):
        sep = " " if node.op == "not" else ""
        inner = unparse_expr(node.operand, _UNARY_PREC)
        return _wrap(f"{node.op}{sep}{inner}", _UNARY_PREC, parent_prec)
    if isinstance(node, Binary):
        prec = _PREC[node.op]
        if node.op == "^":
            text = (f"{unparse_expr(node.left, prec + 1)} ^ "
                    f"{unparse_expr(node.right, prec)}")
        else:
            text = (f"{unparse_expr(node.left, prec)} {node.op} "
                    f"{unparse_expr(node.right, prec + 1)}")
        return _wrap(text, prec, parent_prec)
    if isinstance(node, Index):
        return f"{unparse_expr(node.base, _UNARY_PREC + 1)}[{unparse_expr(node.index)}]"
    if isinstance(node, RangeIndex):
        base = unparse_expr(node.base, _UNARY_PREC + 1)
        return f"{base}[{unparse_expr(node.lo)}:{unparse_expr(node.hi)}]"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(unparse_expr(a) for a in node.args)})"
    raise TypeError(f"cannot unparse {type(node).__name__}")


def _wrap(text: str, prec: int, parent_prec: int) -> str:
    return f"({text})" if prec < parent_prec else text


def unparse_stmt(node: Node, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(node, Routine):
        params = ", ".join(f"{p.type} {p.name}" for p in node.params)
        head = node.ret_type if node.kind == "function" else node.kind
        cond = "cond " if node.cond else ""
        body = unparse_block(node.body, indent)
        return f"{pad}{cond}{head} {node.name}({params}) {body}"
    if isinstance(node, VarDecl):
        init = f" = {unparse_expr(node.init)}" if node.init is not None else ""
        return f"{pad}{node.ctype} {node.name}{init};"
    if isinstance(node, ConstDecl):
        return f"{pad}const {node.name} = {unparse_expr(node.value)};"
    if isinstance(node, RegDecl):
        return f"{pad}{node.qtype} {node.name}[{unparse_expr(node.size)}];"
    if isinstance(node, CallStmt):
        bang = "!" if node.invert else ""
        args = ", ".join(unparse_expr(a) for a in node.args)
        return f"{pad}{bang}{node.name}({args});"
    if isinstance(node, Assign):
        return f"{pad}{node.name} = {unparse_expr(node.value)};"
    if isinstance(node, If):
        text = f"{pad}if {unparse_expr(node.cond)} {unparse_block(node.then, indent)}"
        if node.orelse is not None:
            text += f" else {unparse_block(node.orelse, indent)}"
        return text
    if isinstance(node, For):
        step = f" step {unparse_expr(node.step)}" if node.step is not None else ""
        return (f"{pad}for {node.var} = {unparse_expr(node.start)} to "
                f"{unparse_expr(node.stop)}{step} {unparse_block(node.body, indent)}")
    if isinstance(node, While):
        return f"{pad}while {unparse_expr(node.cond)} {unparse_block(node.body, indent)}"
    if isinstance(node, Measure):
        var = f", {node.var}" if node.var else ""
        return f"{pad}measure {unparse_expr(node.target)}{var};"
    if isinstance(node, Reset):
        return f"{pad}reset;"
    if isinstance(node, Dump):
        return f"{pad}dump;"
    if isinstance(node, Print):
        return f"{pad}print {', '.join(unparse_expr(a) for a in node.args)};"
    if isinstance(node, ExitStmt):
        return f"{pad}exit;"
    if isinstance(node, Return):
        return f"{pad}return {unparse_expr(node.value)};"
    raise TypeError(f"cannot unparse {type(node).__name__}")


def unparse_block(stmts: list, indent: int) -> str:
    if not stmts:
        return "{ }"
    inner = "\n".join(unparse_stmt(s, indent + 1) for s in stmts)
    return "{\n" + inner + "\n" + "  " * indent + "}"


def unparse(program: Program) -> str:
    return "\n".join(unparse_stmt(item) for item in program.items) + "\n"
