"""Parser for specification files.

Commands, one per logical line (a command runs until the next command
keyword): ``load [name =] "file"``, ``import "file"``, ``let name = expr``,
``let name(p1, ..., pk) = expr``, ``save "label" expr``.

Expressions: identifiers, applications ``f(e1, ..., ek)``, infix ``|`` and
``&``, prefix ``!``, parentheses, and string literals (used by ``ap("...")``).
``//`` starts a line comment.  Precedence ``!`` > ``&`` > ``|``; infix
operators associate to the left.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import ImportCycleError, SpecSyntaxError, UnknownCommandError

_COMMANDS = ("load", "import", "let", "save")
_SYMBOLS = {"(": "LPAREN", ")": "RPAREN", ",": "COMMA", "=": "EQUALS",
            "|": "PIPE", "&": "AMP", "!": "BANG"}


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, length = 0, len(text)
    while i < length:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            while i < length and text[i] != "\n":
                i += 1
            continue
        if ch == '"':
            start_line, start_col = line, col
            i += 1
            col += 1
            chars = []
            while i < length and text[i] != '"':
                if text[i] == "\n":
                    raise SpecSyntaxError("unterminated string", start_line, start_col)
                if text[i] == "\\" and i + 1 < length and text[i + 1] in '"\\':
                    chars.append(text[i + 1])
                    i += 2
                    col += 2
                    continue
                chars.append(text[i])
                i += 1
                col += 1
            if i >= length:
                raise SpecSyntaxError("unterminated string", start_line, start_col)
            i += 1
            col += 1
            tokens.append(Token("STRING", "".join(chars), start_line, start_col))
            continue
        if ch in _SYMBOLS:
            tokens.append(Token(_SYMBOLS[ch], ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isalpha() or ch == "_":
            start_col = col
            j = i
            while j < length and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        raise SpecSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


# --- surface expression tree --------------------------------------------------

@dataclass(frozen=True)
class Ident:
    name: str
    line: int = 0
    column: int = 0


@dataclass(frozen=True)
class App:
    name: str
    args: tuple
    line: int = 0
    column: int = 0


@dataclass(frozen=True)
class StrLit:
    value: str
    line: int = 0
    column: int = 0


@dataclass(frozen=True)
class NotE:
    operand: object


@dataclass(frozen=True)
class AndE:
    left: object
    right: object


@dataclass(frozen=True)
class OrE:
    left: object
    right: object


# --- commands ------------------------------------------------------------------

@dataclass(frozen=True)
class Load:
    path: str
    name: str | None = None
    line: int = 0


@dataclass(frozen=True)
class Import:
    path: str
    line: int = 0


@dataclass(frozen=True)
class Let:
    name: str
    params: tuple[str, ...]
    body: object
    line: int = 0


@dataclass(frozen=True)
class Save:
    label: str
    body: object
    line: int = 0


@dataclass(frozen=True)
class Program:
    commands: tuple = ()

    def lets(self) -> tuple[Let, ...]:
        return tuple(c for c in self.commands if isinstance(c, Let))

    def saves(self) -> tuple[Save, ...]:
        return tuple(c for c in self.commands if isinstance(c, Save))

    def loads(self) -> tuple[Load, ...]:
        return tuple(c for c in self.commands if isinstance(c, Load))


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise SpecSyntaxError(
                f"expected {what}, found {tok.value or 'end of file'!r}",
                tok.line,
                tok.column,
            )
        return self.next()

    def at_command(self) -> bool:
        tok = self.peek()
        return tok.kind == "IDENT" and tok.value in _COMMANDS

    def parse_program(self) -> Program:
        commands = []
        while self.peek().kind != "EOF":
            tok = self.peek()
            if tok.kind != "IDENT" or tok.value not in _COMMANDS:
                raise UnknownCommandError(
                    f"expected a command (load/import/let/save), found {tok.value!r}",
                    tok.line,
                    tok.column,
                )
            commands.append(getattr(self, f"_parse_{tok.value}")())
        return Program(tuple(commands))

    def _parse_load(self) -> Load:
        kw = self.next()
        name = None
        if self.peek().kind == "IDENT":
            name = self.next().value
            self.expect("EQUALS", "'='")
        tok = self.expect("STRING", "a quoted file path")
        return Load(tok.value, name, kw.line)

    def _parse_import(self) -> Import:
        kw = self.next()
        tok = self.expect("STRING", "a quoted file path")
        return Import(tok.value, kw.line)

    def _parse_let(self) -> Let:
        kw = self.next()
        name = self.expect("IDENT", "a name").value
        params: list[str] = []
        if self.peek().kind == "LPAREN":
            self.next()
            while True:
                tok = self.expect("IDENT", "a parameter name")
                if tok.value in params:
                    raise SpecSyntaxError(
                        f"parameter {tok.value!r} listed twice", tok.line, tok.column
                    )
                params.append(tok.value)
                if self.peek().kind == "COMMA":
                    self.next()
                    continue
                break
            self.expect("RPAREN", "')'")
        self.expect("EQUALS", "'='")
        body = self.parse_expr()
        return Let(name, tuple(params), body, kw.line)

    def _parse_save(self) -> Save:
        kw = self.next()
        label = self.expect("STRING", "a quoted label").value
        body = self.parse_expr()
        return Save(label, body, kw.line)

    def parse_expr(self):
        expr = self._parse_and()
        while self.peek().kind == "PIPE":
            self.next()
            expr = OrE(expr, self._parse_and())
        return expr

    def _parse_and(self):
        expr = self._parse_unary()
        while self.peek().kind == "AMP":
            self.next()
            expr = AndE(expr, self._parse_unary())
        return expr

    def _parse_unary(self):
        tok = self.peek()
        if tok.kind == "BANG":
            self.next()
            return NotE(self._parse_unary())
        return self._parse_primary()

    def _parse_primary(self):
        tok = self.next()
        if tok.kind == "STRING":
            return StrLit(tok.value, tok.line, tok.column)
        if tok.kind == "LPAREN":
            expr = self.parse_expr()
            self.expect("RPAREN", "')'")
            return expr
        if tok.kind == "IDENT":
            if tok.value in _COMMANDS:
                raise SpecSyntaxError(
                    f"{tok.value!r} is a command keyword, not an expression",
                    tok.line,
                    tok.column,
                )
            if self.peek().kind == "LPAREN":
                self.next()
                args = [self.parse_expr()]
                while self.peek().kind == "COMMA":
                    self.next()
                    args.append(self.parse_expr())
                self.expect("RPAREN", "')'")
                return App(tok.value, tuple(args), tok.line, tok.column)
            return Ident(tok.value, tok.line, tok.column)
        raise SpecSyntaxError(
            f"expected an expression, found {tok.value or 'end of file'!r}",
            tok.line,
            tok.column,
        )


def parse_spec(text: str) -> Program:
    """Parse one specification file; imports stay unresolved."""
    return _Parser(_tokenize(text)).parse_program()


def load_program(path: str | Path) -> Program:
    """Parse a file and splice imports, resolved relative to the importing file."""
    def _load(p: Path, stack: tuple[Path, ...]) -> list:
        p = p.resolve()
        if p in stack:
            chain = " -> ".join(str(q) for q in stack + (p,))
            raise ImportCycleError(f"import cycle: {chain}")
        program = parse_spec(p.read_text(encoding="utf-8"))
        commands = []
        for cmd in program.commands:
            if isinstance(cmd, Import):
                target = Path(cmd.path)
                if not target.is_absolute():
                    target = p.parent / target
                commands.extend(_load(target, stack + (p,)))
            elif isinstance(cmd, Load):
                target = Path(cmd.path)
                if not target.is_absolute():
                    target = p.parent / target
                commands.append(Load(str(target), cmd.name, cmd.line))
            else:
                commands.append(cmd)
        return commands

    return Program(tuple(_load(Path(path), ())))


def print_expr(expr) -> str:
    """Canonical concrete syntax for a surface expression."""
    return _print(expr, 0)


def _print(expr, level: int) -> str:
    # level: 0 = or-context, 1 = and-context, 2 = unary-context
    if isinstance(expr, Ident):
        return expr.name
    if isinstance(expr, StrLit):
        escaped = expr.value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(expr, App):
        args = ", ".join(_print(a, 0) for a in expr.args)
        return f"{expr.name}({args})"
    if isinstance(expr, NotE):
        return f"!{_print(expr.operand, 2)}"
    if isinstance(expr, AndE):
        text = f"{_print(expr.left, 1)} & {_print(expr.right, 2)}"
        return f"({text})" if level > 1 else text
    if isinstance(expr, OrE):
        text = f"{_print(expr.left, 0)} | {_print(expr.right, 1)}"
        return f"({text})" if level > 0 else text
    raise TypeError(f"not an expression: {expr!r}")


def print_program(program: Program) -> str:
    lines = []
    for cmd in program.commands:
        if isinstance(cmd, Load):
            if cmd.name:
                lines.append(f'load {cmd.name} = "{cmd.path}"')
            else:
                lines.append(f'load "{cmd.path}"')
        elif isinstance(cmd, Import):
            lines.append(f'import "{cmd.path}"')
        elif isinstance(cmd, Let):
            head = cmd.name
            if cmd.params:
                head += "(" + ", ".join(cmd.params) + ")"
            lines.append(f"let {head} = {print_expr(cmd.body)}")
        elif isinstance(cmd, Save):
            lines.append(f'save "{cmd.label}" {print_expr(cmd.body)}')
    return "\n".join(lines) + "\n"
