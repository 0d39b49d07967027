"""
Line-oriented structure DSL.

    system <name> classical|quantum
    prepare {a, b, ...}
    op <name> in {a, ...} out {b, ...}
    exclusive {op1, op2, ...}
    marginal {a, b, ...}

`#` starts a comment. Names match [A-Za-z_][A-Za-z0-9_]*.
"""
import re
from typing import List, Tuple

from pydantic import ValidationError as PydanticValidationError

from shared.schemas.structure import (
    CausalStructure,
    ExclusivityGroup,
    MarginalScenario,
    Operation,
    Preparation,
    System,
    SystemKind,
)
from shared.utils.exceptions import ParseError

_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([{},])|(\S))")

Token = Tuple[str, str, int]  # (kind, text, column)


def _tokenize(line: str, lineno: int) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(line):
        match = _TOKEN_RE.match(line, pos)
        if match is None or match.end() == pos:
            break
        ident, punct, bad = match.groups()
        column = match.start(match.lastindex) + 1
        if bad is not None:
            raise ParseError(f"Unexpected character {bad!r}", line=lineno, column=column)
        tokens.append(("name", ident, column) if ident else ("punct", punct, column))
        pos = match.end()
    return tokens


class _LineParser:
    def __init__(self, tokens: List[Token], lineno: int, end_column: int):
        self.tokens = tokens
        self.lineno = lineno
        self.end_column = end_column
        self.k = 0

    def error(self, message: str):
        column = self.tokens[self.k][2] if self.k < len(self.tokens) else self.end_column
        raise ParseError(message, line=self.lineno, column=column)

    def name(self, what: str) -> str:
        if self.k >= len(self.tokens) or self.tokens[self.k][0] != "name":
            self.error(f"Expected {what}")
        text = self.tokens[self.k][1]
        self.k += 1
        return text

    def keyword(self, word: str) -> None:
        if self.k >= len(self.tokens) or self.tokens[self.k][1] != word:
            self.error(f"Expected '{word}'")
        self.k += 1

    def name_set(self) -> List[str]:
        self.keyword("{")
        names = [self.name("a name")]
        while self.k < len(self.tokens) and self.tokens[self.k][1] == ",":
            self.k += 1
            names.append(self.name("a name"))
        self.keyword("}")
        if len(set(names)) != len(names):
            raise ParseError("Repeated name in set", line=self.lineno, column=self.tokens[0][2])
        return names

    def done(self) -> None:
        if self.k < len(self.tokens):
            self.error("Unexpected trailing input")


class DslService:
    """Service for reading and writing the structure DSL."""

    def parse(self, text: str) -> CausalStructure:
        """Parse DSL text; errors carry 1-based line and column."""
        systems: List[System] = []
        preparations: List[Preparation] = []
        operations: List[Operation] = []
        groups: List[ExclusivityGroup] = []
        contexts: List[frozenset] = []

        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].rstrip()
            tokens = _tokenize(line, lineno)
            if not tokens:
                continue
            p = _LineParser(tokens, lineno, len(line) + 1)
            head = p.name("a statement keyword")
            try:
                if head == "system":
                    name = p.name("a system name")
                    kind = p.name("'classical' or 'quantum'")
                    if kind not in ("classical", "quantum"):
                        p.k -= 1
                        p.error("Expected 'classical' or 'quantum'")
                    p.done()
                    systems.append(System(name=name, kind=SystemKind(kind)))
                elif head == "prepare":
                    members = p.name_set()
                    p.done()
                    preparations.append(Preparation(systems=frozenset(members)))
                elif head == "op":
                    name = p.name("an operation name")
                    p.keyword("in")
                    inputs = p.name_set()
                    p.keyword("out")
                    outputs = p.name_set()
                    p.done()
                    operations.append(
                        Operation(name=name, inputs=frozenset(inputs), outputs=frozenset(outputs))
                    )
                elif head == "exclusive":
                    members = p.name_set()
                    p.done()
                    groups.append(ExclusivityGroup(operations=frozenset(members)))
                elif head == "marginal":
                    members = p.name_set()
                    p.done()
                    contexts.append(frozenset(members))
                else:
                    raise ParseError(f"Unknown statement '{head}'", line=lineno, column=tokens[0][2])
            except PydanticValidationError as exc:
                detail = exc.errors()[0].get("msg", "invalid statement")
                raise ParseError(detail, line=lineno, column=tokens[0][2]) from exc

        return CausalStructure(
            systems=tuple(systems),
            preparations=tuple(preparations),
            operations=tuple(operations),
            exclusivity_groups=tuple(groups),
            marginal_scenario=MarginalScenario(contexts=tuple(contexts)),
        )

    def emit(self, structure: CausalStructure) -> str:
        """Render a structure; names inside sets follow declaration order."""
        def braces(names) -> str:
            return "{" + ", ".join(structure.sort_names(names)) + "}"

        order = {n: i for i, n in enumerate(structure.system_names())}
        lines = [f"system {s.name} {SystemKind(s.kind).value}" for s in structure.systems]
        for prep in sorted(
            structure.preparations, key=lambda p: min(order.get(n, len(order)) for n in p.systems)
        ):
            lines.append(f"prepare {braces(prep.systems)}")
        for op in structure.operations:
            lines.append(f"op {op.name} in {braces(op.inputs)} out {braces(op.outputs)}")
        op_order = {op.name: i for i, op in enumerate(structure.operations)}
        for group in structure.exclusivity_groups:
            members = sorted(group.operations, key=lambda n: (op_order.get(n, len(op_order)), n))
            lines.append("exclusive {" + ", ".join(members) + "}")
        for context in structure.marginal_scenario.contexts:
            lines.append(f"marginal {braces(context)}")
        return "\n".join(lines) + "\n"


def parse_structure(text: str) -> CausalStructure:
    return DslService().parse(text)


def emit_structure(structure: CausalStructure) -> str:
    return DslService().emit(structure)
