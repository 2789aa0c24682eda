"""
Line-oriented text formats.

Spaces::

    space T3 over rplus
    points a b c
    d a b 1

Omitted off-diagonal distances default to inf (rplus) or 0 (bool); the
diagonal is always the unit.

Modules, filters and sequences refer to an earlier space::

    module M on T3 left
    m a 0
    filter F on T3
    gen a b
    seq S on T3
    pre c
    cycle b

``#`` starts a comment.
"""

from typing import Dict, List, Optional, Tuple, Union

import structlog
from pydantic import ValidationError

from ..errors import ParseError
from ..models.completion import Completion
from ..models.document import Document
from ..models.filter import EvPeriodicSequence, PrincipalFilter
from ..models.module import LeftModule, RightModule
from ..models.quantale import Base, QValue, parse_value
from ..models.space import Space
from .quantale_service import quantale_service

logger = structlog.get_logger(__name__)

Line = Tuple[int, List[str]]


def _validation_message(e: ValidationError) -> str:
    return "; ".join(err["msg"].removeprefix("Value error, ") for err in e.errors())


class ParserService:
    HEADERS = ("space", "module", "filter", "seq")

    def parse_document(self, text: str) -> Document:
        """
        Parse a file of space, module, filter and sequence blocks.

        Raises:
            ParseError: with the 1-based line number of the offending line
        """
        doc = Document()
        blocks: List[Tuple[Line, List[Line]]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            tokens = raw.split("#", 1)[0].split()
            if not tokens:
                continue
            if tokens[0] in self.HEADERS:
                blocks.append(((number, tokens), []))
            elif not blocks:
                raise ParseError(f"'{tokens[0]}' outside of any block", number)
            else:
                blocks[-1][1].append((number, tokens))

        for header, body in blocks:
            kind = header[1][0]
            if kind == "space":
                space = self._parse_space(header, body)
                self._register(doc.spaces, space.name, space, header[0])
            elif kind == "module":
                module = self._parse_module(doc, header, body)
                self._register(doc.modules, module.name, module, header[0])
            elif kind == "filter":
                f = self._parse_filter(doc, header, body)
                self._register(doc.filters, f.name, f, header[0])
            else:
                seq = self._parse_sequence(doc, header, body)
                self._register(doc.sequences, seq.name, seq, header[0])
        logger.debug(
            "document_parsed",
            spaces=len(doc.spaces),
            modules=len(doc.modules),
            filters=len(doc.filters),
            sequences=len(doc.sequences),
        )
        return doc

    def _register(self, table: Dict, name: str, item, line: int) -> None:
        if name in table:
            raise ParseError(f"duplicate name '{name}'", line)
        table[name] = item

    def _value(self, token: str, base: Base, line: int) -> QValue:
        try:
            return parse_value(token, base)
        except ValueError as e:
            raise ParseError(str(e), line)

    def _space_ref(self, doc: Document, name: str, line: int) -> Space:
        if name not in doc.spaces:
            raise ParseError(f"unknown space '{name}'", line)
        return doc.spaces[name]

    def _parse_space(self, header: Line, body: List[Line]) -> Space:
        line, tokens = header
        if len(tokens) != 4 or tokens[2] != "over" or tokens[3] not in ("rplus", "bool"):
            raise ParseError("expected 'space NAME over rplus|bool'", line)
        name, base = tokens[1], Base(tokens[3])
        ops = quantale_service.ops(base)
        points: Optional[List[str]] = None
        entries: Dict[Tuple[str, str], QValue] = {}
        for number, row in body:
            if row[0] == "points":
                if points is not None:
                    raise ParseError("points given twice", number)
                points = row[1:]
                if not points:
                    raise ParseError("empty points list", number)
                if len(set(points)) != len(points):
                    raise ParseError("duplicate point names", number)
            elif row[0] == "d":
                if points is None:
                    raise ParseError("'d' before 'points'", number)
                if len(row) != 4:
                    raise ParseError("expected 'd X Y VALUE'", number)
                x, y = row[1], row[2]
                for p in (x, y):
                    if p not in points:
                        raise ParseError(f"unknown point '{p}' in space '{name}'", number)
                entries[(x, y)] = self._value(row[3], base, number)
            else:
                raise ParseError(f"unexpected '{row[0]}' in space block", number)
        if points is None:
            raise ParseError(f"space '{name}' has no points", line)
        matrix = tuple(
            tuple(ops.unit if x == y else entries.get((x, y), ops.initial) for y in points)
            for x in points
        )
        try:
            return Space(name=name, base=base, points=tuple(points), matrix=matrix)
        except ValidationError as e:
            raise ParseError(_validation_message(e), line)

    def _parse_module(self, doc: Document, header: Line, body: List[Line]):
        line, tokens = header
        if len(tokens) != 5 or tokens[2] != "on" or tokens[4] not in ("left", "right"):
            raise ParseError("expected 'module NAME on SPACE left|right'", line)
        space = self._space_ref(doc, tokens[3], line)
        values: Dict[str, QValue] = {}
        for number, row in body:
            if row[0] != "m" or len(row) != 3:
                raise ParseError("expected 'm X VALUE'", number)
            if row[1] not in space:
                raise ParseError(f"unknown point '{row[1]}' in space '{space.name}'", number)
            values[row[1]] = self._value(row[2], space.base, number)
        missing = [p for p in space.points if p not in values]
        if missing:
            raise ParseError(f"module '{tokens[1]}' has no value for {', '.join(missing)}", line)
        cls = LeftModule if tokens[4] == "left" else RightModule
        try:
            return cls(space=space, values=tuple(values[p] for p in space.points), name=tokens[1])
        except ValidationError as e:
            raise ParseError(_validation_message(e), line)

    def _parse_filter(self, doc: Document, header: Line, body: List[Line]) -> PrincipalFilter:
        line, tokens = header
        if len(tokens) != 4 or tokens[2] != "on":
            raise ParseError("expected 'filter NAME on SPACE'", line)
        space = self._space_ref(doc, tokens[3], line)
        generator: List[str] = []
        for number, row in body:
            if row[0] != "gen":
                raise ParseError("expected 'gen x y ...'", number)
            for p in row[1:]:
                if p not in space:
                    raise ParseError(f"unknown point '{p}' in space '{space.name}'", number)
            generator.extend(row[1:])
        try:
            return PrincipalFilter(space=space, generator=tuple(dict.fromkeys(generator)), name=tokens[1])
        except ValidationError as e:
            raise ParseError(_validation_message(e), line)

    def _parse_sequence(self, doc: Document, header: Line, body: List[Line]) -> EvPeriodicSequence:
        line, tokens = header
        if len(tokens) != 4 or tokens[2] != "on":
            raise ParseError("expected 'seq NAME on SPACE'", line)
        space = self._space_ref(doc, tokens[3], line)
        parts: Dict[str, List[str]] = {"pre": [], "cycle": []}
        for number, row in body:
            if row[0] not in parts:
                raise ParseError("expected 'pre ...' or 'cycle ...'", number)
            for p in row[1:]:
                if p not in space:
                    raise ParseError(f"unknown point '{p}' in space '{space.name}'", number)
            parts[row[0]].extend(row[1:])
        try:
            return EvPeriodicSequence(
                space=space, preperiod=tuple(parts["pre"]), cycle=tuple(parts["cycle"]), name=tokens[1]
            )
        except ValidationError as e:
            raise ParseError(_validation_message(e), line)

    def operand(self, doc: Document, space: Space, token: str) -> Union[PrincipalFilter, LeftModule]:
        """
        A named filter or left module of the document, or an inline generator
        such as ``{a,b}``.

        Raises:
            ParseError: unknown name, a right module, or an object on another space
        """
        if token.startswith("{") and token.endswith("}"):
            points = [p for p in token[1:-1].split(",") if p]
            for p in points:
                if p not in space:
                    raise ParseError(f"unknown point '{p}' in space '{space.name}'")
            try:
                return PrincipalFilter(space=space, generator=space.ordered(points))
            except ValidationError as e:
                raise ParseError(_validation_message(e))
        found = doc.filters.get(token) or doc.modules.get(token)
        if found is None:
            raise ParseError(f"no filter or module named '{token}'")
        if isinstance(found, RightModule):
            raise ParseError(f"'{token}' is a right module; distances need filters or left modules")
        if found.space != space:
            raise ParseError(f"'{token}' lives on '{found.space.name}', not '{space.name}'")
        return found

    # -- emitters ------------------------------------------------------------

    def format_space(self, s: Space) -> str:
        lines = [f"space {s.name} over {s.base.value}", "points " + " ".join(s.points)]
        for x in s.points:
            for y in s.points:
                if x != y:
                    lines.append(f"d {x} {y} {s.d(x, y)}")
        return "\n".join(lines) + "\n"

    def format_module(self, m) -> str:
        variance = "left" if isinstance(m, LeftModule) else "right"
        lines = [f"module {m.name or 'M'} on {m.space.name} {variance}"]
        lines += [f"m {p} {v}" for p, v in zip(m.space.points, m.values)]
        return "\n".join(lines) + "\n"

    def format_table(self, c: Completion) -> str:
        """TSV: completion point, generator subset, then the module value at each source point"""
        lines = ["\t".join(["point", "generator"] + list(c.source.points))]
        for row in c.table:
            lines.append("\t".join([row.name, ",".join(row.generator) or "-"] + [str(v) for v in row.values]))
        return "\n".join(lines) + "\n"

    def format_embedding(self, c: Completion) -> str:
        return "".join(f"{x}\t{c.embedding(x)}\n" for x in c.source.points)


parser_service = ParserService()
