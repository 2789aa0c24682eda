import pytest

from flatcomp.errors import ParseError
from flatcomp.models.completion import Notion
from flatcomp.models.filter import PrincipalFilter
from flatcomp.models.module import LeftModule, RightModule
from flatcomp.models.quantale import FALSE, INF, TRUE, ZERO, QValue
from flatcomp.services.completion_service import completion_service
from flatcomp.services.parser_service import parser_service


def test_parse_running_example(t3_text, t3):
    doc = parser_service.parse_document(t3_text)
    s = doc.space()
    assert s.name == "T3"
    assert s.matrix == t3.matrix
    assert isinstance(doc.module("M"), LeftModule)
    assert isinstance(doc.module("R"), RightModule)
    assert doc.module("N").values == (ZERO, QValue.rplus(1), QValue.rplus(4))
    assert doc.filters["F"].generator == ("a", "b")


def test_defaults_fill_the_matrix():
    doc = parser_service.parse_document("space S over rplus\npoints x y\nd x y 3\n")
    s = doc.space("S")
    assert s.d("x", "y") == QValue.rplus(3)
    assert s.d("y", "x") == INF
    assert s.d("x", "x") == ZERO


def test_bool_defaults():
    doc = parser_service.parse_document("space P over bool\npoints x y\nd x y 1\n")
    s = doc.space()
    assert s.d("x", "y") == TRUE
    assert s.d("y", "x") == FALSE
    assert s.d("y", "y") == TRUE


def test_sequence_block():
    text = "space Z over rplus\npoints p q\nd p q 0\nd q p 0\nseq S on Z\npre p\ncycle q p\n"
    seq = parser_service.parse_document(text).sequences["S"]
    assert seq.preperiod == ("p",)
    assert seq.cycle == ("q", "p")


@pytest.mark.parametrize(
    "text, line",
    [
        ("space S over rplus\npoints\n", 2),
        ("space S over rplus\npoints a b\nd a z 1\n", 3),
        ("space S over rplus\nd a b 1\npoints a b\n", 2),
        ("space S over rplus\npoints a\n\nspace S over rplus\npoints b\n", 4),
        ("space S over rplus\npoints a b\nmodule M on S left\nm a 0\n", 3),
        ("space S over rplus\npoints a b\nd a b 1\nmodule M on S left\nm a 5\nm b 0\n", 4),
        ("# header\npoints a b\n", 2),
        ("space S over rplus\npoints a b\nd a b -1\n", 3),
        ("space S over metric\npoints a\n", 1),
        ("space S over rplus\npoints a\nfilter F on T\ngen a\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parser_service.parse_document(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}: ")


def test_module_inequality_message():
    text = "space S over rplus\npoints a b\nd a b 1\nmodule M on S left\nm a 5\nm b 0\n"
    with pytest.raises(ParseError, match="module inequality fails at"):
        parser_service.parse_document(text)


def test_format_space_round_trip(t3):
    again = parser_service.parse_document(parser_service.format_space(t3)).space()
    assert again.points == t3.points
    assert again.matrix == t3.matrix


def test_format_module(t3_text):
    doc = parser_service.parse_document(t3_text)
    assert parser_service.format_module(doc.module("N")) == "module N on T3 left\nm a 0\nm b 1\nm c 4\n"


def test_operands(t3_text):
    doc = parser_service.parse_document(t3_text)
    s = doc.space()
    inline = parser_service.operand(doc, s, "{b,a}")
    assert isinstance(inline, PrincipalFilter)
    assert inline.generator == ("a", "b")
    assert parser_service.operand(doc, s, "F").name == "F"
    assert parser_service.operand(doc, s, "M").name == "M"
    with pytest.raises(ParseError, match="right module"):
        parser_service.operand(doc, s, "R")
    with pytest.raises(ParseError, match="no filter or module"):
        parser_service.operand(doc, s, "G")
    with pytest.raises(ParseError, match="unknown point"):
        parser_service.operand(doc, s, "{a,z}")


def test_format_table_and_embedding(t3):
    c = completion_service.complete(t3, Notion.P1)
    table = parser_service.format_table(c).splitlines()
    assert table[0] == "point\tgenerator\ta\tb\tc"
    assert table[4] == "{a,b}\ta,b\t0\t0\t4"
    assert parser_service.format_embedding(c) == "a\t{a}\nb\t{b}\nc\t{c}\n"


def test_free_completion_marks_empty_generator(antichain):
    c = completion_service.complete(antichain, Notion.FREE)
    assert parser_service.format_table(c).splitlines()[1].startswith("{}\t-\t")
