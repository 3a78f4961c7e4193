"""Tokenizer and parser behaviour, including round-trips of the bundled corpus."""

import pytest
from hypothesis import given, strategies as st

from qclite import ParseError, LexError
from qclite import syntax
from qclite.syntax import (Binary, Call, If, IntLit, Name, Print, Routine, Unary,
                           parse_interactive, parse_program, parse_source, tokenize,
                           unparse)


def kinds_and_texts(source):
    return [(t.kind, t.text) for t in tokenize(source)]


class TestTokenize:
    def test_register_declaration(self):
        assert kinds_and_texts("qureg a[1];") == [
            ("kw", "qureg"), ("ident", "a"), ("sym", "["), ("int", "1"),
            ("sym", "]"), ("sym", ";"),
        ]

    def test_comment_dropped(self):
        tokens = tokenize("Rot(-pi/3,a); // c")
        assert [t.text for t in tokens] == [
            "Rot", "(", "-", "pi", "/", "3", ",", "a", ")", ";",
        ]

    def test_power_and_parens(self):
        assert [t.text for t in tokenize("2^(i-j)")] == ["2", "^", "(", "i", "-", "j", ")"]

    def test_positions(self):
        tokens = tokenize("int x;\n  x = 2;")
        assert (tokens[0].line, tokens[0].column) == (1, 1)
        assert (tokens[3].line, tokens[3].column) == (2, 3)

    def test_real_literals(self):
        tokens = tokenize("0.5 2e3 1.5e-2 7")
        assert [t.kind for t in tokens] == ["real", "real", "real", "int"]

    def test_two_char_symbols(self):
        assert [t.text for t in tokenize("a==b!=c<=d>=e")] == [
            "a", "==", "b", "!=", "c", "<=", "d", ">=", "e"]

    def test_invalid_character(self):
        with pytest.raises(LexError) as err:
            tokenize("int x @ 3;")
        assert err.value.line == 1
        assert err.value.column == 7


class TestParse:
    def test_corpus_parses(self, corpus):
        for name in ("dft.qcl", "inc.qcl", "parity.qcl", "cinc.qcl", "demux.qcl"):
            tree = parse_source(corpus[name])
            assert len(tree.items) == 1
            assert isinstance(tree.items[0], Routine)

    def test_dft_shape(self, corpus):
        routine = parse_source(corpus["dft.qcl"]).items[0]
        assert routine.kind == "operator"
        assert not routine.cond
        assert [p.type for p in routine.params] == ["qureg"]
        outer_for = routine.body[-2]
        inner_if = outer_for.body[0].body[0]
        assert isinstance(inner_if, If)
        assert isinstance(inner_if.cond, Binary) and inner_if.cond.op == "and"

    def test_cond_flag(self):
        tree = parse_source("cond qufunct inc(qureg x, quconst e) { }")
        routine = tree.items[0]
        assert routine.cond and routine.kind == "qufunct"
        assert [p.type for p in routine.params] == ["qureg", "quconst"]

    def test_measure_in_operator_parses(self):
        tree = parse_source("operator f(qureg q) { measure q; }")
        assert isinstance(tree.items[0], Routine)

    def test_precedence(self):
        expr = parse_interactive("print 1 + 2 * 3 ^ 4 ^ 5;")[0].args[0]
        assert expr.op == "+"
        assert expr.right.op == "*"
        power = expr.right.right
        assert power.op == "^" and power.right.op == "^"  # right associative

    def test_unary_binds_tighter_than_power(self):
        expr = parse_interactive("print -2 ^ 2;")[0].args[0]
        assert expr.op == "^"
        assert isinstance(expr.left, Unary)

    def test_boolean_precedence(self):
        expr = parse_interactive("print a or b xor c and not d;")[0].args[0]
        assert expr.op == "or"
        assert expr.right.op == "xor"
        assert expr.right.right.op == "and"
        assert expr.right.right.right.op == "not"

    def test_comparison_level(self):
        expr = parse_interactive("print 1 + 2 < 3 and true;")[0].args[0]
        assert expr.op == "and"
        assert expr.left.op == "<"

    def test_slice_and_concat(self):
        stmt = parse_interactive("CNot(x[i], x[0:i-1] & e);")[0]
        target, control = stmt.args
        assert isinstance(target, syntax.Index)
        assert isinstance(control, Binary) and control.op == "&"
        assert isinstance(control.left, syntax.RangeIndex)

    def test_for_with_step(self):
        stmt = parse_interactive("for i = #x-1 to 1 step -1 { Not(x[0]); }")[0]
        assert stmt.var == "i"
        assert isinstance(stmt.step, Unary)
        assert isinstance(stmt.start, Binary) and stmt.start.op == "-"
        assert isinstance(stmt.start.left, syntax.Length)

    def test_length_binds_before_subtraction(self):
        expr = parse_interactive("print #x-1;")[0].args[0]
        assert expr.op == "-"

    def test_parse_errors_carry_position(self):
        with pytest.raises(ParseError) as err:
            parse_source("qureg a[;")
        assert "expected" in err.value.message
        assert err.value.line == 1

    def test_missing_semicolon(self):
        with pytest.raises(ParseError):
            parse_source("H(q)")

    def test_nested_routine_rejected(self):
        with pytest.raises(ParseError):
            parse_source("operator f(qureg q) { operator g(qureg p) { } }")


class TestInteractive:
    def test_dump(self):
        items = parse_interactive("dump;")
        assert len(items) == 1 and isinstance(items[0], syntax.Dump)

    def test_quantum_if(self):
        items = parse_interactive("if a and b { inc(q); }")
        assert isinstance(items[0], If)
        assert isinstance(items[0].then[0], syntax.CallStmt)

    def test_empty_line(self):
        assert parse_interactive("") == []
        assert parse_interactive("   // commentary") == []

    def test_multiple_statements(self):
        items = parse_interactive("qureg a[1]; qureg b[1];")
        assert [type(i) for i in items] == [syntax.RegDecl, syntax.RegDecl]

    def test_inverted_call(self):
        stmt = parse_interactive("!dft(q);")[0]
        assert stmt.invert and stmt.name == "dft"

    def test_exit(self):
        assert isinstance(parse_interactive("exit;")[0], syntax.ExitStmt)


class TestRoundTrip:
    def test_corpus_round_trip(self, corpus):
        for name, source in corpus.items():
            tree = parse_source(source)
            again = parse_source(unparse(tree))
            assert again == tree, f"round trip failed for {name}"

    def test_parse_deterministic(self, corpus):
        source = corpus["dft.qcl"]
        assert parse_source(source) == parse_source(source)

    @given(st.integers(min_value=0, max_value=10 ** 9))
    def test_int_literal_round_trip(self, value):
        expr = parse_interactive(f"print {value};")[0].args[0]
        assert expr == IntLit(value)

    @given(st.sampled_from(["+", "-", "*", "/", "^", "mod"]),
           st.integers(0, 99), st.integers(1, 99))
    def test_binary_round_trip(self, op, a, b):
        line = f"print {a} {op} {b};"
        stmt = parse_interactive(line)[0]
        assert parse_interactive(syntax.unparse_stmt(stmt)) == [stmt]

    @given(st.recursive(
        st.one_of(
            st.integers(0, 9).map(IntLit),
            st.sampled_from("abc").map(Name),
        ),
        lambda leaf: st.one_of(
            st.tuples(st.sampled_from(["+", "-", "*", "/", "mod", "^",
                                       "and", "or", "xor", "==", "<", "&"]),
                      leaf, leaf).map(lambda t: Binary(*t)),
            st.tuples(st.sampled_from(["-", "not"]), leaf).map(lambda t: Unary(*t)),
            leaf.map(syntax.Length),
            st.tuples(leaf, leaf).map(lambda t: syntax.Index(*t)),
        ),
        max_leaves=12,
    ))
    def test_generated_expression_round_trip(self, expr):
        stmt = Print([expr])
        assert parse_interactive(syntax.unparse_stmt(stmt)) == [stmt]
