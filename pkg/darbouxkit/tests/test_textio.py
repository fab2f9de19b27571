import tempfile
from pathlib import Path

from django.test import SimpleTestCase
from hypothesis import given

from darbouxkit.exceptions import NegativePower, OperatorSyntaxError
from darbouxkit.operators import LinearDiffOperator
from darbouxkit.ring import var
from darbouxkit.textio import (
    format_operator,
    format_polynomial,
    parse_operator,
    parse_polynomial,
    parse_polynomial_list,
    read_expressions,
)

from . import strategies


class ParseTests(SimpleTestCase):
    def test_laplace_operator(self):
        P = parse_operator("Dx*Dy+a*Dx+b*Dy+c")
        self.assertEqual(format_operator(P), "Dx*Dy + a*Dx + b*Dy + c")

    def test_products_do_not_commute(self):
        self.assertEqual(format_operator(parse_operator("Dx*a")), "a*Dx + a_x")

    def test_suffix_letters_commute(self):
        self.assertEqual(parse_polynomial("a_yx"), var("a", 1, 1))
        self.assertEqual(str(parse_polynomial("a_yxx")), "a_xxy")

    def test_indexed_symbols(self):
        self.assertEqual(parse_polynomial("m[-3]_x"), var("m[-3]", 1, 0))
        self.assertEqual(parse_polynomial("m[03]"), var("m[3]"))

    def test_rationals_and_powers(self):
        self.assertEqual(str(parse_polynomial("3/6*a^2 - (a + 1)^2")), "-1/2*a^2 - 2*a - 1")

    def test_unary_minus(self):
        self.assertEqual(parse_operator("-Dx"), -LinearDiffOperator.dx())
        self.assertEqual(parse_polynomial("-(-a)"), var("a"))

    def test_whitespace_is_ignored(self):
        self.assertEqual(parse_operator(" Dx * Dy\n+ c "), parse_operator("Dx*Dy+c"))

    def test_polynomial_list(self):
        self.assertEqual(parse_polynomial_list("x1, x2 ,-b_x"), [var("x1"), var("x2"), -var("b", 1, 0)])


class ParseErrorTests(SimpleTestCase):
    def test_syntax_error_has_position(self):
        with self.assertRaises(OperatorSyntaxError) as caught:
            parse_operator("Dx + * a")
        self.assertEqual(caught.exception.line, 1)
        self.assertEqual(caught.exception.column, 6)

    def test_negative_power(self):
        with self.assertRaises(NegativePower):
            parse_operator("a^-1")

    def test_empty(self):
        with self.assertRaises(OperatorSyntaxError):
            parse_operator("   ")

    def test_zero_denominator(self):
        with self.assertRaises(OperatorSyntaxError):
            parse_polynomial("1/0*a")

    def test_fractional_exponent(self):
        with self.assertRaises(OperatorSyntaxError):
            parse_polynomial("a^1/2")

    def test_polynomial_rejects_derivatives(self):
        with self.assertRaises(OperatorSyntaxError):
            parse_polynomial("a*Dx")

    def test_unbalanced_parenthesis(self):
        with self.assertRaises(OperatorSyntaxError):
            parse_operator("(a + b")


class FormatTests(SimpleTestCase):
    def test_zero(self):
        self.assertEqual(format_operator(LinearDiffOperator.zero()), "0")
        self.assertEqual(format_polynomial(var("a") - var("a")), "0")

    def test_multi_term_coefficients_are_parenthesized(self):
        self.assertEqual(format_operator(parse_operator("(a + b)*Dx - Dy")), "(a + b)*Dx - Dy")

    def test_indexed_coefficients_print_first(self):
        self.assertEqual(str(parse_polynomial("-5*b*m[5] + m[4]")), "m[4] - 5*m[5]*b")

    @given(P=strategies.operators(4))
    def test_parse_inverts_format(self, P):
        self.assertEqual(parse_operator(format_operator(P)), P)


class ReadExpressionsTests(SimpleTestCase):
    def test_comments_and_blank_lines_are_skipped(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "pair.txt"
            path.write_text("# L\nDx*Dy + c\n\n  # M\nm[1]*Dx\n", encoding="utf-8")
            self.assertEqual(read_expressions(path), ["Dx*Dy + c", "m[1]*Dx"])
