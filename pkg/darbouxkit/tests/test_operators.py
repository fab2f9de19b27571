from django.test import SimpleTestCase
from hypothesis import assume, given

from darbouxkit.exceptions import (
    GaugeSymbolClash,
    MixedDerivative,
    NotLaplaceOperator,
    OrderMismatch,
    ZeroOperator,
)
from darbouxkit.operators import (
    GaugeParameter,
    LaplaceOperator,
    LinearDiffOperator,
    NormalizedM,
    gauge_action_laplace,
    gauge_conjugate,
    gauge_conjugate_M,
    op_apply,
    op_compose,
    principal_symbol,
)
from darbouxkit.ring import ONE, var
from darbouxkit.textio import parse_operator

from . import strategies

Dx = LinearDiffOperator.dx()
Dy = LinearDiffOperator.dy()


class CompositionTests(SimpleTestCase):
    def test_dx_past_a_coefficient(self):
        a = LinearDiffOperator.multiplication(var("a"))
        self.assertEqual(op_compose(Dx, a), parse_operator("a*Dx + a_x"))

    def test_derivations_commute(self):
        self.assertEqual(Dx @ Dy, Dy @ Dx)

    def test_zero_and_identity(self):
        P = parse_operator("a*Dx^2 + b*Dy + c")
        self.assertTrue(op_compose(P, LinearDiffOperator.zero()).is_zero)
        self.assertEqual(P @ LinearDiffOperator.identity(), P)
        self.assertEqual(LinearDiffOperator.identity() @ P, P)

    @given(P=strategies.operators(), Q=strategies.operators(), R=strategies.operators(1))
    def test_associativity(self, P, Q, R):
        self.assertEqual((P @ Q) @ R, P @ (Q @ R))

    @given(P=strategies.operators(3), Q=strategies.operators(3), f=strategies.polynomials())
    def test_compose_then_apply(self, P, Q, f):
        self.assertEqual(op_apply(P @ Q, f), op_apply(P, op_apply(Q, f)))

    def test_apply(self):
        P = parse_operator("Dx*Dy + a")
        self.assertEqual(op_apply(P, var("f")), var("f", 1, 1) + var("a") * var("f"))

    def test_order_of_zero(self):
        self.assertLess(LinearDiffOperator.zero().order, 0)
        self.assertEqual(parse_operator("Dx^2*Dy + a").order, 3)


class GaugeTests(SimpleTestCase):
    def test_conjugated_dx(self):
        self.assertEqual(gauge_conjugate(Dx, GaugeParameter()), parse_operator("Dx + alpha_x"))

    def test_identity_gauge(self):
        P = parse_operator("a*Dx^3 + b*Dx*Dy + c")
        self.assertEqual(gauge_conjugate(P, GaugeParameter.identity()), P)

    @given(P=strategies.operators(4, max_terms=2), Q=strategies.operators(4, max_terms=2))
    def test_conjugation_is_multiplicative(self, P, Q):
        alpha = GaugeParameter()
        self.assertEqual(
            gauge_conjugate(P @ Q, alpha), gauge_conjugate(P, alpha) @ gauge_conjugate(Q, alpha)
        )

    @given(P=strategies.operators(3), alpha=strategies.gauge_exponents(), beta=strategies.gauge_exponents())
    def test_exponents_add(self, P, alpha, beta):
        combined = GaugeParameter.of(alpha.value + beta.value)
        self.assertEqual(gauge_conjugate(gauge_conjugate(P, alpha), beta), gauge_conjugate(P, combined))

    @given(P=strategies.operators(3))
    def test_principal_symbol_is_invariant(self, P):
        assume(not P.is_zero)
        self.assertEqual(principal_symbol(gauge_conjugate(P, GaugeParameter())), principal_symbol(P))

    def test_zero_operator_has_no_principal_symbol(self):
        with self.assertRaises(ZeroOperator):
            principal_symbol(LinearDiffOperator.zero())

    def test_gauge_symbol_must_be_free(self):
        P = parse_operator("alpha*Dx + a")
        with self.assertRaises(GaugeSymbolClash):
            GaugeParameter().ensure_free_of(P)
        with self.assertRaises(GaugeSymbolClash):
            GaugeParameter().ensure_free_of(NormalizedM.from_operator(parse_operator("alpha_x*Dy")))
        self.assertEqual(GaugeParameter("phi").ensure_free_of(P).symbol, "phi")
        self.assertFalse(GaugeParameter.of(var("alpha")).ensure_free_of(P).is_symbolic)

    def test_laplace_action_matches_conjugation(self):
        L = LaplaceOperator.generic()
        alpha = GaugeParameter()
        self.assertEqual(
            gauge_action_laplace(L, alpha).to_operator(), gauge_conjugate(L.to_operator(), alpha)
        )
        self.assertEqual(
            gauge_action_laplace(L, alpha).c,
            var("c") + var("a") * var("alpha", 1, 0) + var("b") * var("alpha", 0, 1)
            + var("alpha", 1, 1) + var("alpha", 1, 0) * var("alpha", 0, 1),
        )

    def test_conjugated_m_stays_mixed_free(self):
        for d in range(1, 7):
            with self.subTest(d=d):
                M = NormalizedM.generic(d)
                conjugated = gauge_conjugate_M(M, GaugeParameter())
                self.assertEqual(conjugated.d, d)
                self.assertFalse(gauge_conjugate(M.to_operator(), GaugeParameter()).has_mixed_terms)
                self.assertEqual(conjugated.coefficient(d), var(f"m[{d}]"))


class LaplaceOperatorTests(SimpleTestCase):
    def test_from_operator(self):
        L = LaplaceOperator.from_operator(parse_operator("Dx*Dy + a*Dx + b*Dy + c"))
        self.assertEqual((L.a, L.b, L.c), (var("a"), var("b"), var("c")))
        self.assertEqual(str(L.to_operator()), "Dx*Dy + a*Dx + b*Dy + c")

    def test_rejects_other_shapes(self):
        for text in ("Dx*Dy + Dx^2", "2*Dx*Dy + a", "a*Dx + b"):
            with self.subTest(text=text), self.assertRaises(NotLaplaceOperator):
                LaplaceOperator.from_operator(parse_operator(text))


class NormalizedMTests(SimpleTestCase):
    def test_order_is_inferred_from_powers_and_indices(self):
        self.assertEqual(NormalizedM.from_operator(parse_operator("m[2]*Dx^2 + m[-1]*Dy")).d, 2)
        self.assertEqual(NormalizedM.from_operator(parse_operator("m[4]*Dx")).d, 4)
        self.assertEqual(NormalizedM.from_operator(parse_operator("c")).d, 1)

    def test_only_m_indices_set_the_order(self):
        self.assertEqual(NormalizedM.from_operator(parse_operator("n[9]*Dx + m[-2]")).d, 2)
        self.assertEqual(NormalizedM.from_operator(parse_operator("n[9]")).d, 1)
        self.assertEqual(NormalizedM.from_operator(parse_operator("n[9]*Dy"), base="n").d, 9)

    def test_explicit_order_pads(self):
        M = NormalizedM.from_operator(parse_operator("Dx + 1"), order=3)
        self.assertEqual(M.d, 3)
        self.assertEqual(M.coefficient(1), ONE)
        self.assertEqual(M.coefficient(0), ONE)
        self.assertTrue(M.coefficient(-3).is_zero)

    def test_explicit_order_too_small(self):
        with self.assertRaises(OrderMismatch):
            NormalizedM.from_operator(parse_operator("Dx^3"), order=2)

    def test_mixed_terms_are_rejected(self):
        with self.assertRaises(MixedDerivative):
            NormalizedM.from_operator(parse_operator("Dx*Dy + Dx"))

    def test_generic_round_trip(self):
        M = NormalizedM.generic(3)
        self.assertEqual(NormalizedM.from_operator(M.to_operator()), M)
        self.assertTrue(NormalizedM.generic(2, with_free_term=False).coefficient(0).is_zero)

    def test_order_must_be_positive(self):
        with self.assertRaises(ValueError):
            NormalizedM(0)
