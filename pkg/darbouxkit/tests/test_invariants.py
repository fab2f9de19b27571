import random

from django.test import SimpleTestCase

from darbouxkit.bell import bell_arguments, bell_complete
from darbouxkit.exceptions import GaugeSymbolClash, MixedAlphaJet, UnnormalizedAlphaJet
from darbouxkit.golden import example_d5, p_table
from darbouxkit.invariants import (
    InvariantSet,
    OmegaMode,
    bell_conjugate_M,
    conjugated_coefficient,
    frame_restrict,
    invariants_bell,
    invariants_frame,
    invariants_omega,
    laplace_invariants,
    omega_power,
    p_op,
    verify_gauge_invariance,
    verify_gauge_invariance_numeric,
)
from darbouxkit.operators import (
    GaugeParameter,
    LaplaceOperator,
    LinearDiffOperator,
    NormalizedM,
    gauge_action_laplace,
    gauge_conjugate,
    gauge_conjugate_M,
)
from darbouxkit.ring import X, Y, var
from darbouxkit.textio import parse_polynomial

GENERIC_L = LaplaceOperator.generic()


class GoldenExampleTests(SimpleTestCase):
    def test_bell_form_reproduces_the_order_five_example(self):
        golden = example_d5()
        self.assertEqual(invariants_bell(golden.laplace, golden.M).differences(golden.expected), {})

    def test_omega_form_reproduces_the_order_five_example(self):
        golden = example_d5()
        self.assertEqual(invariants_omega(golden.laplace, golden.M).differences(golden.expected), {})

    def test_printed_rows(self):
        golden = example_d5()
        R = invariants_bell(golden.laplace, golden.M).R
        self.assertEqual(str(R[4]), "m[4] - 5*m[5]*b")
        self.assertEqual(str(R[3]), "m[3] - 4*m[4]*b + 10*m[5]*b^2 - 10*m[5]*b_x")
        self.assertEqual(str(R[-5]), "m[-5]")

    def test_p_table(self):
        for i, expected in enumerate(p_table()):
            with self.subTest(i=i):
                self.assertEqual(p_op("b", i), expected)


class InvariantSetTests(SimpleTestCase):
    def test_order_of_entries(self):
        names = [name for name, _ in invariants_bell(GENERIC_L, NormalizedM.generic(2)).entries()]
        self.assertEqual(names, ["m", "h", "R[1]", "R[2]", "R[-2]", "R[-1]", "R[0]"])

    def test_size_is_2d_plus_3(self):
        for d in range(1, 6):
            self.assertEqual(len(invariants_bell(GENERIC_L, NormalizedM.generic(d))), 2 * d + 3)

    def test_to_dict(self):
        data = invariants_bell(GENERIC_L, NormalizedM.generic(1)).to_dict()
        self.assertEqual(list(data["R"]), ["-1", "0", "1"])
        self.assertEqual(data["R"]["0"], "-m[-1]*a + m[0] - m[1]*b")
        self.assertEqual(data["m"], "a_x - b_y")
        self.assertEqual(data["h"], "a*b + a_x - c")

    def test_laplace_invariants(self):
        h, k, m = laplace_invariants(GENERIC_L)
        self.assertEqual(h, parse_polynomial("a_x + a*b - c"))
        self.assertEqual(k, parse_polynomial("b_y + a*b - c"))
        self.assertEqual(m, h - k)
        self.assertEqual(laplace_invariants(gauge_action_laplace(GENERIC_L, GaugeParameter())), (h, k, m))


class OmegaTests(SimpleTestCase):
    def test_omega_iterates(self):
        self.assertEqual(omega_power(var("f"), OmegaMode.X_WITH_B, 1), parse_polynomial("f_x - b*f"))
        self.assertEqual(omega_power(var("f"), "y-with-a", 0), var("f"))
        self.assertEqual(p_op("a", 2), parse_polynomial("-a_y + a^2"))

    def test_bell_omega_bridge(self):
        for w in range(1, 9):
            with self.subTest(w=w):
                self.assertEqual(bell_complete(w, bell_arguments(var("b"), X, w)), p_op("b", w))
                self.assertEqual(bell_complete(w, bell_arguments(var("a"), Y, w)), p_op("a", w))

    def test_bad_arguments(self):
        with self.assertRaises(ValueError):
            p_op("c", 1)
        with self.assertRaises(ValueError):
            omega_power(var("b"), OmegaMode.X_WITH_B, -1)


class OracleTests(SimpleTestCase):
    def test_bell_and_omega_forms_agree(self):
        for d in range(1, 9):
            with self.subTest(d=d):
                M = NormalizedM.generic(d)
                self.assertEqual(invariants_bell(GENERIC_L, M), invariants_omega(GENERIC_L, M))

    def test_conjugation_identity(self):
        alpha = GaugeParameter()
        m = var("m")
        for i in range(9):
            conjugated_x = gauge_conjugate(LinearDiffOperator.dx(i).scale(m), alpha)
            conjugated_y = gauge_conjugate(LinearDiffOperator.dy(i).scale(m), alpha)
            for k in range(i + 1):
                with self.subTest(i=i, k=k):
                    self.assertEqual(
                        conjugated_x.coefficient(k, 0), conjugated_coefficient(m, i, k, alpha, X)
                    )
                    self.assertEqual(
                        conjugated_y.coefficient(0, k), conjugated_coefficient(m, i, k, alpha, Y)
                    )

    def test_bell_conjugate_matches_substitution(self):
        for d in range(1, 6):
            with self.subTest(d=d):
                M = NormalizedM.generic(d)
                alpha = GaugeParameter()
                self.assertEqual(bell_conjugate_M(M, alpha), gauge_conjugate_M(M, alpha))


class GaugeInvarianceTests(SimpleTestCase):
    def test_symbolic_invariance(self):
        for d in range(1, 5):
            for method in ("bell", "omega"):
                with self.subTest(d=d, method=method):
                    self.assertTrue(
                        verify_gauge_invariance(GENERIC_L, NormalizedM.generic(d), method=method)
                    )

    def test_concrete_exponent(self):
        alpha = GaugeParameter.of(parse_polynomial("u*v + u_x^2"))
        self.assertTrue(verify_gauge_invariance(GENERIC_L, NormalizedM.generic(3), alpha))

    def test_gauge_symbol_clash(self):
        L_alpha = LaplaceOperator(var("alpha"), var("b"), var("c"))
        with self.assertRaises(GaugeSymbolClash):
            verify_gauge_invariance(L_alpha, NormalizedM.generic(1))
        with self.assertRaises(GaugeSymbolClash):
            invariants_frame(L_alpha, NormalizedM.generic(1))
        self.assertTrue(
            verify_gauge_invariance(L_alpha, NormalizedM.generic(1), GaugeParameter("phi"))
        )

    def test_numeric_invariance(self):
        rng = random.Random(20240607)
        for d in (1, 4, 7):
            with self.subTest(d=d):
                self.assertTrue(verify_gauge_invariance_numeric(d, rng, points=20))

    def test_coefficients_alone_are_not_invariant(self):
        def raw(Lc, M):
            return InvariantSet(d=M.d, m=Lc.a, h=Lc.b, R=M.as_dict())

        self.assertFalse(verify_gauge_invariance(GENERIC_L, NormalizedM.generic(2), method=raw))

    def test_perturbed_m_is_not_invariant(self):
        def perturbed(Lc, M):
            invariants = invariants_bell(Lc, M)
            m = Lc.a.derivative(X) + Lc.b.derivative(Y)
            return InvariantSet(d=invariants.d, m=m, h=invariants.h, R=invariants.R)

        self.assertFalse(verify_gauge_invariance(GENERIC_L, NormalizedM.generic(1), method=perturbed))

    def test_order_five_example_is_invariant(self):
        golden = example_d5()
        self.assertTrue(verify_gauge_invariance(golden.laplace, golden.M))


class FrameTests(SimpleTestCase):
    def test_frame_replay(self):
        for d in range(1, 6):
            with self.subTest(d=d):
                M = NormalizedM.generic(d)
                self.assertEqual(invariants_frame(GENERIC_L, M), invariants_bell(GENERIC_L, M))

    def test_frame_substitution(self):
        p = var("alpha", 2, 0) * var("m") + var("alpha", 0, 1)
        self.assertEqual(frame_restrict(p), parse_polynomial("-b_x*m - a"))

    def test_frame_example(self):
        p = var("alpha", 1, 0) ** 2 + var("alpha", 2, 0)
        self.assertEqual(frame_restrict(p, max_order=4), parse_polynomial("b^2 - b_x"))
        self.assertEqual(frame_restrict(var("c")), var("c"))

    def test_mixed_alpha_jets_are_rejected(self):
        with self.assertRaises(MixedAlphaJet):
            frame_restrict(var("alpha", 1, 1))

    def test_underived_alpha_is_not_on_the_frame(self):
        with self.assertRaises(UnnormalizedAlphaJet) as caught:
            frame_restrict(var("alpha") * var("b"))
        self.assertNotIsInstance(caught.exception, MixedAlphaJet)
