from django.test import SimpleTestCase, override_settings

from darbouxkit.selftest import CHECKS, SelftestConfig, run_check, run_selftest

SMALL = SelftestConfig(max_order=2, numeric_max_order=3, seed=1, points=5, cases=20)


class SelftestTests(SimpleTestCase):
    def test_every_check_passes_on_a_small_budget(self):
        report = run_selftest(SMALL)
        self.assertEqual([r.name for r in report.failures()], [])
        self.assertEqual(report.passed, len(CHECKS))
        self.assertTrue(report.ok)

    def test_runs_are_reproducible(self):
        first = run_check("parser-round-trip", SMALL)
        second = run_check("parser-round-trip", SMALL)
        self.assertEqual(first, second)

    def test_subset(self):
        report = run_selftest(SMALL, ["bell-numbers", "p-table"])
        self.assertEqual([r.name for r in report.results], ["bell-numbers", "p-table"])

    def test_unknown_check(self):
        with self.assertRaises(ValueError):
            run_selftest(SMALL, ["no-such-check"])

    @override_settings(SELFTEST_MAX_ORDER=3, SELFTEST_SEED=5)
    def test_config_from_settings(self):
        config = SelftestConfig.from_settings(seed=None, cases=10)
        self.assertEqual((config.max_order, config.seed, config.cases), (3, 5, 10))

    def test_config_rejects_empty_budgets(self):
        with self.assertRaises(ValueError):
            SelftestConfig.from_settings(points=0)
