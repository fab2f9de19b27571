from django.core.management.base import CommandError

from darbouxkit.selftest import CHECKS, SelftestConfig, run_selftest

from ._base import USAGE_ERROR, VERIFICATION_FAILED, KernelCommand


class Command(KernelCommand):
    help = "Run the symbolic and randomized property suites and report pass/fail counts"

    def add_command_arguments(self, parser):
        parser.add_argument("--max-order", type=int, help="Highest d for symbolic checks")
        parser.add_argument("--seed", type=int)
        parser.add_argument(
            "--numeric-max-order", type=int, help="Highest d for randomized jet checks"
        )
        parser.add_argument("--points", type=int, help="Random points per d")
        parser.add_argument("--cases", type=int, help="Random cases for the property suites")
        parser.add_argument(
            "--check",
            action="append",
            dest="checks",
            choices=list(CHECKS),
            help="Run only this check (repeatable)",
        )

    def run(self, options):
        try:
            config = SelftestConfig.from_settings(
                max_order=options["max_order"],
                numeric_max_order=options["numeric_max_order"],
                seed=options["seed"],
                points=options["points"],
                cases=options["cases"],
            )
        except ValueError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR) from e

        report = run_selftest(config, options["checks"])

        lines = []
        for result in report.results:
            status = self.style.SUCCESS("PASS") if result.passed else self.style.ERROR("FAIL")
            lines.append(f"{status} {result.name}: {result.detail}")
        lines.append(f"{report.passed} passed, {report.failed} failed")
        payload = {
            "seed": config.seed,
            "passed": report.passed,
            "failed": report.failed,
            "checks": [
                {"name": r.name, "passed": r.passed, "detail": r.detail} for r in report.results
            ],
        }
        self.emit(options, lines, payload)

        if not report.ok:
            raise CommandError(
                f"{report.failed} check(s) failed", returncode=VERIFICATION_FAILED
            )
