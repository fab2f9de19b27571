from django.core.management.base import CommandError

from darbouxkit.utils import darboux_payload, parse_quadruple

from ._base import VERIFICATION_FAILED, KernelCommand


class Command(KernelCommand):
    help = "Print the residual N∘L - L1∘M; exit 0 iff it vanishes"

    expression_options = ("N", "L", "L1", "M")

    def add_command_arguments(self, parser):
        parser.add_argument("--N")
        parser.add_argument("--L", help="Principal symbol Dx*Dy")
        parser.add_argument("--L1", help="Principal symbol Dx*Dy")
        parser.add_argument("--M")

    def run(self, options):
        quadruple = parse_quadruple(*self.require(options, "N", "L", "L1", "M"))
        payload = darboux_payload(quadruple)
        self.emit(options, [payload["residual"]], payload)

        if not payload["is_darboux"]:
            raise CommandError(
                "N∘L != L1∘M: not a Darboux transformation", returncode=VERIFICATION_FAILED
            )
