from django.core.management.base import CommandError

from darbouxkit.utils import METHOD_CHOICES, compute_invariants, invariants_payload, parse_pair

from ._base import VERIFICATION_FAILED, KernelCommand


class Command(KernelCommand):
    help = "Print the 2d+3 generating gauge invariants of the pair (L, M)"

    expression_options = ("L", "M")

    def add_command_arguments(self, parser):
        parser.add_argument("--L", help="Dx*Dy + a*Dx + b*Dy + c")
        parser.add_argument("--M", help="A mixed-free operator of order d")
        parser.add_argument("--method", choices=METHOD_CHOICES, default="bell")
        parser.add_argument(
            "--order", type=int, help="Order d of M (inferred when omitted); pads missing m_i"
        )

    def run(self, options):
        L_text, M_text = self.require(options, "L", "M")
        laplace, M = parse_pair(L_text, M_text, options["order"])
        invariants, agree = compute_invariants(laplace, M, options["method"])

        lines = [f"{name} = {poly}" for name, poly in invariants.entries()]
        if agree is not None:
            lines.append(
                self.style.SUCCESS("methods agree") if agree else self.style.ERROR("methods disagree")
            )
        self.emit(options, lines, invariants_payload(invariants, agree))

        if agree is False:
            raise CommandError("Bell and Ω forms disagree", returncode=VERIFICATION_FAILED)
