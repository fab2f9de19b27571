from django.core.management.base import CommandError

from darbouxkit.bell import bell_complete, bell_complete_det, bell_partial
from darbouxkit.ring import var
from darbouxkit.textio import format_polynomial, parse_polynomial_list

from ._base import USAGE_ERROR, KernelCommand


class Command(KernelCommand):
    help = "Print a partial or complete Bell polynomial"

    # "args" is taken by BaseCommand for positional arguments
    expression_options = ("bell_args",)
    option_flags = {"bell_args": "--args"}

    def add_command_arguments(self, parser):
        which = parser.add_mutually_exclusive_group(required=True)
        which.add_argument("--partial", nargs=2, type=int, metavar=("N", "K"))
        which.add_argument("--complete", type=int, metavar="N")
        parser.add_argument(
            "--args", dest="bell_args", help="Comma separated arguments; x1, x2, ... by default"
        )
        parser.add_argument("--method", choices=["sum", "det"], default="sum")

    def run(self, options):
        n = options["complete"] if options["partial"] is None else options["partial"][0]
        if options["bell_args"]:
            xs = parse_polynomial_list(options["bell_args"])
        else:
            xs = [var(f"x{i}") for i in range(1, max(n, 0) + 1)]

        if options["partial"] is not None:
            if options["method"] == "det":
                raise CommandError(
                    "--method det applies to complete Bell polynomials only",
                    returncode=USAGE_ERROR,
                )
            polynomial = bell_partial(n, options["partial"][1], xs)
        elif options["method"] == "det":
            polynomial = bell_complete_det(n, xs)
        else:
            polynomial = bell_complete(n, xs)

        text = format_polynomial(polynomial)
        self.emit(options, [text], {"polynomial": text})
