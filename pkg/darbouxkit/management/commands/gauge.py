import re

from django.core.management.base import CommandError

from darbouxkit.operators import GaugeParameter, gauge_conjugate
from darbouxkit.textio import format_operator, parse_operator

from ._base import USAGE_ERROR, KernelCommand

SYMBOL = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")


class Command(KernelCommand):
    help = "Print exp(-α) ∘ P ∘ exp(α) with symbolic jets of α"

    expression_options = ("op",)

    def add_command_arguments(self, parser):
        parser.add_argument("--op", help="The operator P")
        parser.add_argument("--alpha", default="alpha", help="Name of the gauge exponent")

    def run(self, options):
        (text,) = self.require(options, "op")
        symbol = options["alpha"]
        if not SYMBOL.match(symbol) or symbol in ("Dx", "Dy"):
            raise CommandError(f"{symbol!r} is not a valid function name", returncode=USAGE_ERROR)

        P = parse_operator(text)
        alpha = GaugeParameter(symbol=symbol).ensure_free_of(P)
        conjugated = format_operator(gauge_conjugate(P, alpha))
        self.emit(options, [conjugated], {"operator": conjugated})
