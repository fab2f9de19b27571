from darbouxkit.operators import op_compose
from darbouxkit.textio import format_operator, parse_operator

from ._base import KernelCommand


class Command(KernelCommand):
    help = "Print the composition left ∘ right in normal form"

    expression_options = ("left", "right")

    def add_command_arguments(self, parser):
        parser.add_argument("--left")
        parser.add_argument("--right")

    def run(self, options):
        left, right = self.require(options, "left", "right")
        composed = format_operator(op_compose(parse_operator(left), parse_operator(right)))
        self.emit(options, [composed], {"operator": composed})
