import json
import logging

from django.core.management.base import BaseCommand, CommandError

from darbouxkit.exceptions import KernelError
from darbouxkit.textio import read_expressions

logger = logging.getLogger("darbouxkit.commands")

USAGE_ERROR = 2
VERIFICATION_FAILED = 1


class KernelCommand(BaseCommand):
    """
    Base for the kernel commands

    Adds ``--format text|json`` to every command and ``--in FILE`` to the
    commands that take expressions; kernel errors leave with exit code 2.
    """

    requires_system_checks = []

    # option dests filled, in order, from the lines of --in
    expression_options = ()
    # dest -> flag, for dests that differ from their flag
    option_flags = {}

    def add_arguments(self, parser):
        if self.expression_options:
            parser.add_argument(
                "--in",
                dest="input_file",
                metavar="FILE",
                help="Read expressions one per line, filling "
                + ", ".join(self.flag(name) for name in self.expression_options)
                + " in order",
            )
        parser.add_argument("--format", choices=["text", "json"], default="text")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        try:
            self.fill_from_file(options)
            self.run(options)
        except KernelError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR) from e
        except OSError as e:
            raise CommandError(f"Cannot read input: {e}", returncode=USAGE_ERROR) from e

    def run(self, options):
        raise NotImplementedError("subclasses of KernelCommand must provide a run() method")

    def fill_from_file(self, options):
        path = options.get("input_file")
        if not path:
            return
        open_slots = [name for name in self.expression_options if not options.get(name)]
        lines = read_expressions(path)
        if len(lines) > len(open_slots):
            raise CommandError(
                f"{path} has {len(lines)} expressions but only {len(open_slots)} "
                "options are left to fill",
                returncode=USAGE_ERROR,
            )
        options.update(zip(open_slots, lines))
        logger.debug("Filled %s from %s", ", ".join(open_slots[: len(lines)]), path)

    def flag(self, dest):
        return self.option_flags.get(dest, f"--{dest}")

    def require(self, options, *names):
        missing = [self.flag(name) for name in names if not options.get(name)]
        if missing:
            raise CommandError(
                f"Missing expression for {', '.join(missing)}", returncode=USAGE_ERROR
            )
        return [options[name] for name in names]

    def emit(self, options, lines, payload):
        """Write ``lines`` (text) or ``payload`` (json) to stdout"""
        if options["format"] == "json":
            self.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False))
        else:
            for line in lines:
                self.stdout.write(line)
