"""
Programmatic entry point for the kernel commands.

``run_cli(["verify-darboux", "--N", ...])`` behaves like
``python manage.py verify_darboux --N ...`` and returns the exit code
instead of leaving the interpreter.
"""

import os
import sys
import traceback
from contextlib import redirect_stderr, redirect_stdout

from .management.commands._base import USAGE_ERROR

SUBCOMMANDS = ("invariants", "gauge", "compose", "verify-darboux", "bell", "selftest")


def command_name(subcommand: str) -> str:
    """``verify-darboux`` -> ``verify_darboux``"""
    return subcommand.replace("-", "_")


def usage() -> str:
    return "usage: darbouxkit {" + ",".join(SUBCOMMANDS) + "} [options]"


def exit_code(code) -> int:
    if code is None:
        return 0
    if isinstance(code, int):
        return code
    return 1


def run_cli(argv, stdout=None, stderr=None) -> int:
    """
    Dispatch ``argv`` to the management command it names

    Args:
        argv: subcommand followed by its options
        stdout: stream for results (defaults to sys.stdout)
        stderr: stream for errors and usage (defaults to sys.stderr)

    Returns:
        0 on success, 1 on verification failure, 2 on usage or syntax errors
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(argv)

    if not argv or command_name(argv[0]) not in map(command_name, SUBCOMMANDS):
        if argv:
            stderr.write(f"Unknown subcommand {argv[0]!r}\n")
        stderr.write(usage() + "\n")
        return USAGE_ERROR

    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "gaugelab.settings")
    from django.core.management import ManagementUtility

    with redirect_stdout(stdout), redirect_stderr(stderr):
        try:
            ManagementUtility(["manage.py", command_name(argv[0]), *argv[1:]]).execute()
        except SystemExit as exc:
            return exit_code(exc.code)
        except Exception:
            traceback.print_exc(file=stderr)
            return USAGE_ERROR
    return 0
