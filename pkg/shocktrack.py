#!/usr/bin/env python3
"""shocktrack command line

Runs one subcommand and turns its outcome into the exit status:
0 pass, 1 verdict or check failed, 2 input error, 3 truncated run.
"""

import sys

from src.cli.commands import EXIT_FAIL, EXIT_INPUT, run
from src.core.errors import InputError, ShocktrackError
from src.utils.logger import get_debug_logger, get_error_logger


def main(argv: list[str] | None = None) -> None:
    """Main entry point for the shocktrack command line"""
    debug_logger = get_debug_logger()

    try:
        code = run(argv)

    except InputError as e:
        debug_logger.error(f"Invalid input: {e}")
        sys.exit(EXIT_INPUT)

    except ShocktrackError as e:
        debug_logger.error(f"{type(e).__name__}: {e}")
        get_error_logger().log_error(
            type(e).__name__, str(e), getattr(e, "diagnostics", None), e
        )
        sys.exit(EXIT_FAIL)

    except Exception as e:
        debug_logger.error(f"Unexpected error in shocktrack: {e}", exc_info=True)
        get_error_logger().log_error("UnexpectedError", str(e), {"argv": argv}, e)
        sys.exit(EXIT_FAIL)

    sys.exit(code)


if __name__ == "__main__":
    main()
