import logging
from functools import wraps

import click

from vdge.errors import InputError, StateFileError

logger = logging.getLogger(__name__)

INPUT_ERROR = 2
RUNTIME_ERROR = 1


class CommandFailed(click.ClickException):
    """ClickException carrying our exit code"""

    def __init__(self, message, exit_code):
        super().__init__(message)
        self.exit_code = exit_code


def exit_codes(f):
    """
    Decorator for CLI commands: input errors exit with 2, anything else that
    escapes the command exits with 1. A one-line diagnostic goes to stderr.
    """
    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except StateFileError as e:
            logger.error(f"Invalid state file ({e.field}): {e}")
            raise CommandFailed(f"invalid state file, field {e}", INPUT_ERROR)
        except InputError as e:
            logger.error(f"Invalid input: {e}")
            raise CommandFailed(str(e), INPUT_ERROR)
        except Exception as e:
            logger.exception(f"Command failed: {e}")
            raise CommandFailed(f"{type(e).__name__}: {e}", RUNTIME_ERROR)

    return decorated_function
