"""Python front end for the brst engine.

`compute` runs one command-line job and returns its JSON result as a dict.
"""

import json

from ._core import (
    Error,
    LieAlgebra,
    ParseError,
    ResourceError,
    ValidationError,
    builtin_names,
    run,
)

try:
    from ._core import __version__
except ImportError:  # built without a version define
    __version__ = "0.0.0"

__all__ = [
    "CommandError",
    "Error",
    "LieAlgebra",
    "ParseError",
    "ResourceError",
    "ValidationError",
    "builtin_names",
    "compute",
    "run",
]


class CommandError(RuntimeError):
    """A command exited nonzero; `code` is its exit status."""

    def __init__(self, code, kind, message):
        super().__init__(f"{kind}: {message}")
        self.code = code
        self.kind = kind


def _flag(name):
    return "--" + name.replace("_", "-")


def compute(command, *positional, **options):
    """Runs `brst <command> [positional...] --option value ...` and parses the JSON.

    True-valued options become bare flags, False/None ones are dropped and
    lists repeat the flag.
    """
    args = [command, *map(str, positional)]
    for key, value in options.items():
        if value is None or value is False:
            continue
        if value is True:
            args.append(_flag(key))
        elif isinstance(value, (list, tuple)):
            for item in value:
                args += [_flag(key), str(item)]
        else:
            args += [_flag(key), str(value)]
    code, out, err = run(args)
    if code != 0:
        try:
            info = json.loads(err)
        except ValueError:
            info = {"error": "unknown", "message": err.strip()}
        raise CommandError(code, info.get("error", "unknown"), info.get("message", ""))
    return json.loads(out)
