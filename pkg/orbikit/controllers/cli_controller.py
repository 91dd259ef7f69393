import argparse
import json
import logging
import sys
import traceback
from typing import List
from pydantic import BaseModel, ValidationError
from orbikit.commands import OrbikitApp, build_parser
from orbikit.models import ErrorReport, OrbikitException, UsageError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message=f"{self.prog}: {message}")


def _write(result, output_format):
    if output_format == "json":
        if isinstance(result.data, BaseModel):
            print(result.data.model_dump_json(by_alias=True))
        else:
            print(json.dumps(result.data))
    elif result.text:
        print(result.text)


def _first_error(ex: ValidationError) -> str:
    error = ex.errors()[0]
    location = ".".join(str(part) for part in error["loc"])
    return f"{location}: {error['msg']}" if location else error["msg"]


def _report_error(ex, debug, exit_code):
    logger.error(f"Error at command: {str(ex)}\n{traceback.format_exc()}")
    report = ErrorReport.from_exception(ex, debug)
    message = report.message if isinstance(ex, OrbikitException) else f"{report.message}: {ex}"
    print(f"{report.code}: {message}".splitlines()[0], file=sys.stderr)
    if report.detail:
        print(report.detail, file=sys.stderr)
    return exit_code


def run(argv: List[str] = None, app: OrbikitApp = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    debug = "--debug" in argv
    if debug:
        logging.basicConfig(level=logging.DEBUG)
    app = app or OrbikitApp(logger=logging.getLogger("orbikit.app"), debug=debug)

    try:
        parser = build_parser(app, ArgumentParser)
        args = parser.parse_args(argv)
        result = app.process_command(args.command_key, args)
        _write(result, args.format)
        return EXIT_OK if result.passed else EXIT_FAILED

    except SystemExit as ex:
        # --help
        return ex.code if isinstance(ex.code, int) else EXIT_OK

    except UsageError as ex:
        return _report_error(ex, debug, EXIT_USAGE)

    except ValidationError as ex:
        usage = UsageError(message=f"Invalid input: {_first_error(ex)}", root_cause=ex)
        return _report_error(usage, debug, EXIT_USAGE)

    except Exception as ex:
        return _report_error(ex, debug, EXIT_DOMAIN)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
