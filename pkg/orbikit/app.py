import argparse
import logging
from orbikit.models import CommandNotFoundException, CommandResult, Settings


class CommandBase:
    name = None
    group = None
    help = None

    def __init__(self, logger: logging.Logger = None, debug: bool = False,
                 settings: Settings = None):
        assert self.name is not None
        self.logger = logger
        self.debug = debug
        self.settings = settings or Settings()

    @classmethod
    def key(cls) -> str:
        return f"{cls.group} {cls.name}" if cls.group else cls.name

    def add_arguments(self, parser: argparse.ArgumentParser):
        pass

    def process(self, args: argparse.Namespace) -> CommandResult:
        return CommandResult()


class AppBase:
    commands = []

    def __init__(self, logger: logging.Logger = None, debug: bool = False,
                 settings: Settings = None):
        self.logger = logger or logging.getLogger(__class__.__name__)
        self.debug = debug
        self.settings = settings or Settings()
        self.__commands = {c.key(): c for c in self.commands}
        if len(self.__commands) == 0:
            self.logger.warning("No commands are registered.")

    def command_keys(self):
        return list(self.__commands)

    def get_command(self, key: str) -> CommandBase:
        command_class = self.__commands.get(key)
        if not command_class:
            raise CommandNotFoundException(
                message=f"Command '{key}' not found"
            )

        return command_class(self.logger, self.debug, self.settings)

    def process_command(self, key: str, args: argparse.Namespace) -> CommandResult:
        command = self.get_command(key)
        self.logger.debug(f"Processing command '{key}'")
        return command.process(args)
