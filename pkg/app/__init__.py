# -*- coding: utf-8 -*-
import sys

from app import log, config
from app.commands import (
    RangeCheck, Constants, Chain, SupersolutionAudit, CounterexampleAudit, SolveRadial, Solve2D, Harnack, Compare
)
from app.errors import AppError, ScenarioError, ERR_UNKNOWN, EXIT_OK, EXIT_FAILED_CHECKS
from app.service import scenario_parser, report_writer

LOG = log.get_logger()


class App(object):
    """Scenario runner: commands are registered by name, errors by type."""

    def __init__(self):
        self._commands = {}
        self._error_handlers = []
        LOG.debug(f"{config.BRAND_NAME} is starting")

        # Parameters and explicit constants
        self.add_command(config.COMMAND_RANGE_CHECK, RangeCheck())
        self.add_command(config.COMMAND_CONSTANTS, Constants())
        self.add_command(config.COMMAND_CHAIN, Chain())

        # Closed-form audits
        self.add_command(config.COMMAND_SUPERSOLUTION_AUDIT, SupersolutionAudit())
        self.add_command(config.COMMAND_COUNTEREXAMPLE_AUDIT, CounterexampleAudit())

        # Grid experiments
        self.add_command(config.COMMAND_SOLVE_RADIAL, SolveRadial())
        self.add_command(config.COMMAND_SOLVE_2D, Solve2D())
        self.add_command(config.COMMAND_HARNACK, Harnack())
        self.add_command(config.COMMAND_COMPARE, Compare())

        self.add_error_handler(AppError, AppError.handle)

    def add_command(self, name, command):
        self._commands[name] = command

    def add_error_handler(self, exception, handler):
        # later registrations take precedence, as with route error handlers
        self._error_handlers.insert(0, (exception, handler))

    def _handle(self, error, stream):
        for exception, handler in self._error_handlers:
            if isinstance(error, exception):
                return handler(error, stream)
        raise error

    def run(self, scenario, out_dir=None, stream=None):
        """Runs one scenario; 0 when every row passes, 1 when some row fails, the error's exit code otherwise."""
        stream = sys.stderr if stream is None else stream
        out_dir = config.OUTPUT_DIR if out_dir is None else out_dir
        try:
            command = self._commands.get(scenario.command)
            if command is None:
                raise ScenarioError(f"no command registered for {scenario.command!r}")
            result = command.execute(scenario)
            report_writer.write_outputs(scenario, out_dir, result.rows, result.trajectory, result.reports,
                                        result.payload)
        except AppError as e:
            return self._handle(e, stream)
        except Exception as e:
            LOG.exception(f"Unexpected error in {scenario.scenario_id}")
            return AppError.handle(AppError(ERR_UNKNOWN, f"{type(e).__name__}: {e}"), stream)
        return EXIT_OK if result.passed else EXIT_FAILED_CHECKS

    def run_file(self, path, out_dir=None, stream=None):
        stream = sys.stderr if stream is None else stream
        try:
            scenario = scenario_parser.parse_scenario(path)
        except AppError as e:
            return self._handle(e, stream)
        LOG.info(f"Loaded scenario {scenario.scenario_id} from {path}")
        return self.run(scenario, out_dir, stream)
