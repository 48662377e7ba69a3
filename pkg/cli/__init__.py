from .command_registry import (
    COMMANDS,
    EXIT_BAD_INPUT,
    EXIT_FAILED_CHECK,
    EXIT_OK,
    Command,
    build_parser,
    dispatch,
    register,
)
from .run_config import (
    EstimateConfig,
    MakeTwinConfig,
    RhoCheckConfig,
    RunConfig,
    SimulateConfig,
    companion_paths,
    read_config_file,
    resolve_config,
    write_run_files,
)


__all__ = [
    "COMMANDS",
    "EXIT_BAD_INPUT",
    "EXIT_FAILED_CHECK",
    "EXIT_OK",
    "Command",
    "EstimateConfig",
    "MakeTwinConfig",
    "RhoCheckConfig",
    "RunConfig",
    "SimulateConfig",
    "build_parser",
    "companion_paths",
    "dispatch",
    "read_config_file",
    "resolve_config",
    "write_run_files",
]
