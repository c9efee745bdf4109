"""Exception hierarchy shared by the simulator and its command-line front end."""


class WealthSimError(Exception):
    pass


class InvalidPopulationError(WealthSimError, ValueError):
    pass


class DomainError(WealthSimError, ValueError):
    pass


class ConfigError(WealthSimError, ValueError):
    """Invalid scenario or sweep configuration.

    ``key`` is the dotted path of the offending entry when one applies.
    """

    category = "config"

    def __init__(self, message: str, key: str | None = None):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)


class ScenarioSyntaxError(ConfigError):
    category = "syntax"

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownKeyError(ConfigError):
    category = "unknown-key"


class MissingKeyError(ConfigError):
    category = "missing-key"


class OutOfRangeError(ConfigError):
    category = "out-of-range"


class SweepCapError(ConfigError):
    category = "sweep-cap"
