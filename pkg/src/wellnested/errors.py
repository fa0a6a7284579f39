"""Exception hierarchy shared by every module of the package."""


class WellNestedError(Exception):
    """Base class for all errors raised by :mod:`wellnested`."""


class UnknownSymbolError(WellNestedError, ValueError):
    def __init__(self, symbol, where=None):
        self.symbol = symbol
        msg = f"symbol {symbol!r} is not classified by the alphabet"
        if where is not None:
            msg += f" (position {where})"
        super().__init__(msg)


class NotWellNestedError(WellNestedError, ValueError):
    pass


class IncompleteAutomatonError(WellNestedError, LookupError):
    """A deterministic run needed a transition the automaton does not define."""

    def __init__(self, state, symbol, position, stack_symbol=None):
        self.state = state
        self.symbol = symbol
        self.position = position
        self.stack_symbol = stack_symbol
        detail = f"state {state!r}, symbol {symbol!r}"
        if stack_symbol is not None:
            detail += f", stack symbol {stack_symbol!r}"
        super().__init__(f"no transition at position {position}: {detail}")


class ContractError(WellNestedError, ValueError):
    """An operation was applied to an automaton of the wrong kind."""


class DomainError(WellNestedError, ValueError):
    """Arguments range over incompatible state sets or alphabets."""


class ParseError(WellNestedError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
