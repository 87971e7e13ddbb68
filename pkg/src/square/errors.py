"""Exception hierarchy shared by every stage of the pipeline."""


class SquareError(Exception):
    """Base class for all errors raised by this package."""


class EmptySentence(SquareError):
    pass


class UnsupportedSyntax(SquareError):
    def __init__(self, message, token=None):
        super().__init__(message)
        self.token = token


class MalformedTree(SquareError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class FrameFileError(SquareError):
    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class UnknownPrimitive(FrameFileError):
    pass


class NoVerb(SquareError):
    pass


class NoFrameMatch(UserWarning):
    """Issued when a known verb matches none of its frames."""


class InstantiationError(SquareError):
    pass


class EmptyStory(SquareError):
    pass


class EmptyPhrase(SquareError):
    pass


class ClauseSyntaxError(SquareError):
    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class DepthExceeded(SquareError):
    pass


class Floundering(SquareError):
    def __init__(self, goal):
        super().__init__(f"negation or builtin called on non-ground goal: {goal}")
        self.goal = goal


class UnknownRuleSet(SquareError):
    pass


class UnsupportedQuestion(SquareError):
    pass


class NoAnswer(SquareError):
    pass


class FormatError(SquareError):
    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line
