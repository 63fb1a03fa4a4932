"""Exception hierarchy. Everything raised on bad input derives from JointSegError."""


class JointSegError(Exception):
    pass


class InvalidInputError(JointSegError, ValueError):
    pass


class CorpusDecodeError(JointSegError):
    def __init__(self, path, lineno, reason):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: invalid UTF-8 ({reason})")


class EmptyLexiconError(JointSegError):
    pass


class TemplateParseError(JointSegError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"template line {lineno}: {message}")


class ConfigurationError(JointSegError):
    pass


class NumericalError(JointSegError, ArithmeticError):
    pass


class ModelFormatError(JointSegError):
    pass


class GridFormatError(JointSegError):
    def __init__(self, path, lineno, message):
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {message}")


class AlignmentError(JointSegError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")
