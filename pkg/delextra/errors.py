class DelextraError(Exception):
    """Base class of every error raised on purpose by delextra"""


class ConllFormatError(DelextraError, ValueError):

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f'line {line_number}: {message}'
        super().__init__(message)


class TreeStructureError(DelextraError, ValueError):

    def __init__(self, message, sentence_number=None):
        self.sentence_number = sentence_number
        if sentence_number is not None:
            message = f'sentence {sentence_number}: {message}'
        super().__init__(message)


class ModelFormatError(DelextraError, ValueError):
    pass


class ModelMismatchError(DelextraError, ValueError):
    """Models trained with different feature template inventories were
    mixed together"""


class ShapeMismatchError(DelextraError, ValueError):
    pass


class StyleSetupError(DelextraError, ValueError):
    pass


class ReportFormatError(DelextraError, ValueError):
    pass


class ConfigError(DelextraError, ValueError):

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f'line {line_number}: {message}'
        super().__init__(message)


class ExperimentError(DelextraError):

    def __init__(self, stage, cause):
        self.stage = stage
        super().__init__(f'{stage} failed: {cause}')
