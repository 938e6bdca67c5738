"""Exception hierarchy.

Every error raised by the library derives from :class:`MultifuseError`, which is
itself a :class:`ValueError`, so callers can catch either.
"""


class MultifuseError(ValueError):
    pass


# model
class AsymmetryError(MultifuseError):
    pass


class NegativeEntryError(MultifuseError):
    pass


class NonFiniteError(MultifuseError):
    pass


class DuplicateIdError(MultifuseError):
    pass


class AlignmentError(MultifuseError):
    pass


# ingest
class ParseError(MultifuseError):
    def __init__(self, message, path=None, line_no=None, text=None):
        self.path = path
        self.line_no = line_no
        self.text = text
        where = ""
        if path is not None:
            where = f"{path}"
            if line_no is not None:
                where += f":{line_no}"
            where += ": "
        suffix = f" [{text!r}]" if text is not None else ""
        super().__init__(f"{where}{message}{suffix}")


class EmptyArticleError(MultifuseError):
    def __init__(self, article_ids, message=None):
        self.article_ids = list(article_ids)
        shown = ", ".join(self.article_ids[:20])
        more = "" if len(self.article_ids) <= 20 else f" (+{len(self.article_ids) - 20} more)"
        super().__init__(message or f"articles without entries: {shown}{more}")


class NegativeCountError(MultifuseError):
    pass


class AllTermsRemovedError(MultifuseError):
    pass


class ZeroRowError(EmptyArticleError):
    """A row with no positive mass where a distribution is required."""


# topics
class EmptyCorpusError(MultifuseError):
    pass


class ConfigError(MultifuseError):
    pass


# fusion
class DegenerateNeighborhoodError(MultifuseError):
    pass


class ZeroMassError(MultifuseError):
    pass


class DomainError(MultifuseError):
    pass


# assoc
class DimensionMismatchError(MultifuseError):
    pass


class InsufficientSampleError(MultifuseError):
    pass


# cluster
class EmptyGraphError(MultifuseError):
    pass


# synth
class SpecError(MultifuseError):
    pass
