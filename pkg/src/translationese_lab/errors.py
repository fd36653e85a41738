"""Typed domain errors.

Every error the toolkit raises on bad input derives from LabError, so the
CLI can map any domain failure to exit status 1 with a typed message.
"""


class LabError(Exception):
    """Base class for all toolkit domain errors."""

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{type(self).__name__}: {msg}" if msg else type(self).__name__


# -- text normalization -------------------------------------------------

class EmptySentence(LabError):
    pass


# -- corpus ingestion ----------------------------------------------------

class MalformedCorpus(LabError):
    def __init__(self, path, line_no, reason):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = str(path)
        self.line_no = line_no
        self.reason = reason


class DuplicateId(LabError):
    def __init__(self, path, line_no, sent_id):
        super().__init__(f"{path}:{line_no}: duplicate sentence id {sent_id!r}")
        self.sent_id = sent_id


class IdMismatch(LabError):
    def __init__(self, missing, extra):
        self.missing = sorted(missing)
        self.extra = sorted(extra)
        super().__init__(f"missing={self.missing} extra={self.extra}")


# -- POS tagging ---------------------------------------------------------

class InvalidTag(LabError):
    def __init__(self, tag, location=""):
        where = f" at {location}" if location else ""
        super().__init__(f"unknown tag {tag!r}{where}")
        self.tag = tag
        self.location = location


class EmptyTrainingSet(LabError):
    pass


class PretaggedFormatError(LabError):
    def __init__(self, path, line_no, reason):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.line_no = line_no


# -- PENMAN / AMR ---------------------------------------------------------

class PenmanError(LabError):
    """Base for all PENMAN parse and validation failures."""


class EmptyInput(PenmanError):
    pass


class UnbalancedParens(PenmanError):
    def __init__(self, position):
        super().__init__(f"at offset {position}")
        self.position = position


class DuplicateVariable(PenmanError):
    def __init__(self, var):
        super().__init__(var)
        self.var = var


class UndefinedVariable(PenmanError):
    def __init__(self, var):
        super().__init__(var)
        self.var = var


class MalformedPenman(PenmanError):
    """Syntax error other than balance/definition problems."""


class InvalidGraph(PenmanError):
    pass


# -- metrics ---------------------------------------------------------------

class EmptyCorpus(LabError):
    pass


class UntaggedToken(LabError):
    def __init__(self, sent_id, index):
        super().__init__(f"sentence {sent_id!r}, token {index}")
        self.sent_id = sent_id
        self.index = index


class BadLexicon(LabError):
    pass


# -- pipeline ---------------------------------------------------------------

class BackendUnavailable(LabError):
    pass


class BatchTimeout(LabError):
    def __init__(self, ids):
        self.ids = list(ids)
        super().__init__(f"no response for {self.ids}")


class ProtocolViolation(LabError):
    pass


class InvalidIntermediate(LabError):
    def __init__(self, sent_id, reason):
        super().__init__(f"sentence {sent_id!r}: {reason}")
        self.sent_id = sent_id


class BadBackendSpec(LabError):
    pass


# -- evaluation harness -----------------------------------------------------

class MissingSystemOutput(LabError):
    def __init__(self, item_id, system_id):
        super().__init__(f"item {item_id!r} has no output for system {system_id!r}")
        self.item_id = item_id
        self.system_id = system_id


class DuplicateJudgment(LabError):
    def __init__(self, key):
        super().__init__(repr(key))
        self.key = key


class ScoreOutOfRange(LabError):
    def __init__(self, score):
        super().__init__(f"score {score!r} not in 1..4")
        self.score = score


class UnpairedJudgments(LabError):
    def __init__(self, count):
        super().__init__(f"{count} judgment group(s) without exactly two annotators")
        self.count = count


class BadJudgmentFile(LabError):
    pass


# -- reporting ----------------------------------------------------------------

class ProvenanceMismatch(LabError):
    def __init__(self, field, left, right):
        super().__init__(f"{field}: {left!r} != {right!r}")
        self.field = field
