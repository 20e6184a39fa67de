"""Exception hierarchy shared across the package.

Every error raised by semrank derives from :class:`SemrankError` so callers
(CLI, HTTP service) can map failures to exit codes or error envelopes in one
place.  Each class carries a stable ``code`` string used by the JSON API.
"""


class SemrankError(Exception):
    code = "internal_error"


class MalformedLine(SemrankError):
    """A WordNet database line violates the WNDB grammar."""

    code = "malformed_line"

    def __init__(self, file: str, line_no: int, reason: str = ""):
        self.file = file
        self.line_no = line_no
        self.reason = reason
        msg = f"{file}:{line_no}: malformed line"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class DanglingPointer(SemrankError):
    """A synset pointer targets a (offset, pos) absent from the parsed db."""

    code = "dangling_pointer"

    def __init__(self, offset: int, pos: str):
        self.offset = offset
        self.pos = pos
        super().__init__(f"pointer target ({pos}, {offset:08d}) does not exist")


class EmptyQuery(SemrankError):
    """Normalization removed every query term."""

    code = "empty_query"


class EmptyDocument(SemrankError):
    """No token survived normalization."""

    code = "empty_document"


class UndecodableEncoding(SemrankError):
    """No charset candidate produced text.

    Latin-1 decoding cannot fail on non-empty input, so this error exists for
    API completeness; the shipped pipeline degrades to an empty page instead.
    """

    code = "undecodable_encoding"


class ProviderUnavailable(SemrankError):
    """A search engine could not be reached or answered non-2xx."""

    code = "provider_unavailable"

    def __init__(self, engine: str, cause: str):
        self.engine = engine
        self.cause = cause
        super().__init__(f"provider {engine} unavailable: {cause}")


class ParseFailure(SemrankError):
    """Zero results could be extracted from a SERP page."""

    code = "parse_failure"

    def __init__(self, engine: str, reason: str = ""):
        self.engine = engine
        msg = f"could not extract any result from {engine} page"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class ManifestError(SemrankError):
    """Offline corpus manifest is missing or invalid."""

    code = "manifest_error"


class DimensionMismatch(SemrankError):
    """Query and document vectors differ in dimension."""

    code = "dimension_mismatch"


class EmptyResultSet(SemrankError):
    """An operation that needs at least one document received none."""

    code = "empty_result_set"


class SetMismatch(SemrankError):
    """Two orderings of supposedly the same items differ as sets."""

    code = "set_mismatch"


class AllProvidersFailed(SemrankError):
    """No configured engine returned a single result."""

    code = "all_providers_failed"


class NotFound(SemrankError):
    """No stored session under the given id."""

    code = "not_found"


class UnknownEngine(SemrankError):
    """The requested engine is not part of the session."""

    code = "unknown_engine"


class StoreCorrupt(SemrankError):
    """A persisted session file could not be decoded."""

    code = "store_corrupt"

    def __init__(self, path: str):
        self.path = path
        super().__init__(f"session store file corrupt: {path}")


class ConfigError(SemrankError):
    """Invalid configuration value."""

    code = "config_error"
