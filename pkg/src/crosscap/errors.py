"""Exception hierarchy. Every error carries a stable kebab-case ``code`` used by the CLI."""


class CrosscapError(Exception):
    code = "crosscap-error"


class InvalidCurveError(CrosscapError, ValueError):
    code = "invalid-curve"


class InvalidTwistError(CrosscapError, ValueError):
    code = "invalid-twist"


class UnsupportedGenusError(CrosscapError, ValueError):
    code = "unsupported-genus"


class UnsupportedBoundaryError(CrosscapError, ValueError):
    code = "unsupported-boundary"


class UnsupportedSpecError(CrosscapError, ValueError):
    code = "unsupported-spec"


class UnknownSymbolError(CrosscapError, KeyError):
    code = "unknown-symbol"

    def __str__(self):
        return Exception.__str__(self)


class NoOccurrenceError(CrosscapError, ValueError):
    code = "no-occurrence"


class UntransportableError(CrosscapError, ValueError):
    code = "untransportable"


class UnsupportedLetterError(CrosscapError, ValueError):
    code = "unsupported-letter"


class NotConjugateError(CrosscapError, ValueError):
    code = "not-conjugate"


class FixtureError(CrosscapError, ValueError):
    code = "fixture-rejected"


class RelationCheckError(CrosscapError, ValueError):
    """A relation instance failed its homology check when it was built."""

    code = "relation-check-failed"
