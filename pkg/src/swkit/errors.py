"""Exception types shared across the toolkit."""


class SwkitError(Exception):
    """Base class for all toolkit errors."""


# --- glyph codes ---

class MalformedCode(SwkitError):
    """Text is not a canonical 13-digit dashed glyph code."""


class FieldOutOfRange(SwkitError):
    """Code parsed but a field violates its numeric range."""


# --- catalog loading / search ---

class CatalogError(SwkitError):
    pass


class DuplicateId(CatalogError):
    pass


class DanglingAsset(CatalogError):
    pass


class CountMismatch(CatalogError):
    pass


class InvalidEntry(CatalogError):
    pass


class UnknownScope(CatalogError):
    pass


class UnknownRegion(CatalogError):
    pass


class UnknownAttribute(CatalogError):
    pass


class UnknownOption(CatalogError):
    pass


class UnknownGlyph(CatalogError):
    """Glyph id not present in the catalog."""


# --- SWML documents ---

class SwmlError(SwkitError):
    pass


class MalformedDocument(SwmlError):
    """Input is not well-formed XML."""


class SchemaViolation(SwmlError):
    """Well-formed XML that does not match the SWML schema."""


class BadCode(SwmlError):
    """A glyph code attribute failed to parse."""


class BadCoordinate(SwmlError):
    """A placement coordinate is non-integer or out of sign-space bounds."""


class InvariantViolation(SwmlError):
    """Document/sign violates a structural invariant (e.g. duplicate ids)."""


# --- corpus / prediction ---

class CorpusError(SwkitError):
    pass


class EmptySign(CorpusError):
    pass


class IoFailure(CorpusError):
    pass


class VersionMismatch(CorpusError):
    pass


class CorruptModel(CorpusError):
    pass


class EmptyModel(SwkitError):
    """Prediction requested against a model with zero signs."""


# --- OGR ---

class OgrError(SwkitError):
    pass


class DegenerateImage(OgrError):
    """Uniform-intensity image with no threshold override."""


class NoCandidates(OgrError):
    """Feature gating pruned every category for a candidate."""


class BadEditTarget(OgrError):
    """Review edit references a nonexistent glyph/blob/sign."""


class InvalidCode(OgrError):
    """Review edit carries a code unknown to the catalog."""


# --- service ---

class IllegalTransition(SwkitError):
    """Job state machine rejected a transition."""
