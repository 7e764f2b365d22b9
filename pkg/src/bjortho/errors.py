"""Exception types shared across the library."""


class BJOrthoError(Exception):
    """Base class for every error raised by this package."""


class FormatError(BJOrthoError):
    """A serialized matrix, algebra, chain, or digraph file is malformed."""


class NonSymmetricInput(BJOrthoError):
    """The symmetric eigensolver received a matrix outside its symmetry tolerance."""


class ZeroMatrix(BJOrthoError):
    """An operation that needs a nonzero element received the zero matrix."""


class AlgebraMismatch(BJOrthoError):
    """Two operands belong to different matrix algebras (K, F, or n differ)."""


class FieldMismatch(BJOrthoError):
    """Base fields of the operands disagree."""


class ZeroDirection(BJOrthoError):
    """Norm minimization along the zero direction is undefined."""


class UnitaryInput(BJOrthoError):
    """A scalar multiple of a unitary has no right-asymmetry witness."""


class DimensionTooSmall(BJOrthoError):
    """The construction needs n >= 2."""


class NotMaximalChain(BJOrthoError):
    """The chain is not maximal (wrong length or broken strictness)."""


class ChainTooShort(BJOrthoError):
    """Successor analysis needs a chain of length >= 2."""


class NotSimple(BJOrthoError):
    """The algebra has more than one block."""


class DimensionOne(BJOrthoError):
    """One-dimensional algebras cannot be classified from orthogonality data."""


class NotSimpleFiniteDimensional(BJOrthoError):
    """The (dimension, chain length) data matches no simple finite-dimensional algebra."""


class FieldNotComplex(BJOrthoError):
    """The operation is defined for complex base field only."""


class BlockMismatch(BJOrthoError):
    """A block-diagonal element does not conform to the algebra's block structure."""
