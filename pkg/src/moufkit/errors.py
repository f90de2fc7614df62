"""Exception types shared across the package."""


class LoopError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidTable(LoopError):
    """Raw table is not square, has out-of-range entries, or misplaces the identity."""


class NotLatinSquare(LoopError):
    """Some row or column of the table repeats an entry."""

    def __init__(self, axis: str, index: int, value: int):
        self.axis = axis
        self.index = index
        self.value = value
        super().__init__(f"{axis} {index} repeats entry {value}")


class NoTwoSidedIdentity(LoopError):
    """No element acts as an identity on both sides."""


class LoopFileError(LoopError):
    """A .loop file violates the textual format."""


class NotPowerAssociative(LoopError):
    """Bracketed powers of an element disagree, so powers are undefined."""

    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} does not generate an associative subloop")


class NotDiassociative(LoopError):
    """Two elements generate a nonassociative subloop."""


class NotMoufang(LoopError):
    """The loop fails the Moufang identities."""


class NotASubloop(LoopError):
    """An element set is not closed under multiplication and divisions."""


class NotNormal(LoopError):
    """A subloop is not invariant under the inner mappings."""


class NotPartition(LoopError):
    """Left cosets of a (non-normal) subloop overlap without coinciding."""


class OrderCapExceeded(LoopError):
    """The loop order exceeds the configured cap for this operation."""


class CapExceeded(LoopError):
    """A closure enumeration grew past its configured cap."""

    def __init__(self, size_so_far: int):
        self.size_so_far = size_so_far
        super().__init__(f"closure exceeded cap at {size_so_far} elements")


class NotPseudoautomorphism(LoopError):
    """The (companion, map) pair fails its defining identity."""


class NotAutotopism(LoopError):
    """The map triple fails the autotopism identity."""


class InvalidExtensionData(LoopError):
    """Extension data violates its structural invariants."""


class NotALoop(LoopError):
    """A constructed table unexpectedly failed loop validation."""


class KernelNotCommutativeGroup(LoopError):
    """The designated kernel subloop is not a commutative group."""


class KernelNot2Divisible(LoopError):
    """The kernel has an element without a square root."""


class Not3Divisible(LoopError):
    """The loop has an element without a cube root."""


class NoCubeRoot(LoopError):
    """No element cubes to the requested value."""

    def __init__(self, value: int):
        self.value = value
        super().__init__(f"element {value} has no cube root")


class RestrictionNotAutomorphism(LoopError):
    """A restricted mapping is not an automorphism of the kernel."""


class SpecInvalid(LoopError):
    """A construction specification violates its invariants."""


class NotBilinear(LoopError):
    """The pairing associated with a quadratic form is not bilinear."""


class UnknownFixture(LoopError):
    """Unrecognized fixture name."""
