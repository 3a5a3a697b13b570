from enum import Enum, IntEnum, IntFlag, auto


class Claims(IntFlag):
    """A combinable enumerator of the varieties an algebra claims to belong to.

    Attributes:
        LIE_SUPER (int): The algebra is a Lie superalgebra.
        JORDAN_SUPER (int): The algebra is a Jordan superalgebra.
        FLEXIBLE (int): The algebra satisfies the flexibility identity.
        NC_JORDAN (int): The algebra is a noncommutative Jordan algebra.
    """

    LIE_SUPER = auto()
    JORDAN_SUPER = auto()
    FLEXIBLE = auto()
    NC_JORDAN = auto()


CLAIM_KEYS = {
    Claims.LIE_SUPER: "claims_lie_super",
    Claims.JORDAN_SUPER: "claims_jordan_super",
    Claims.FLEXIBLE: "claims_flexible",
    Claims.NC_JORDAN: "claims_nc_jordan",
}


class Parity(Enum):
    """Parity requested for a linear map."""

    EVEN = "even"
    ODD = "odd"
    ANY = "any"

    @property
    def degree(self) -> int:
        """
        Returns:
            int: 0 for even maps, 1 for odd maps.
        """
        return 1 if self is Parity.ODD else 0


class Mode(Enum):
    """Whether the Koszul sign enters the defining equation of a map."""

    PLAIN = "plain"
    SUPER = "super"


class Identity(Enum):
    """Polynomial identities that can be checked on an ordinary algebra."""

    ANTICOMMUTATIVITY = "anticommutativity"
    JACOBI = "jacobi"
    COMMUTATIVITY = "commutativity"
    JORDAN = "jordan"
    FLEXIBILITY = "flexibility"
    NC_JORDAN = "nc_jordan"


class Variety(Enum):
    """Varieties of superalgebras checked through the Grassmann envelope."""

    LIE_SUPER = "lie_super"
    JORDAN_SUPER = "jordan_super"
    FLEXIBLE_SUPER = "flexible_super"
    NC_JORDAN_SUPER = "nc_jordan_super"


class Verdict(Enum):
    """Classification of one direction of a map space."""

    ZERO = "zero"
    IS_DERIVATION = "is_derivation"
    IS_ZERO_DERIVATION = "is_zero_derivation"
    IN_CENTROID = "in_centroid"
    IN_SUPERCENTROID = "in_supercentroid"
    NONTRIVIAL = "NONTRIVIAL"


class Tier(IntEnum):
    """Suite tiers, each one containing the previous."""

    FAST = 1
    FULL = 2
    EXTENDED = 3
