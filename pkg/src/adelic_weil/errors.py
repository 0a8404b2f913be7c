class WeilError(Exception):
    """Base class for errors raised by this package."""


class RankDeficient(WeilError):
    pass


class IndexOverflow(WeilError):
    pass


class NotSublattice(WeilError):
    pass


class Singular(WeilError):
    pass


class NotSymplectic(WeilError):
    pass


class NotIntegral(WeilError):
    pass


class NotInGamma12(WeilError):
    pass


class DeltaNotEigen(WeilError):
    """We(g) does not map the standard indicator to a multiple of itself."""


class MembershipUndecided(WeilError):
    pass


class NotInSiegelDomain(WeilError):
    pass


class SingularAutomorphyFactor(WeilError):
    pass


class RadiusTooSmall(WeilError):
    pass


class SchemaError(WeilError):
    """Malformed JSON input; ``path`` is a JSON pointer to the bad field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path
