"""Exception hierarchy shared by all modules."""


class WedgeLabError(Exception):
    """Base class for every error raised by the package."""


class GeometryError(WedgeLabError, ValueError):
    pass


class NotLightlike(GeometryError):
    pass


class PastDirected(GeometryError):
    pass


class ParallelGenerators(GeometryError):
    pass


class NotDisjoint(GeometryError):
    pass


class NotNormalForm(GeometryError):
    pass


class NotBoundary(GeometryError):
    pass


class NotCharacteristicDirection(GeometryError):
    pass


class GroupError(WedgeLabError, ValueError):
    pass


class NotLorentz(GroupError):
    pass


class NotRestricted(GroupError):
    pass


class SingularOneMinusLambda(GroupError):
    pass


class ReconstructionError(WedgeLabError):
    pass


class AmbiguousFamilyDirection(ReconstructionError):
    pass


class DegenerateNormals(ReconstructionError):
    pass


class NotConformal(ReconstructionError):
    pass


class VerificationFailed(ReconstructionError):
    pass


class OracleInconsistent(ReconstructionError):
    pass


class OracleDomainError(ReconstructionError, KeyError):
    """A table oracle was queried on a wedge it does not list."""


class SignUndetermined(ReconstructionError):
    pass


class AlgebraError(WedgeLabError, ValueError):
    pass


class DimensionTooLarge(AlgebraError):
    pass


class NotCyclicSeparating(AlgebraError):
    pass


class RedundantFamily(AlgebraError):
    """Two members of an algebra family span the same subspace."""


class ClosureCapExceeded(WedgeLabError, RuntimeError):
    pass


class SizeTooLarge(WedgeLabError, ValueError):
    pass
