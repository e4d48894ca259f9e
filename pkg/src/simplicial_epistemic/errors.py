"""Exception hierarchy shared by every module of the package."""


class SimplicialError(Exception):
    """Base class for all errors raised by this package."""


# complexes
class DuplicateVertexId(SimplicialError):
    pass


class IllColoredFacet(SimplicialError):
    pass


class ImpureComplex(SimplicialError):
    pass


class DanglingVertexRef(SimplicialError):
    pass


class UnknownFacet(SimplicialError):
    pass


class EmptyGroup(SimplicialError):
    pass


class UnknownAgent(SimplicialError):
    pass


# frames
class NotEquivalence(SimplicialError):
    pass


class ImproperFrame(SimplicialError):
    pass


# logic
class FormulaSyntaxError(SimplicialError, SyntaxError):
    """Malformed formula text. ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EmptyModel(SimplicialError):
    pass


# communication
class UnknownKind(SimplicialError):
    pass


class TooFewAgents(SimplicialError):
    pass


class AgentSetMismatch(SimplicialError):
    pass


# tasks and algorithms
class UnsupportedAgentCount(SimplicialError):
    pass


class MissingCarrier(SimplicialError):
    pass


class PartialMap(SimplicialError):
    pass


class NotOneRoundUB(SimplicialError):
    pass


class ShapeMismatch(SimplicialError):
    pass
