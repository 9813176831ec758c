"""Exception hierarchy shared by all shiftcalc modules."""


class ShiftcalcError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(ShiftcalcError):
    """Operands have incompatible or malformed dimensions."""


class DomainError(ShiftcalcError):
    """A value violates a domain restriction (negativity, essentiality, ...)."""


class CompositionError(ShiftcalcError):
    """Two objects were chained whose endpoints do not match."""


class ContractError(ShiftcalcError):
    """An operation received input that fails its verification precondition."""


class ParseError(ShiftcalcError):
    """A file or JSON document does not conform to its schema."""
