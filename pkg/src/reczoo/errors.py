"""Exception hierarchy shared by every module.

Each error carries the offending value in its message; the CLI prints the
class name followed by the message and exits with status 1.
"""


class RecZooError(Exception):
    """Base class for all library errors."""

    @property
    def name(self):
        return type(self).__name__


# monoid-core
class IndexOutOfRange(RecZooError):
    pass


class NotAssociative(RecZooError):
    def __init__(self, i, j, k):
        super().__init__(f"(x{i}*x{j})*x{k} != x{i}*(x{j}*x{k})")
        self.witness = (i, j, k)


class UnitLawFails(RecZooError):
    def __init__(self, i):
        super().__init__(f"unit law fails at element {i}")
        self.witness = i


class AlreadyHasZero(RecZooError):
    pass


class NotInvertible(RecZooError):
    pass


class NotAGroup(RecZooError):
    pass


class SizeTooLargeForExhaustive(RecZooError):
    pass


class ParseError(RecZooError):
    pass


class NonCanonical(RecZooError):
    pass


# additive-sets / product-rec
class GeneratorNotInvertible(RecZooError):
    pass


class NonCommutativeGenerators(RecZooError):
    pass


class SignatureMismatch(RecZooError):
    pass


class BlowUpLimitExceeded(RecZooError):
    pass


# divisible-registry
class RecNotFinite(RecZooError):
    pass


class SourceHasZero(RecZooError):
    pass


class InadmissibleAtom(RecZooError):
    pass


class UnknownMonoid(RecZooError):
    pass


# sequence-rec
class DomainMismatch(RecZooError):
    pass


class InvalidPartition(RecZooError):
    pass


class NonPositive(RecZooError):
    pass


class ZeroInput(RecZooError):
    pass


class CertificateExhausted(RecZooError):
    pass


class SeedNotInX(RecZooError):
    pass


class NotAMember(RecZooError):
    pass


class UnknownProperty(RecZooError):
    pass
