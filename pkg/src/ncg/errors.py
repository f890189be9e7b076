"""Exception hierarchy shared by every module of the package."""


class NCGError(Exception):
    """Base class for all errors raised by ncg."""


class GroupConstructionError(NCGError, ValueError):
    pass


class NotLatinSquare(GroupConstructionError):
    pass


class NoIdentityAtZero(GroupConstructionError):
    def __init__(self, identity):
        self.identity = identity
        super().__init__(f"identity element is at index {identity}, expected 0")


class NotAssociative(GroupConstructionError):
    def __init__(self, triple):
        self.triple = tuple(int(t) for t in triple)
        a, b, c = self.triple
        super().__init__(f"(a*b)*c != a*(b*c) for a={a}, b={b}, c={c}")


class NoInverse(GroupConstructionError):
    pass


class NotAPermutation(GroupConstructionError):
    pass


class NotPrime(GroupConstructionError):
    pass


class BadParameter(GroupConstructionError):
    pass


class OrderLimitExceeded(NCGError):
    def __init__(self, limit, what="group"):
        self.limit = limit
        super().__init__(f"{what} exceeds the configured limit of {limit} elements")


class SizeLimitExceeded(NCGError):
    def __init__(self, size, limit, what="graph"):
        self.size = size
        self.limit = limit
        super().__init__(f"{what} has {size} vertices, above the cap of {limit}")


class NotNormal(NCGError, ValueError):
    pass


class AbelianGroup(NCGError, ValueError):
    pass


class NotPGroup(NCGError, ValueError):
    pass


class KernelFoundNoComplement(NCGError):
    """A Frobenius kernel was found but no complement: always a bug."""


class InvalidIso(NCGError, ValueError):
    pass


class NotACGroup(NCGError, ValueError):
    pass


class NotSolvable(NCGError, ValueError):
    pass


class Unclassifiable(NCGError):
    pass


class OmegaMismatch(NCGError):
    def __init__(self, tag, predicted, observed):
        self.tag, self.predicted, self.observed = tag, predicted, observed
        super().__init__(f"{tag}: predicted clique number {predicted}, observed {observed}")


class ParseError(NCGError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class ValidationError(NCGError, ValueError):
    def __init__(self, name, reason):
        self.name = name
        self.reason = reason
        super().__init__(f"record {name!r}: {reason}")
