"""Exception hierarchy.

Everything raised on purpose by this package derives from LieNilError, so
callers can catch one type at the boundary and still tell failure modes
apart when they need to.
"""


class LieNilError(Exception):
    """Base class for errors raised by this package."""


class InvalidPermutation(LieNilError):
    """Image tuple is not a bijection on 1..n."""


class DegreeMismatch(LieNilError):
    """Generators of one group act on different numbers of points."""


class OrderExceeded(LieNilError):
    """Group closure grew past the configured order cap."""


class ParseError(LieNilError):
    """Catalog text is malformed or describes an invalid group."""


class NotAbelian(LieNilError):
    """Structure decomposition was asked for a nonabelian subgroup."""


class EmptyArguments(LieNilError):
    """A product or bracket over zero operands was requested."""


class BoundExceeded(LieNilError):
    """A descending chain failed to reach zero within its step budget."""


class ScaleExceeded(LieNilError):
    """Exhaustive enumeration was asked for an instance past its size cap."""


class NotLieNilpotent(LieNilError):
    """The group algebra has no finite Lie nilpotency index."""


class NoWitness(LieNilError):
    """No generator pair of the required shape exists in the group."""


class CaseMismatch(LieNilError):
    """A commutator chain was evaluated under the wrong case split."""


class ChainVanished(LieNilError):
    """A commutator chain hit zero before its expected length."""


class StepMismatch(LieNilError):
    """An intermediate chain value differs from its closed form."""
