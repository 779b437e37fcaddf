"""
Error hierarchy shared by the algebra, topology and CLI layers.

Every error carries the process exit code the CLI reports for it.
"""


class ChernDualError(Exception):
    """Base class for all domain errors"""

    exit_code = 2


# series-core

class IncompatibleSeries(ChernDualError):
    """Series with different variable tables or truncation orders were combined"""


class NonNilpotentArgument(ChernDualError):
    """exp/log1p called on a series with a nonzero constant term"""


class UnknownVariable(ChernDualError):
    """Variable name not present in the series' variable table"""


# cohomology

class BadForm(ChernDualError):
    """Intersection matrix is not square, symmetric and integral"""


class NotUnimodular(ChernDualError):
    """Intersection matrix has determinant other than +1 or -1"""


class InconsistentTopology(ChernDualError):
    """Euler characteristic or signature disagree with the intersection form"""


class UnknownBasis(ChernDualError):
    """Basis index or vector length does not fit the manifold"""


# index theory

class NonIntegralIndex(ChernDualError):
    """Dirac index formula gave a non-integer"""


class PositiveIndex(ChernDualError):
    """The degeneracy locus needs a non-positive Dirac index"""

    exit_code = 3


class DegreeMismatch(ChernDualError):
    """An input class is not homogeneous of the required degree"""


class BasisMismatch(ChernDualError):
    """A character cannot be written in the mu(t), Omega, wp basis"""


# chern engine

class IncompleteInput(ChernDualError):
    """Power sums missing for some degree the Newton recursion needs"""


# cli

class ManifestError(ChernDualError):
    """Malformed manifest file or command-line parameter"""
