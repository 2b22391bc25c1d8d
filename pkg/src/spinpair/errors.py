"""Exception types raised by the spinpair library."""


class SpinPairError(Exception):
    """Base class for all spinpair errors."""


class MidShellError(SpinPairError):
    """Requested electron count would partially occupy a degenerate shell."""

    def __init__(self, requested, nearest_below, nearest_above):
        self.requested = requested
        self.nearest_below = nearest_below
        self.nearest_above = nearest_above
        super().__init__(
            f"electron count {requested} splits a degenerate shell; "
            f"nearest valid counts are {nearest_below} and {nearest_above}"
        )


class TooFewElectrons(SpinPairError):
    """A two-particle reduced state needs at least two electrons."""


class SiteOutOfRange(SpinPairError):
    """Lattice site index outside 0 <= r < M."""


class VanishingTrace(SpinPairError):
    """No two-particle spin weight at this site configuration (raw trace ~ 0)."""


class DensityMatrixDefect(SpinPairError):
    """Base for density-matrix validation failures; carries the measured defect."""

    def __init__(self, message, defect):
        self.defect = defect
        super().__init__(f"{message} (defect {defect:.3e})")


class NotHermitian(DensityMatrixDefect):
    def __init__(self, defect):
        super().__init__("density matrix is not Hermitian", defect)


class TraceNotOne(DensityMatrixDefect):
    def __init__(self, defect):
        super().__init__("density matrix trace differs from one", defect)


class NotPSD(DensityMatrixDefect):
    def __init__(self, defect):
        super().__init__("density matrix has a negative eigenvalue", defect)


class IntractableSize(SpinPairError):
    """Brute-force reference computation refused: configuration space too large."""
