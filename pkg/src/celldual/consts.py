"""Constants shared across the library and the command line."""

EMPTY = "@empty"  # the empty cell, dimension -1
GLOBAL = "@global"  # cell key of scalar cohomology tables
TOP = "@top"  # adjoined maximum of a hat poset

MAX_PRIME = 2**31


class Route:
    """Enumeration for the two ways of computing (u)Ext."""

    INJECTIVE = "injective"
    PROJECTIVE = "projective"


class RegionKind:
    """Enumeration for the closure type of a region of a cell complex."""

    CLOSED = "closed"  # downward closed, a subcomplex
    OPEN = "open"  # upward closed, an order filter


class Flavor:
    """Enumeration for the cohomology flavors offered by the `cohomology` command."""

    LOCAL = "local"
    SHEAF = "sheaf"
    COMPACT = "compact"
    OPEN = "open"


class OutputFormat:
    """Enumeration for CLI output formats."""

    JSON = "json"
    TSV = "tsv"


class ExitCode:
    """Enumeration for CLI exit codes."""

    OK = 0
    USAGE = 1
    INVALID_INPUT = 2
    INVARIANT_FAILURE = 3
