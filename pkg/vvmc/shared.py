import math

#Feature kinds
#In a clausal model every feature is a disjunction of its literals; in a conjunctive model every feature is a conjunction.
#A model never mixes the two.
MODE_CLAUSAL     = 0
MODE_CONJUNCTIVE = 1

#Names of the feature kinds as they appear in the text model format (indexed by mode)
MODE_NAMES = (
    "clausal",
    "conjunctive"
)

try:
    INF = math.inf
except AttributeError:
    INF = float( "inf" )

#Weight sentinel for hard constraints.
#Exact oracles treat HARD as truly infinite; samplers substitute a finite weight (see vvmc.config).
HARD = INF

#Token used for HARD in the text model format
HARD_TOKEN = "HARD"

#Weights are compared after rounding to this many decimal places
WEIGHT_DIGITS = 9

#Defaults for vvmc.config
DEFAULT_HARD_WEIGHT   = 30.0
DEFAULT_STATE_CAP     = 1 << 20
DEFAULT_ORBIT_CAP     = 100000
DEFAULT_SEARCH_BUDGET = 1000000
DEFAULT_RENAMING_CAP  = 100000

#Largest state space explicit_kernel will build a dense matrix for
KERNEL_STATE_CAP = 4096

#Most states a sampler keeps cached orbits for
ORBIT_CACHE_STATES = 1 << 18

#Additive smoothing applied to estimated marginals before taking a KL divergence
KL_EPSILON = 1e-6

#Product replacement defaults
PRA_MIN_SLOTS = 10
PRA_BURN_IN   = 60

#Exit codes used by the command line interface
EXIT_OK         = 0
EXIT_FAILURE    = 1
EXIT_VALIDATION = 2
EXIT_RESOURCE   = 3

class VVMCError( Exception ):
    """Base class of every error raised by vvmc."""
    exitCode = EXIT_FAILURE

class ConfigError( VVMCError ):
    """
    ConfigError( message )

    This exception is raised when a configuration value, chain configuration or experiment specification is invalid.
    """
    exitCode = EXIT_VALIDATION
    def __str__( self ):
        return str( self.args[0] )

class ModelFormatError( VVMCError ):
    """
    ModelFormatError( lineno, message )

    This exception is raised when reading or writing a model that violates the text model format.
    lineno is the 1-based line the problem was found on, or None if the problem isn't tied to a line (e.g. when writing).
    """
    exitCode = EXIT_VALIDATION
    def __str__( self ):
        if len( self.args ) < 2:
            return str( self.args[0] )
        if self.args[0] is None:
            return str( self.args[1] )
        return "Line {:d}: {}".format( *self.args )

class SizeMismatch( VVMCError ):
    """
    SizeMismatch( expected, given )

    This exception is raised when two permutations (or a permutation and a ground set) of different sizes are combined.
    """
    exitCode = EXIT_VALIDATION
    def __str__( self ):
        return "Expected a permutation over {:d} points, but received one over {:d} points.".format( *self.args )

class NonBooleanVariable( VVMCError ):
    """
    NonBooleanVariable( name, cardinality )

    This exception is raised when an operation that only supports Boolean variables is given a multi-valued one.
    """
    exitCode = EXIT_VALIDATION
    def __str__( self ):
        return "Variable \"{}\" has {:d} values; only Boolean variables are supported here.".format( *self.args )

class InvalidPermutation( VVMCError ):
    """
    InvalidPermutation( message )

    This exception is raised when a mapping is not a bijection, or a VV permutation does not map each variable onto a single variable.
    """
    exitCode = EXIT_VALIDATION
    def __str__( self ):
        return str( self.args[0] )

class InvalidLift( VVMCError ):
    """
    InvalidLift( node, image )

    This exception is raised when a graph automorphism maps a variable-value node onto a node of another kind,
    or its restriction to variable-value nodes is not a valid VV permutation.
    Either way this indicates a bug in the automorphism search.
    """
    def __str__( self ):
        return "Automorphism maps variable-value node {} to {}; it cannot be lifted.".format( *self.args )

class DomainMismatch( VVMCError ):
    """
    DomainMismatch( name, cardinality, imageName, imageCardinality )

    This exception is raised when a variable permutation maps a variable onto one with a different number of values.
    """
    exitCode = EXIT_VALIDATION
    def __str__( self ):
        return "Cannot map \"{}\" ({:d} values) onto \"{}\" ({:d} values).".format( *self.args )

class RatioNotConstant( VVMCError ):
    """
    RatioNotConstant( first, other )

    This exception is raised when the probability ratio between a reduced model and its original differs across representative states.
    """
    def __str__( self ):
        return "Reduced/original probability ratio is not constant ({!r} vs {!r}).".format( *self.args )

class UnsatisfiableModel( VVMCError ):
    """This exception is raised when every state of a model violates one of its hard features."""
    exitCode = EXIT_VALIDATION

class EmptyGroupError( VVMCError ):
    """
    EmptyGroupError( message )

    This exception is raised when a group is requested over an empty ground set.
    """
    exitCode = EXIT_VALIDATION

class ResourceCapError( VVMCError ):
    """
    ResourceCapError( size, cap )

    Base class for errors raised when a computation would exceed a configured cap.
    """
    exitCode = EXIT_RESOURCE
    what = "Computation"
    def __str__( self ):
        return "{} exceeds the configured cap ({} > {}).".format( self.what, *self.args )

class StateSpaceTooLarge( ResourceCapError ):
    """StateSpaceTooLarge( size, cap )"""
    what = "State space"

class OrbitCapExceeded( ResourceCapError ):
    """OrbitCapExceeded( size, cap )"""
    what = "Orbit"

class SearchBudgetExceeded( ResourceCapError ):
    """SearchBudgetExceeded( nodes, budget )"""
    what = "Automorphism search"

class RenamingSpaceTooLarge( ResourceCapError ):
    """RenamingSpaceTooLarge( size, cap )"""
    what = "Renaming space"

def roundWeight( weight ):
    """
    Returns weight rounded to WEIGHT_DIGITS decimal places.
    Two weights are considered equal (and share a graph color) if their rounded values are equal.
    -0.0 is normalized to 0.0 and HARD is returned unchanged.
    """
    if weight == HARD:
        return HARD
    return round( weight, WEIGHT_DIGITS ) + 0.0

def describeWeight( weight ):
    """Return weight as it is written in the text model format."""
    if weight == HARD:
        return HARD_TOKEN
    return repr( float( weight ) )

def exitCode( error ):
    """Returns the process exit code for the given exception."""
    return getattr( error, "exitCode", EXIT_FAILURE )
