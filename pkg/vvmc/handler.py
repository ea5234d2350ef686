from vvmc.shared import ModelFormatError, MODE_CLAUSAL, MODE_NAMES
from vvmc.parse  import _StopParsingModel
from vvmc.model  import Variable, Feature, Literal, GraphicalModel

class ModelHandler:
    """
    Base model event handler.
    As a model file is parsed, methods of the given handler are called.
    This class provides default method implementations and documentation for handlers that inherit from it.
    """
    def start( self ):
        """Called before the first line is parsed."""
        pass
    def end( self ):
        """
        Called after the last line has been parsed.
        This should be the last method to be called on a handler if the entire file was successfully parsed.
        """
        pass
    def mode( self, kind, lineno ):
        """
        Called when a mode statement is parsed.
        kind is MODE_CLAUSAL or MODE_CONJUNCTIVE.
        """
        pass
    def var( self, name, cardinality, lineno ):
        """
        Called when a var statement is parsed.
        cardinality is an int; it has not been range checked.
        """
        pass
    def feature( self, weight, literals, lineno ):
        """
        Called when a feature statement is parsed.
        weight is a finite float or HARD.
        literals is a non-empty list of ( name, value, positive ) tuples; names have not been resolved and values have not been range checked.
        """
        pass
    def stop( self ):
        """Can be called by the handler during any of the methods above to stop parsing."""
        raise _StopParsingModel()

class ModelBuilder( ModelHandler ):
    """
    Builds a GraphicalModel from parse events.
    After parsing, the model is available as .model.

    Raises line-numbered ModelFormatErrors for undeclared or redeclared variables, out-of-range values,
    and mode statements that come too late.
    """
    def __init__( self ):
        self.model = None
    def start( self ):
        self.model     = None
        self._kind     = MODE_CLAUSAL
        self._modeLine = None
        self._vars     = []
        self._ids      = {}
        self._features = []
    def mode( self, kind, lineno ):
        if self._modeLine is not None:
            raise ModelFormatError( lineno, "Mode was already set on line {:d}.".format( self._modeLine ) )
        if self._features:
            raise ModelFormatError( lineno, "The mode must be set before the first feature." )
        self._kind     = kind
        self._modeLine = lineno
    def var( self, name, cardinality, lineno ):
        if name in self._ids:
            raise ModelFormatError( lineno, "Variable \"{}\" is already declared.".format( name ) )
        try:
            v = Variable( len( self._vars ), name, cardinality )
        except ModelFormatError as e:
            raise ModelFormatError( lineno, e.args[1] )
        self._ids[name] = v.id
        self._vars.append( v )
    def feature( self, weight, literals, lineno ):
        resolved = []
        for name, value, positive in literals:
            if name not in self._ids:
                raise ModelFormatError( lineno, "Undeclared variable \"{}\".".format( name ) )
            v = self._vars[self._ids[name]]
            if value < 0 or value >= v.cardinality:
                raise ModelFormatError( lineno, "Value {:d} is out of range for \"{}\" ({:d} values).".format( value, name, v.cardinality ) )
            resolved.append( Literal( v.id, value, positive ) )
        self._features.append( Feature( resolved, weight, self._kind ) )
    def end( self ):
        self.model = GraphicalModel( self._vars, self._features, self._kind )

class PrintModelHandler( ModelHandler ):
    """
    A handler that echoes every statement as it is parsed, prefixed by its line number.
    fn is the callable used to print a line of text, and defaults to the built-in print function.
    """
    def __init__( self, fn=print ):
        self._fn = fn
    def mode( self, kind, lineno ):
        self._fn( "{:4d}: mode {}".format( lineno, MODE_NAMES[kind] ) )
    def var( self, name, cardinality, lineno ):
        self._fn( "{:4d}: var {} {:d}".format( lineno, name, cardinality ) )
    def feature( self, weight, literals, lineno ):
        lits = " ".join( "{}{}={:d}".format( "" if p else "!", n, v ) for n, v, p in literals )
        self._fn( "{:4d}: feature {!r} {}".format( lineno, weight, lits ) )
