from io import StringIO

from vvmc.shared import ModelFormatError, MODE_NAMES, describeWeight

def writer( target ):
    """
    Returns a ModelWriter that writes to the file indicated by target.
    target can be the path of the file to write to (as a str), or a writable text file-like object.
    """
    if isinstance( target, str ):
        return ModelWriter( open( target, "w", newline="\n" ) )
    return ModelWriter( target )

class _ModelWriterBase:
    """
    Base class for all other ModelWriter states.
    A model is written as a mode, then its variables, then its features; each state only accepts the statements that may come next.
    """
    def __init__( self, output ):
        """
        Constructor for ModelWriter.
        output is expected to be a writable text file-like object.
        """
        self._o = output
        #Names of the variables written so far, mapped to their cardinalities.
        self._v = {}
        #Names of the variables in the order they were written (literals given by id are resolved against this).
        self._n = []
        #Mode of the features that will be written.
        self._k = None
    def close( self ):
        self._o.close()

    def __enter__( self ):
        return self

    def __exit__( self, exc_type, exc_value, traceback ):
        """Automatically closes the writable file-like object after exiting a with block."""
        self.close()

    #Default implementations for ModelWriter methods.
    #These raise ModelFormatErrors to indicate that calling these methods in the current state is inappropriate.
    def mode( self, *args, **kwargs ):
        """
        Write the mode statement.
        kind is MODE_CLAUSAL or MODE_CONJUNCTIVE.
        This must be the first statement written.
        """
        raise ModelFormatError( None, "A mode cannot be written here." )
    def var( self, *args, **kwargs ):
        """
        Write a variable declaration.
        name is the variable's name and cardinality its number of values.
        Variables must be written after the mode and before the first feature.
        """
        raise ModelFormatError( None, "A variable cannot be written here." )
    def feature( self, *args, **kwargs ):
        """
        Write a feature.
        weight is a finite float or HARD.
        literals is a sequence of ( var, value, positive ) tuples, where var is a declared variable's name or id.
        """
        raise ModelFormatError( None, "A feature cannot be written here." )
    def comment( self, text ):
        """Write a comment line. Comments can be written in any state."""
        for line in str( text ).splitlines() or [ "" ]:
            self._o.write( "# {}\n".format( line ) )

class _ModelWriterVars( _ModelWriterBase ):
    """ModelWriter state after the mode has been written."""
    def var( self, name, cardinality ):
        if name in self._v:
            raise ModelFormatError( None, "Variable \"{}\" is already declared.".format( name ) )
        if cardinality < 1:
            raise ModelFormatError( None, "Variable \"{}\" must have at least one value.".format( name ) )
        self._v[name] = cardinality
        self._n.append( name )
        self._o.write( "var {} {:d}\n".format( name, cardinality ) )
    def feature( self, weight, literals ):
        self.__class__ = _ModelWriterFeatures
        self.feature( weight, literals )

class _ModelWriterFeatures( _ModelWriterBase ):
    """ModelWriter state after the first feature has been written."""
    def feature( self, weight, literals ):
        if not literals:
            raise ModelFormatError( None, "A feature needs at least one literal." )
        parts = [ describeWeight( weight ) ]
        for var, value, positive in literals:
            name = self._n[var] if isinstance( var, int ) else var
            if name not in self._v:
                raise ModelFormatError( None, "Undeclared variable \"{}\".".format( name ) )
            if value < 0 or value >= self._v[name]:
                raise ModelFormatError( None, "Value {:d} is out of range for \"{}\".".format( value, name ) )
            parts.append( "{}{}={:d}".format( "" if positive else "!", name, value ) )
        self._o.write( "feature {}\n".format( " ".join( parts ) ) )

class ModelWriter( _ModelWriterBase ):
    """
    A class for writing models in the text model format to a writable text file-like object.
    Call mode() once, then var() for each variable, then feature() for each feature.
    Calling these methods out of order raises a ModelFormatError.
    """
    def mode( self, kind ):
        self._k = kind
        self._o.write( "mode {}\n".format( MODE_NAMES[kind] ) )
        self.__class__ = _ModelWriterVars

def write( G, target ):
    """
    Writes the model G in the text model format to target.
    target can be the path of the file to write to (as a str), or a writable text file-like object (which is not closed).
    Raises ModelFormatError if G has a feature without literals, which the format can't express.
    """
    if isinstance( target, str ):
        with writer( target ) as w:
            _writeImpl( G, w )
    else:
        _writeImpl( G, ModelWriter( target ) )

def _writeImpl( G, w ):
    w.mode( G.kind )
    for v in G.variables:
        w.var( v.name, v.cardinality )
    for f in G.features:
        w.feature( f.weight, f.literals )

def dumps( G ):
    """Return the model G in the text model format as a str."""
    out = StringIO()
    write( G, out )
    return out.getvalue()
